"""Small value types for orders that may be infinite or only bounded below."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Infinite:
    """An infinite order.

    ``witnessed_to`` is ``None`` when infinity is exact (the series is known to
    vanish identically) and an integer ``T`` when it was only observed up to
    order ``T`` of a truncated jet.
    """

    witnessed_to: int | None = None
    note: str = field(default="", compare=False)

    @property
    def exact(self) -> bool:
        return self.witnessed_to is None

    def __str__(self):
        if self.witnessed_to is None:
            return "inf"
        return f"inf(witnessed-to-{self.witnessed_to})"


@dataclass(frozen=True)
class AtLeast:
    """A censored value: the true value is ``>= bound`` and nothing more is known."""

    bound: Fraction | int

    def __str__(self):
        return f">={self.bound}"


def is_finite(x) -> bool:
    return isinstance(x, (int, Fraction))


def as_json_number(x):
    """Exact JSON rendering: ints stay ints, other rationals become ``"p/q"`` strings."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    raise TypeError(f"not an exact number: {x!r}")
