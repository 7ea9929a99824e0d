"""Coefficient rules describing the pure single-variable tail of a jet.

A jet ``F`` of truncation ``T`` with a tail ``(rule, ...)`` stands for the
formal series ``F + sum_rule sum_{j > T} 2 Re(c_j z_k^j)``: above ``T`` the
Taylor series consists of nothing but these pure terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

GEOMETRIC = "geometric"
POWER_FACTORIAL = "factorial"
POLYNOMIAL_RATE = "polynomial"
_KINDS = (GEOMETRIC, POWER_FACTORIAL, POLYNOMIAL_RATE)


@dataclass(frozen=True)
class CoefficientRule:
    """``c_j`` for the variable with index ``var`` (0-based).

    * ``geometric``:   ``c_j = ratio**j`` (``param`` a positive rational)
    * ``factorial``:   ``c_j = (j!)**s`` (``param`` a positive integer ``s``)
    * ``polynomial``:  ``c_j = j**d``  (``param`` a nonnegative integer ``d``)

    ``start`` declares an overlap with the stored jet: for ``start <= j <= T``
    the stored coefficient of ``z_k^j`` must already equal ``c_j``.
    """

    kind: str
    param: Fraction | int
    var: int = 0
    start: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown coefficient rule {self.kind!r}")
        p = Fraction(self.param)
        if self.kind == GEOMETRIC and p <= 0:
            raise ValueError("geometric ratio must be positive")
        if self.kind == POWER_FACTORIAL and (p.denominator != 1 or p < 1):
            raise ValueError("factorial exponent must be a positive integer")
        if self.kind == POLYNOMIAL_RATE and (p.denominator != 1 or p < 0):
            raise ValueError("polynomial rate must be a nonnegative integer")
        object.__setattr__(self, "param", p if p.denominator != 1 else int(p))

    def coefficient(self, j: int) -> Fraction:
        if self.kind == GEOMETRIC:
            return Fraction(self.param) ** j
        if self.kind == POWER_FACTORIAL:
            return Fraction(math.factorial(j) ** int(self.param))
        return Fraction(j ** int(self.param))

    def describe(self, names=None) -> str:
        v = names[self.var] if names else f"z{self.var + 1}"
        body = {
            GEOMETRIC: f"c_j = ({self.param})^j",
            POWER_FACTORIAL: f"c_j = (j!)^{self.param}",
            POLYNOMIAL_RATE: f"c_j = j^{self.param}",
        }[self.kind]
        return f"pure tail 2Re(c_j {v}^j), {body}"

    def to_json(self):
        out = {"kind": self.kind, "param": str(self.param), "var": self.var}
        if self.start is not None:
            out["start"] = self.start
        return out


def geometric(ratio, var=0, start=None) -> CoefficientRule:
    return CoefficientRule(GEOMETRIC, Fraction(ratio), var, start)


def power_factorial(s=1, var=0, start=None) -> CoefficientRule:
    return CoefficientRule(POWER_FACTORIAL, s, var, start)


def polynomial_rate(d, var=0, start=None) -> CoefficientRule:
    return CoefficientRule(POLYNOMIAL_RATE, d, var, start)
