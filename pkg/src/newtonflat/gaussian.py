"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "gq", "ZERO", "ONE", "I"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def _part(x):
    """Store integral parts as ``int``: integer arithmetic is much faster than ``Fraction``."""
    if type(x) is int:
        return x
    x = _frac(x)
    return x.numerator if x.denominator == 1 else x


def _n(x):
    if type(x) is int:
        return x
    return x.numerator if x.denominator == 1 else x


class GaussianRational:
    """``re + im*i`` with exact rational parts (``int`` or :class:`fractions.Fraction`).

    Instances are immutable and hashable.  Mixed arithmetic with ``int`` and
    ``Fraction`` is supported; floats are rejected on purpose.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        _SET_RE(self, _part(re))
        _SET_IM(self, _part(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact; build a GaussianRational")
        return cls(x, 0)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if type(other) is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return _make(_n(self.re + other.re), _n(self.im + other.im))

    __radd__ = __add__

    def __neg__(self):
        return _make(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return _make(_n(self.re - other.re), _n(self.im - other.im))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is GaussianRational:
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return _make(_n(a * c), 0)
            return _make(_n(a * c - b * d), _n(a * d + b * c))
        try:
            o = _part(other)
        except TypeError:
            return NotImplemented
        return _make(_n(self.re * o), _n(self.im * o))

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Squared modulus ``|x|^2``, an exact rational."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> GaussianRational:
        return _make(self.re, -self.im)

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("GaussianRational division by zero")
        n = Fraction(n)
        return _make(_n(self.re / n), _n(-self.im / n))

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # formatting -----------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        im = _imag_str(abs(self.im))
        return f"{self.re}{'-' if self.im < 0 else '+'}{im}"

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Inverse of ``str``: accepts ``"3/2"``, ``"-i"``, ``"1-2/3i"``."""
        s = text.replace(" ", "")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            re_part, im_part = "0", body
        else:
            re_part, im_part = body[:cut], body[cut:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return cls(Fraction(re_part), Fraction(im_part))


_SET_RE = GaussianRational.re.__set__
_SET_IM = GaussianRational.im.__set__


def _make(re, im) -> GaussianRational:
    g = object.__new__(GaussianRational)
    _SET_RE(g, re)
    _SET_IM(g, im)
    return g


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{x}i"


def gq(re=0, im=0) -> GaussianRational:
    """Shorthand constructor."""
    return GaussianRational(re, im)


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)

