"""Sparse polynomials in ``z`` and ``z̄`` and real-valued Taylor jets built from them.

A monomial ``z^alpha zbar^beta`` is keyed by the pair ``(alpha, beta)`` of
exponent tuples.  :class:`ConjPoly` is the unrestricted ring (used for
intermediate expressions and for ``G_pq`` groups); :class:`HermitianJet` adds
the reality invariant, an explicit truncation order and an optional tail.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DegreeOverflow, DimensionMismatch, NonRealInput
from .gaussian import ONE, ZERO, GaussianRational
from .tails import CoefficientRule
from .values import Infinite

Exponent = tuple
Key = tuple  # (alpha, beta)


def add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def degree_of(key: Key) -> int:
    return sum(key[0]) + sum(key[1])


class ConjPoly:
    """Polynomial in ``z_1..z_n, zbar_1..zbar_n`` with Gaussian rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Key, GaussianRational] | None = None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def constant(cls, nvars: int, c) -> ConjPoly:
        zero = (0,) * nvars
        return cls(nvars, {(zero, zero): GaussianRational.coerce(c)})

    @classmethod
    def variable(cls, nvars: int, k: int, conjugate: bool = False) -> ConjPoly:
        e = tuple(1 if j == k else 0 for j in range(nvars))
        zero = (0,) * nvars
        key = (zero, e) if conjugate else (e, zero)
        return cls(nvars, {key: ONE})

    def _check(self, other: ConjPoly):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other: ConjPoly) -> ConjPoly:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ConjPoly._raw(self.nvars, out)

    def __neg__(self) -> ConjPoly:
        return ConjPoly._raw(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: ConjPoly) -> ConjPoly:
        return self + (-other)

    def scale(self, c) -> ConjPoly:
        c = GaussianRational.coerce(c)
        if not c:
            return ConjPoly(self.nvars)
        return ConjPoly._raw(self.nvars, {k: v * c for k, v in self.terms.items()})

    def mul(self, other: ConjPoly, max_degree: int | None = None) -> ConjPoly:
        self._check(other)
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            d1 = sum(a1) + sum(b1)
            for (a2, b2), c2 in other.terms.items():
                if max_degree is not None and d1 + sum(a2) + sum(b2) > max_degree:
                    continue
                k = (add_exp(a1, a2), add_exp(b1, b2))
                out[k] = out.get(k, ZERO) + c1 * c2
        return ConjPoly(self.nvars, out)

    __mul__ = mul

    def __pow__(self, k: int) -> ConjPoly:
        result = ConjPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> ConjPoly:
        return ConjPoly._raw(self.nvars, {(b, a): c.conjugate() for (a, b), c in self.terms.items()})

    @classmethod
    def _raw(cls, nvars, terms) -> ConjPoly:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(degree_of(k) == 0 for k in self.terms)

    def constant_term(self) -> GaussianRational:
        zero = (0,) * self.nvars
        return self.terms.get((zero, zero), ZERO)

    def degree(self) -> int:
        return max((degree_of(k) for k in self.terms), default=0)

    def order(self) -> int | None:
        return min((degree_of(k) for k in self.terms), default=None)

    def is_hermitian(self) -> bool:
        for (a, b), c in self.terms.items():
            if self.terms.get((b, a), ZERO) != c.conjugate():
                return False
        return True

    def evaluate(self, point) -> GaussianRational:
        point = [GaussianRational.coerce(x) for x in point]
        conj = [x.conjugate() for x in point]
        total = ZERO
        for (a, b), c in self.terms.items():
            term = c
            for j in range(self.nvars):
                if a[j]:
                    term = term * point[j] ** a[j]
                if b[j]:
                    term = term * conj[j] ** b[j]
            total = total + term
        return total

    def __eq__(self, other):
        if not isinstance(other, ConjPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"ConjPoly({self.nvars}, {len(self.terms)} terms)"


@dataclass(frozen=True)
class HermitianJet:
    """Real-valued Taylor jet ``sum C_ab z^a zbar^b`` over ``nvars`` variables.

    Coefficients with ``|a+b| <= truncation`` are exact.  ``tail`` says what is
    known above the truncation: ``None`` means nothing, ``()`` means the series
    stops (a polynomial germ, or a flat remainder), and a tuple of
    :class:`CoefficientRule` means only those pure single-variable terms follow.
    """

    nvars: int
    coeffs: Mapping[Key, GaussianRational]
    truncation: int
    tail: tuple[CoefficientRule, ...] | None = None

    def __post_init__(self):
        if self.nvars < 1:
            raise DimensionMismatch("a jet needs at least one variable")
        if self.truncation < 0:
            raise ValueError("truncation order must be nonnegative")
        for (a, b), c in self.coeffs.items():
            if len(a) != self.nvars or len(b) != self.nvars:
                raise DimensionMismatch(f"exponent pair {(a, b)} does not have {self.nvars} entries")
            if not c:
                raise ValueError("zero coefficients must not be stored")
            if sum(a) + sum(b) > self.truncation:
                raise DegreeOverflow(f"term of degree {sum(a) + sum(b)} exceeds truncation {self.truncation}")
            if self.coeffs.get((b, a), ZERO) != c.conjugate():
                raise NonRealInput(f"coefficient of {(b, a)} is not the conjugate of {(a, b)}")
        if self.tail is not None:
            object.__setattr__(self, "tail", tuple(self.tail))
            seen = set()
            for rule in self.tail:
                if not 0 <= rule.var < self.nvars:
                    raise DimensionMismatch(f"tail variable {rule.var} out of range")
                if rule.var in seen:
                    raise ValueError("at most one tail rule per variable")
                seen.add(rule.var)
                if rule.start is not None:
                    for j in range(max(rule.start, 1), self.truncation + 1):
                        key = (_unit(self.nvars, rule.var, j), (0,) * self.nvars)
                        if self.coeffs.get(key, ZERO) != rule.coefficient(j):
                            raise ValueError(f"stored coefficient of degree {j} disagrees with the tail rule")

    def __hash__(self):
        return hash((self.nvars, self.truncation, self.tail, frozenset(self.coeffs.items())))

    # views ---------------------------------------------------------------
    @property
    def complete(self) -> bool:
        """True when the whole Taylor series is known (no unknown terms above ``T``)."""
        return self.tail is not None

    def poly(self) -> ConjPoly:
        return ConjPoly._raw(self.nvars, dict(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((degree_of(k) for k in self.coeffs), default=0)

    def coefficient(self, alpha, beta) -> GaussianRational:
        return self.coeffs.get((tuple(alpha), tuple(beta)), ZERO)

    def evaluate(self, point) -> GaussianRational:
        return self.poly().evaluate(point)

    def tail_vars(self) -> set:
        return {rule.var for rule in self.tail or ()}

    def with_truncation(self, T: int) -> HermitianJet:
        """Re-truncate at ``T``.  Raising ``T`` is only allowed for known series."""
        if T == self.truncation:
            return self
        if T > self.truncation:
            return self.materialize(T)
        coeffs = {k: c for k, c in self.coeffs.items() if degree_of(k) <= T}
        tail = () if (self.tail == () and self.degree() <= T) else None
        return HermitianJet(self.nvars, coeffs, T, tail)

    def materialize(self, T: int) -> HermitianJet:
        """Expand the known tail so that the jet is exact up to order ``T``."""
        if T <= self.truncation:
            return self
        if self.tail is None:
            raise ValueError("cannot extend a truncated jet with unknown tail")
        coeffs = dict(self.coeffs)
        zero = (0,) * self.nvars
        for rule in self.tail:
            for j in range(self.truncation + 1, T + 1):
                c = GaussianRational(rule.coefficient(j))
                e = _unit(self.nvars, rule.var, j)
                coeffs[(e, zero)] = c
                coeffs[(zero, e)] = c.conjugate()
        return HermitianJet(self.nvars, coeffs, T, self.tail)

    @classmethod
    def from_poly(cls, p: ConjPoly, truncation: int, tail=None) -> HermitianJet:
        return cls(p.nvars, dict(p.terms), truncation, tail)

    @classmethod
    def zero(cls, nvars: int, truncation: int, tail=()) -> HermitianJet:
        return cls(nvars, {}, truncation, tail)


def _unit(n: int, k: int, j: int) -> Exponent:
    return tuple(j if i == k else 0 for i in range(n))


def _norm_exp(n: int, e) -> Exponent:
    if isinstance(e, int):
        e = (e,)
    e = tuple(int(x) for x in e)
    if len(e) != n:
        raise DimensionMismatch(f"exponent {e} does not have {n} entries")
    if any(x < 0 for x in e):
        raise ValueError(f"negative exponent in {e}")
    return e


def build_jet(n: int, entries: Iterable, T: int, symmetrize: bool = False, tail=()) -> HermitianJet:
    """Build a jet from ``((alpha, beta), c)`` entries.

    Repeated keys are summed.  When only one of ``(alpha, beta)`` and
    ``(beta, alpha)`` is given, ``symmetrize=True`` fills in the conjugate;
    otherwise the asymmetry raises :class:`NonRealInput`.  For ``n == 1``
    exponents may be plain integers.
    """
    coeffs: dict = {}
    for (alpha, beta), c in entries:
        key = (_norm_exp(n, alpha), _norm_exp(n, beta))
        if degree_of(key) > T:
            raise DegreeOverflow(f"term {key} has degree {degree_of(key)} > {T}")
        coeffs[key] = coeffs.get(key, ZERO) + GaussianRational.coerce(c)
    coeffs = {k: c for k, c in coeffs.items() if c}
    for (a, b), c in list(coeffs.items()):
        partner = coeffs.get((b, a))
        if partner is None:
            if not symmetrize:
                raise NonRealInput(f"missing conjugate partner for {(a, b)}")
            coeffs[(b, a)] = c.conjugate()
        elif partner != c.conjugate():
            raise NonRealInput(f"coefficients of {(a, b)} and {(b, a)} are not conjugate")
    return HermitianJet(n, coeffs, T, tail)


def _effective_T(F: HermitianJet):
    return None if F.complete else F.truncation


def add(F: HermitianJet, G: HermitianJet) -> HermitianJet:
    if F.nvars != G.nvars:
        raise DimensionMismatch(f"{F.nvars} vs {G.nvars} variables")
    if F.complete and G.complete:
        T = max(F.truncation, G.truncation)
        F2, G2 = F.materialize(T), G.materialize(T)
        vars_f, vars_g = F.tail_vars(), G.tail_vars()
        tail = tuple(F.tail) + tuple(G.tail) if not (vars_f & vars_g) else None
        return HermitianJet.from_poly(F2.poly() + G2.poly(), T, tail)
    T = min(t for t in (_effective_T(F), _effective_T(G)) if t is not None)
    F2 = F.with_truncation(T) if F.complete else F
    G2 = G.with_truncation(T) if G.complete else G
    p = F2.poly() + G2.poly()
    return HermitianJet(F.nvars, {k: c for k, c in p.terms.items() if degree_of(k) <= T}, T, None)


def _order(F: HermitianJet) -> int:
    o = F.poly().order()
    if o is None:
        return F.truncation + 1
    return o


def mul(F: HermitianJet, G: HermitianJet) -> HermitianJet:
    """Product; faithful to ``min(T_F + ord G, T_G + ord F)`` unless both are exact polynomials."""
    if F.nvars != G.nvars:
        raise DimensionMismatch(f"{F.nvars} vs {G.nvars} variables")
    if F.tail == () and G.tail == ():
        p = F.poly() * G.poly()
        return HermitianJet.from_poly(p, max(F.truncation + G.truncation, p.degree()), ())
    bounds = []
    if F.tail != ():
        bounds.append(F.truncation + _order(G))
    if G.tail != ():
        bounds.append(G.truncation + _order(F))
    T = min(bounds)
    p = F.poly().mul(G.poly(), max_degree=T)
    return HermitianJet.from_poly(p, T, None)


@dataclass(frozen=True)
class HoloPoly:
    """Holomorphic polynomial ``sum a_alpha z^alpha``; ``truncation=None`` means exact."""

    nvars: int
    coeffs: Mapping[Exponent, GaussianRational]
    truncation: int | None = None

    def __hash__(self):
        return hash((self.nvars, self.truncation, frozenset(self.coeffs.items())))

    def order(self) -> int | None:
        return min((sum(a) for a in self.coeffs), default=None)

    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=0)

    def as_conj_poly(self) -> ConjPoly:
        zero = (0,) * self.nvars
        return ConjPoly(self.nvars, {(a, zero): c for a, c in self.coeffs.items()})

    def evaluate(self, point) -> GaussianRational:
        return self.as_conj_poly().evaluate(point)


def holo(n: int, entries: Iterable) -> HoloPoly:
    coeffs: dict = {}
    for alpha, c in entries:
        a = _norm_exp(n, alpha)
        coeffs[a] = coeffs.get(a, ZERO) + GaussianRational.coerce(c)
    return HoloPoly(n, {a: c for a, c in coeffs.items() if c})


def squared_modulus(h: HoloPoly) -> HermitianJet:
    """``h * conj(h)`` as a jet."""
    p = h.as_conj_poly()
    sq = p * p.conj()
    if h.truncation is None:
        return HermitianJet.from_poly(sq, max(1, sq.degree()), ())
    T = h.truncation + (h.order() if h.order() is not None else h.truncation + 1)
    return HermitianJet(h.nvars, {k: c for k, c in sq.terms.items() if degree_of(k) <= T}, T, None)


def pure_mixed_split(F: HermitianJet) -> tuple[HermitianJet, HermitianJet]:
    """Split into harmonic (``alpha = 0`` or ``beta = 0``) and genuinely mixed terms."""
    pure, mixed = {}, {}
    for (a, b), c in F.coeffs.items():
        if not any(a) or not any(b):
            pure[(a, b)] = c
        else:
            mixed[(a, b)] = c
    mixed_tail = () if F.complete else None
    return (
        HermitianJet(F.nvars, pure, F.truncation, F.tail),
        HermitianJet(F.nvars, mixed, F.truncation, mixed_tail),
    )


def vanishing_order(F: HermitianJet):
    """Lowest total degree of a nonzero term, or :class:`Infinite`."""
    o = F.poly().order()
    if o is not None:
        return o
    if F.tail:
        # every rule produces nonzero coefficients
        return F.truncation + 1
    if F.tail == ():
        return Infinite(None, "flat")
    return Infinite(F.truncation, "flat up to truncation")


def linear_part(F: HermitianJet) -> dict:
    return {k: c for k, c in F.coeffs.items() if degree_of(k) == 1}
