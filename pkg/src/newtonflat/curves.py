"""Holomorphic curve jets, contact orders, the pure-term series and tangency witnesses.

Univariate polynomials are dicts ``degree -> GaussianRational``.  Every
composition carries ``bound``: the first t-degree at which its coefficients
may be wrong (``None`` when the result is exact).  Orders found below the
bound are exact; otherwise only ``AtLeast(bound)`` is reported.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadCurve, DimensionMismatch, NotModelForm
from .gaussian import ZERO, GaussianRational, gq
from .hermitian import HermitianJet, pure_mixed_split
from .tails import GEOMETRIC, POLYNOMIAL_RATE, POWER_FACTORIAL
from .values import AtLeast, Infinite

FULL = "full"
ZCURVE = "z"

# lazily expanded rule tails stop here unless the caller asks for more
DEFAULT_DEGREE_CAP = 240


# univariate helpers ----------------------------------------------------------

def _clean(p: dict) -> dict:
    return {d: c for d, c in p.items() if c}


def _umul(a: dict, b: dict, bound) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            if bound is not None and i + j >= bound:
                continue
            out[i + j] = out.get(i + j, ZERO) + x * y
    return _clean(out)


def _uconj(p: dict) -> dict:
    return {d: c.conjugate() for d, c in p.items()}


def upoly_str(p: dict, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for d in sorted(p):
        c = p[d]
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        if not mono:
            parts.append(f"({c})" if c.re and c.im else str(c))
            continue
        if c == gq(1):
            parts.append(mono)
        elif c == gq(-1):
            parts.append("-" + mono)
        elif c.re and c.im:
            parts.append(f"({c})*{mono}")
        else:
            parts.append(f"{c}*{mono}")
    s = parts[0]
    for q in parts[1:]:
        s += " - " + q[1:] if q.startswith("-") else " + " + q
    return s


# curves ----------------------------------------------------------------------

@dataclass(frozen=True)
class CurveJet:
    """Curve ``t -> (gamma_1(t), ..., gamma_n(t))`` given by polynomial jets.

    ``validity`` is the largest degree whose coefficients are faithful;
    ``None`` means the components are exact polynomials.
    """

    components: tuple
    validity: int | None = None
    kind: str = FULL

    def __post_init__(self):
        comps = tuple(
            tuple(sorted((int(d), GaussianRational.coerce(c)) for d, c in dict(p).items() if GaussianRational.coerce(c)))
            for p in self.components
        )
        object.__setattr__(self, "components", comps)
        if not comps:
            raise BadCurve("a curve needs at least one component")
        if any(d < 0 for comp in comps for d, _ in comp):
            raise BadCurve("negative exponent in curve")
        if any(d == 0 for comp in comps for d, _ in comp):
            raise BadCurve("curve must pass through the origin (no constant terms)")
        if self.validity is not None:
            if any(d > self.validity for comp in comps for d, _ in comp):
                raise BadCurve("curve stores coefficients above its validity order")
        exps = [d for comp in comps for d, _ in comp]
        if not exps:
            raise BadCurve("constant curve")
        if self.kind not in (FULL, ZCURVE):
            raise BadCurve(f"unknown curve kind {self.kind!r}")

    @property
    def n(self) -> int:
        return len(self.components)

    def poly(self, j: int) -> dict:
        return dict(self.components[j])

    def component_order(self, j: int):
        comp = self.components[j]
        return comp[0][0] if comp else None

    def order(self) -> int:
        return min(c[0][0] for c in self.components if c)

    def exponent_gcd(self) -> int:
        g = 0
        for comp in self.components:
            for d, _ in comp:
                g = math.gcd(g, d)
        return g

    def is_good(self) -> bool:
        """Exponent gcd 1; a truncated curve may still gain new exponents past ``validity``."""
        return self.exponent_gcd() == 1 or self.validity is not None

    def normalized(self) -> CurveJet:
        """Reparametrize ``t^g -> t`` when every exponent is divisible by ``g``."""
        g = self.exponent_gcd()
        if g <= 1 or self.validity is not None:
            return self
        comps = tuple({d // g: c for d, c in comp} for comp in self.components)
        return CurveJet(comps, None, self.kind)

    def term_count(self) -> int:
        return sum(len(c) for c in self.components)

    def encode(self) -> str:
        body = ", ".join(upoly_str(dict(c)) for c in self.components)
        s = f"({body})"
        return s if self.validity is None else f"{s} valid {self.validity}"

    def __str__(self):
        return self.encode()

    def with_component(self, j: int, poly: dict, validity="keep") -> CurveJet:
        comps = [dict(c) for c in self.components]
        comps[j] = poly
        v = self.validity if validity == "keep" else validity
        return CurveJet(tuple(comps), v, self.kind)

    def extend(self, extra: dict) -> CurveJet:
        """Append a component (e.g. ``-h`` to a z-curve) to get a full curve."""
        return CurveJet(tuple(dict(c) for c in self.components) + (extra,), self.validity, FULL)


def curve(*components, validity=None, kind=FULL) -> CurveJet:
    """Build a curve; each component is a dict ``degree -> coefficient``."""
    c = CurveJet(tuple(components), validity, kind)
    if not c.is_good():
        raise BadCurve(f"not a good parametrization: every exponent is divisible by {c.exponent_gcd()}")
    return c


def axis_curve(n: int, k: int) -> CurveJet:
    return CurveJet(tuple({1: 1} if j == k else {} for j in range(n)))


def monomial_curve(coeffs, weight) -> CurveJet:
    comps = tuple({int(a): c} if c else {} for c, a in zip(coeffs, weight))
    return CurveJet(comps).normalized()


def curve_regularity_check(gamma: CurveJet) -> str:
    if not gamma.is_good():
        raise BadCurve("not a good parametrization")
    return "Regular" if gamma.order() == 1 else "Singular"


# composition -----------------------------------------------------------------

@dataclass(frozen=True)
class Composition:
    """``r(gamma(t), conj gamma(t)) = sum terms[(p, q)] t^p tbar^q`` below ``bound``."""

    terms: dict
    bound: int | None

    def lowest_degree(self):
        return min((p + q for p, q in self.terms), default=None)

    def lowest_terms(self) -> dict:
        d = self.lowest_degree()
        return {k: c for k, c in self.terms.items() if sum(k) == d}

    def is_zero(self) -> bool:
        return not self.terms


@dataclass(frozen=True)
class ContactResult:
    order: object  # int | AtLeast | Infinite
    curve_order: int
    ratio: object  # Fraction | AtLeast | Infinite

    @property
    def censored(self) -> bool:
        return isinstance(self.order, AtLeast)

    def lower_bound(self):
        """Sound lower bound on the ratio as a number, or ``Infinite``."""
        if isinstance(self.ratio, AtLeast):
            return Fraction(self.ratio.bound)
        return self.ratio


def _tail_order(r: HermitianJet, gamma: CurveJet):
    """Smallest curve order among the variables the unseen tail can involve."""
    if r.tail is None:
        idx = range(r.nvars)
    else:
        idx = sorted(r.tail_vars())
    orders = [gamma.component_order(j) for j in idx]
    orders = [o for o in orders if o is not None]
    if not orders:
        return None
    return min(orders)


def _expand(r: HermitianJet, gamma: CurveJet, bound) -> dict:
    hol_cache: dict = {}
    n = r.nvars
    polys = [gamma.poly(j) for j in range(n)]
    conjs = [_uconj(p) for p in polys]

    def power(j, k, conj):
        key = (j, k, conj)
        if key not in hol_cache:
            if k == 0:
                hol_cache[key] = {0: gq(1)}
            else:
                hol_cache[key] = _umul(power(j, k - 1, conj), conjs[j] if conj else polys[j], bound)
        return hol_cache[key]

    def product(exps, conj):
        acc = {0: gq(1)}
        for j, k in enumerate(exps):
            if k:
                acc = _umul(acc, power(j, k, conj), bound)
                if not acc:
                    break
        return acc

    out: dict = {}
    for (a, b), c in r.coeffs.items():
        H = product(a, False)
        if not H:
            continue
        A = product(b, True)
        for p, x in H.items():
            for q, y in A.items():
                if bound is not None and p + q >= bound:
                    continue
                out[(p, q)] = out.get((p, q), ZERO) + c * x * y
    return {k: v for k, v in out.items() if v}


def compose(r: HermitianJet, gamma: CurveJet, upto: int | None = None) -> Composition:
    """Exact expansion of ``r`` along ``gamma`` with its honesty bound.

    The bound is ``min(V + 1, (T + 1) * m)``: unseen curve terms start at
    degree ``V + 1`` and unseen jet terms have total degree ``>= T + 1`` in
    variables whose curve components have order ``>= m``.  Known rule tails
    are expanded lazily (doubling) until a nonzero term appears or ``upto``
    (default a fixed cap) is reached.
    """
    if r.nvars != gamma.n:
        raise DimensionMismatch(f"jet has {r.nvars} variables, curve has {gamma.n} components")
    curve_bound = None if gamma.validity is None else gamma.validity + 1
    m = _tail_order(r, gamma)

    def merged(*bs):
        bs = [b for b in bs if b is not None]
        return min(bs) if bs else None

    if r.tail is None:
        jet_bound = None if m is None else (r.truncation + 1) * m
        B = merged(curve_bound, jet_bound)
        return Composition(_expand(r, gamma, B), B)
    if not r.tail or m is None:
        # the series is a known polynomial along this curve
        return Composition(_expand(r, gamma, curve_bound), curve_bound)
    # rule tail: materialize enough of it
    cap = upto if upto is not None else (curve_bound if curve_bound is not None else DEFAULT_DEGREE_CAP)
    target = min(cap, max(2 * (r.truncation + 1) * m, 32))
    while True:
        T2 = max(r.truncation, -(-target // m) - 1)
        jet = r.materialize(T2)
        B = merged(curve_bound, (T2 + 1) * m, upto)
        if upto is None and curve_bound is None and B > cap:
            B = cap
        res = Composition(_expand(jet, gamma, B), B)
        if res.terms or B >= cap:
            return res
        target = min(cap, 2 * target)


def contact_order(r: HermitianJet, gamma: CurveJet, upto: int | None = None) -> ContactResult:
    if not gamma.is_good():
        raise BadCurve("not a good parametrization")
    comp = compose(r, gamma, upto)
    k = gamma.order()
    d = comp.lowest_degree()
    if d is not None:
        return ContactResult(d, k, Fraction(d, k))
    if comp.bound is None:
        return ContactResult(Infinite(None, "composition vanishes identically"), k, Infinite(None))
    return ContactResult(AtLeast(comp.bound), k, AtLeast(Fraction(comp.bound, k)))


# type search -------------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    max_degree: int = 8
    regular_only: bool = False
    seed: int = 0
    random_curves: int = 40
    ladder_steps: int = 48
    degree_cap: int = DEFAULT_DEGREE_CAP


@dataclass(frozen=True)
class LadderStep:
    curve: CurveJet
    contact: ContactResult
    stopped: str  # "zero", "censored", "mixed", "exhausted", "no-linear-variable"


@dataclass(frozen=True)
class TypeSearchResult:
    value: object  # Fraction | Infinite
    exact: bool
    censored: bool
    witness: CurveJet | None
    contact: ContactResult | None
    regular_only: bool
    curves_tried: int
    seed: int
    note: str = ""
    ladders: tuple = field(default_factory=tuple)


def linear_variable(r: HermitianJet):
    """``(k, lambda)`` for the first variable with a holomorphic linear term ``lambda z_k``."""
    zero = (0,) * r.nvars
    for k in range(r.nvars - 1, -1, -1):
        e = tuple(1 if j == k else 0 for j in range(r.nvars))
        c = r.coeffs.get((e, zero))
        if c:
            return k, c
    return None


def absorb_ladder(r: HermitianJet, start: CurveJet, steps: int = 48, upto: int | None = None) -> LadderStep:
    """Greedily kill the lowest pure term of ``r o gamma`` through the linear variable.

    At the lowest degree ``d`` of the composition, if every term is pure
    ``a t^d + conj(a) tbar^d``, subtracting ``a / lambda t^d`` from the
    component of the linear variable removes both and touches only higher
    degrees.  The ladder stops at a mixed obstruction, at exact vanishing, at
    the validity bound, or after ``steps`` corrections.
    """
    lin = linear_variable(r)
    gamma = start
    res = contact_order(r, gamma, upto)
    if lin is None:
        return LadderStep(gamma, res, "no-linear-variable")
    k, lam = lin
    for _ in range(steps):
        if isinstance(res.order, Infinite):
            return LadderStep(gamma, res, "zero")
        if isinstance(res.order, AtLeast):
            return LadderStep(gamma, res, "censored")
        d = res.order
        comp = compose(r, gamma, upto)
        low = comp.lowest_terms()
        if set(low) - {(d, 0), (0, d)} or d <= gamma.order():
            return LadderStep(gamma, res, "mixed")
        a = low.get((d, 0), ZERO)
        poly = gamma.poly(k)
        poly[d] = poly.get(d, ZERO) - a / lam
        gamma = gamma.with_component(k, _clean(poly))
        res = contact_order(r, gamma, upto)
    return LadderStep(gamma, res, "exhausted")


def _random_curve(rng: random.Random, n: int, D: int, regular: bool) -> CurveJet:
    while True:
        comps = []
        for _ in range(n):
            p = {}
            for _ in range(rng.randint(0, 2)):
                d = rng.randint(1, D)
                p[d] = gq(rng.randint(-2, 2), rng.choice([0, 0, rng.randint(-1, 1)]))
            comps.append(_clean(p))
        if regular:
            j = rng.randrange(n)
            comps[j][1] = gq(rng.choice([1, -1, 2]))
        try:
            c = CurveJet(tuple(comps))
        except BadCurve:
            continue
        c = c.normalized()
        if not regular or c.order() == 1:
            return c


def _rank_key(res: ContactResult, gamma: CurveJet):
    """Larger bound first, then fewer terms; ties keep discovery order (axes first)."""
    lb = res.lower_bound()
    big = math.inf if isinstance(lb, Infinite) else lb
    return (-big, gamma.term_count())


def type_search(r: HermitianJet, config: SearchConfig = SearchConfig(), face_budget=None) -> TypeSearchResult:
    """Certified lower bound for the (regular) type from a deterministic curve family.

    Family: coordinate axis curves; monomial curves ``c t^a`` from degenerate
    face witnesses and from the weights of all compact faces, each followed
    by the absorption ladder; seeded random curves of degree ``<= max_degree``.
    ``exact`` is set when canonicity is certified (the value then equals
    ``rho_1``) or when some curve makes ``r`` vanish identically.
    """
    from .faces import DEGENERATE, SearchBudget, face_data_stable, is_canonical
    from .newton import hull, rho1, support

    n = r.nvars
    D = config.max_degree
    reg = config.regular_only
    budget = face_budget or SearchBudget(seed=config.seed)
    upto = config.degree_cap
    candidates: list = []
    ladders = []

    def consider(gamma: CurveJet, ladder=True):
        if reg and gamma.order() != 1:
            return
        res = contact_order(r, gamma, upto)
        candidates.append((gamma, res))
        if ladder:
            step = absorb_ladder(r, gamma, config.ladder_steps, upto)
            if step.curve != gamma and (not reg or step.curve.order() == 1):
                candidates.append((step.curve, step.contact))
                ladders.append(step)

    for k in range(n):
        consider(axis_curve(n, k), ladder=False)

    canonical = None
    verdicts = []
    if not support(r).flat:
        canonical, verdicts = is_canonical(r, budget)
        P = hull(r)
        seen = set()
        for v in verdicts:
            if v.status != DEGENERATE:
                continue
            face = P.face(v.face_id)
            active = {j for p in face.support_points for j, x in enumerate(p) if x}
            coeffs = [c if j in active else ZERO for j, c in enumerate(v.witness)]
            g = monomial_curve(coeffs, v.weight)
            if g.encode() not in seen:
                seen.add(g.encode())
                consider(g)
        for face in P.compact_faces:
            active = {j for p in face.support_points for j, x in enumerate(p) if x}
            coeffs = [gq(1) if j in active else ZERO for j in range(n)]
            if not any(coeffs):
                continue
            g = monomial_curve(coeffs, face.weight)
            if g.encode() not in seen:
                seen.add(g.encode())
                consider(g)

    rng = random.Random(config.seed)
    for _ in range(config.random_curves):
        consider(_random_curve(rng, n, D, reg), ladder=False)

    if not candidates:
        return TypeSearchResult(Fraction(0), False, False, None, None, reg, 0, config.seed, "no admissible curve")
    candidates.sort(key=lambda gc: _rank_key(gc[1], gc[0]))
    best_curve, best = candidates[0]
    value = best.lower_bound()
    exact = isinstance(best.order, Infinite) and best.order.exact
    note = ""
    if canonical is True and face_data_stable(r):
        r1 = rho1(r)
        exact = True
        note = "canonical: value equals rho1"
        if not isinstance(value, Infinite) and isinstance(r1, int) and value > r1:
            raise AssertionError("search exceeded rho1 on a canonical jet")
    elif not exact:
        note = "lower bound over the searched family"
    return TypeSearchResult(value, exact, best.censored, best_curve, best, reg, len(candidates),
                            config.seed, note, tuple(ladders))


# pure-term series ----------------------------------------------------------------

@dataclass(frozen=True)
class SSeries:
    """``S(z) = sum c_alpha z^alpha`` from the pure terms ``2 Re(c_alpha z^alpha)``."""

    nvars: int
    coeffs: dict
    truncation: int
    tail: tuple | None

    @property
    def complete(self) -> bool:
        return self.tail is not None


@dataclass(frozen=True)
class SExtraction:
    series: SSeries
    mixed: HermitianJet
    mixed_order: object  # int | Infinite

    @property
    def obstructed(self) -> bool:
        return not isinstance(self.mixed_order, Infinite)


def split_model(r: HermitianJet, w_index: int | None = None) -> HermitianJet:
    """Return ``F`` for ``r = 2 Re(w) + F(z, zbar)`` with ``w`` the last variable."""
    n = r.nvars
    k = n - 1 if w_index is None else w_index
    if n < 2:
        raise NotModelForm("model form needs at least one z variable and w")
    e = tuple(1 if j == k else 0 for j in range(n))
    zero = (0,) * n
    if r.coeffs.get((e, zero)) != gq(1) or r.coeffs.get((zero, e)) != gq(1):
        raise NotModelForm("the w-linear part is not 2 Re(w)")
    if r.tail and k in r.tail_vars():
        raise NotModelForm("tail rule on w")
    F = {}
    for (a, b), c in r.coeffs.items():
        if (a, b) in ((e, zero), (zero, e)):
            continue
        if a[k] or b[k]:
            raise NotModelForm("F depends on w")
        F[(a[:k] + a[k + 1:], b[:k] + b[k + 1:])] = c
    tail = r.tail
    if tail:
        from .tails import CoefficientRule
        tail = tuple(CoefficientRule(t.kind, t.param, t.var if t.var < k else t.var - 1, t.start) for t in tail)
    Fj = HermitianJet(n - 1, F, r.truncation, tail)
    zero1 = (0,) * (n - 1)
    if Fj.coefficient(zero1, zero1):
        raise NotModelForm("F(0) is not 0")
    for j in range(n - 1):
        u = tuple(1 if i == j else 0 for i in range(n - 1))
        if Fj.coefficient(u, zero1):
            raise NotModelForm("F has a linear term")
    return Fj


def model_from(F: HermitianJet) -> HermitianJet:
    """``2 Re(w) + F`` with ``w`` appended as the last variable."""
    n = F.nvars + 1
    coeffs = {(a + (0,), b + (0,)): c for (a, b), c in F.coeffs.items()}
    e = (0,) * F.nvars + (1,)
    zero = (0,) * n
    coeffs[(e, zero)] = gq(1)
    coeffs[(zero, e)] = gq(1)
    return HermitianJet(n, coeffs, max(F.truncation, 1), F.tail)


def extract_S(F: HermitianJet) -> SExtraction:
    """Pure-term series of ``F`` and the mixed part that may obstruct tangency."""
    from .hermitian import vanishing_order

    pure, mixed = pure_mixed_split(F)
    zero = (0,) * F.nvars
    coeffs = {a: c for (a, b), c in pure.coeffs.items() if b == zero and any(a)}
    series = SSeries(F.nvars, coeffs, F.truncation, F.tail)
    return SExtraction(series, mixed, vanishing_order(mixed))


@dataclass(frozen=True)
class UniJet:
    """Holomorphic univariate jet ``sum coeffs[j] t^j`` exact below ``bound``."""

    coeffs: dict
    bound: int | None

    def order(self):
        return min(self.coeffs, default=None)


def compose_S(S: SSeries, gamma_hat: CurveJet, upto: int | None = None) -> UniJet:
    """Coefficients of ``S(gamma_hat(t))`` with the same bookkeeping as :func:`compose`."""
    if gamma_hat.n != S.nvars:
        raise DimensionMismatch(f"series has {S.nvars} variables, curve has {gamma_hat.n}")
    zero = (0,) * S.nvars
    coeffs = {}
    for a, c in S.coeffs.items():
        coeffs[(a, zero)] = c
        coeffs[(zero, a)] = c.conjugate()
    # reuse the jet machinery on the Hermitian symmetrization 2 Re(S)
    jet = HermitianJet(S.nvars, coeffs, S.truncation, S.tail)
    comp = compose(jet, gamma_hat, upto)
    hol = {p: c for (p, q), c in comp.terms.items() if q == 0 and p > 0}
    const = comp.terms.get((0, 0))
    if const:
        hol[0] = const / 2
    return UniJet(hol, comp.bound)


@dataclass(frozen=True)
class Obstruction:
    degree: int
    terms: dict


@dataclass(frozen=True)
class TangencyWitness:
    curve: CurveJet
    h: UniJet


def tangency_witness(F: HermitianJet, gamma_hat: CurveJet, N: int):
    """Full curve ``(gamma_hat, -h)`` with ``h = S o gamma_hat`` tangent to order ``>= N + 1``.

    Returns :class:`Obstruction` when the mixed part of ``F`` along
    ``gamma_hat`` has a term of degree ``<= N``.
    """
    ext = extract_S(F)
    mixed_comp = compose(ext.mixed, gamma_hat, N + 1)
    d = mixed_comp.lowest_degree()
    if d is not None and d <= N:
        return Obstruction(d, mixed_comp.lowest_terms())
    exact = ext.series.tail == () and gamma_hat.validity is None
    h_full = compose_S(ext.series, gamma_hat, None if exact else N + 1)
    if exact and mixed_comp.bound is None:
        h = {j: -c for j, c in h_full.coeffs.items()}
        return TangencyWitness(gamma_hat.extend(h), h_full)
    # only what every ingredient certifies
    V = N
    for b in (mixed_comp.bound, h_full.bound):
        if b is not None:
            V = min(V, b - 1)
    if gamma_hat.validity is not None:
        V = min(V, gamma_hat.validity)
    h = {j: -c for j, c in h_full.coeffs.items() if j <= V}
    comps = tuple({k: c for k, c in comp if k <= V} for comp in gamma_hat.components)
    base = CurveJet(comps, V, FULL)
    return TangencyWitness(base.extend(h), UniJet({j: -c for j, c in h.items()}, V + 1))


# convergence radius ------------------------------------------------------------

POSITIVE = "Positive"
ZERO_RADIUS = "Zero"
UNKNOWN_FINITE_JET = "UnknownFiniteJet"


@dataclass(frozen=True)
class RadiusVerdict:
    kind: str
    radius: object = None  # Fraction | Infinite | None (positive, value not rational)
    note: str = ""

    @property
    def no_tangent_curve(self) -> bool:
        return self.kind == ZERO_RADIUS


def _rule_radius(rule):
    if rule.kind == GEOMETRIC:
        return Fraction(1) / Fraction(rule.param)
    if rule.kind == POLYNOMIAL_RATE:
        return Fraction(1)
    return None  # factorial: radius zero


def radius_verdict(S: SSeries, gamma_hat: CurveJet | None = None) -> RadiusVerdict:
    """Cauchy-Hadamard verdict for the pure-term series, read off its tail rules.

    ``Zero`` means ``S`` (or ``S o gamma_hat``) diverges at every point of a
    punctured neighbourhood.  For ``S`` itself every variable must carry a
    factorial tail; along a curve exactly one variable in its support may,
    since divergent tails in several variables could cancel.
    """
    if S.tail is None:
        return RadiusVerdict(UNKNOWN_FINITE_JET, None, "finite jet: the radius is not determined by finitely many terms")
    rules = {t.var: t for t in S.tail}
    if gamma_hat is None:
        scope = list(range(S.nvars))
    else:
        if gamma_hat.n != S.nvars:
            raise DimensionMismatch("curve and series dimensions differ")
        scope = [j for j in range(S.nvars) if gamma_hat.components[j]]
    kinds = [rules[j].kind if j in rules else None for j in scope]
    divergent = [j for j, k in zip(scope, kinds) if k == POWER_FACTORIAL]
    if gamma_hat is not None and scope:
        if len(divergent) == 1:
            # one divergent series plus convergent ones cannot cancel
            return RadiusVerdict(ZERO_RADIUS, Fraction(0), f"factorial growth in z{divergent[0] + 1} along the curve")
        if len(divergent) > 1:
            return RadiusVerdict(UNKNOWN_FINITE_JET, None, "divergent tails in several variables may cancel along a curve")
    elif scope and len(divergent) == len(scope):
        return RadiusVerdict(ZERO_RADIUS, Fraction(0), "factorial growth of the pure coefficients")
    if not divergent:
        radii = [_rule_radius(rules[j]) for j in scope if j in rules]
        if not radii:
            return RadiusVerdict(POSITIVE, Infinite(None, "polynomial"), "the series is a polynomial")
        rad = min(radii)
        if gamma_hat is not None:
            comp = gamma_hat.components[scope[0]] if len(scope) == 1 else None
            if comp != ((1, gq(1)),):
                return RadiusVerdict(POSITIVE, None, "composition of convergent series")
        return RadiusVerdict(POSITIVE, rad, "")
    axes = [j + 1 for j, k in zip(scope, kinds) if k != POWER_FACTORIAL]
    # diverges off these axes but not along them: neither verdict is sound
    return RadiusVerdict(UNKNOWN_FINITE_JET, None, f"diverges off the axes {axes} and converges along them")
