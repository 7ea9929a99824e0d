"""Three-valued evaluation of the eight type conditions on a defining function.

Conditions, by index:

1. infinite type;  2. infinite regular type;  3. a regular curve tangent to
infinite order;  4. some curve tangent to infinite order;  5. a coordinate
in which ``r`` is not convenient;  6. a coordinate in which ``N+`` is the
slab ``xi_k >= 1``;  7. infinite Bloom-Graham type;  8. Levi-flat near the
point (not evaluated; only a numeric Levi-form spot check is offered).

Direct evidence sets a few verdicts; the rest follow by propagating Proved
along the implication arrows and Refuted against them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .curves import (
    CurveJet, SearchConfig, TypeSearchResult, ZCURVE, axis_curve, compose, contact_order,
    extract_S, monomial_curve, radius_verdict, split_model, tangency_witness, type_search,
)
from .errors import DimensionMismatch, NotModelForm, SingularPoint
from .faces import DEGENERATE, SearchBudget, face_data_stable, is_canonical
from .gaussian import ZERO, gq
from .hermitian import HermitianJet, pure_mixed_split, vanishing_order
from .newton import hull, is_convenient, rho1, slab_axis, support
from .parsing import MODEL, DefiningFunction, recognize_form
from .values import AtLeast, Infinite

PROVED = "Proved"
REFUTED = "Refuted"
UNKNOWN = "Unknown"

CONDITION_KEYS = {
    1: "infinite_type",
    2: "infinite_regular_type",
    3: "regular_tangent_curve",
    4: "tangent_curve",
    5: "non_convenient",
    6: "slab_polyhedron",
    7: "infinite_bloom_graham",
    8: "levi_flat",
}

IMPLICATIONS = ((2, 1), (3, 2), (3, 5), (5, 3), (6, 5), (8, 6), (7, 2), (6, 7), (4, 1), (3, 4))
# extra equivalences for hypersurfaces in C^2 (one z variable)
IMPLICATIONS_C2 = ((1, 2), (2, 7), (7, 1), (3, 4), (4, 5), (5, 6), (6, 3))


@dataclass
class ConditionVerdict:
    index: int
    status: str = UNKNOWN
    certificate: dict | None = None
    note: str = ""
    implied_by: int | None = None

    @property
    def key(self) -> str:
        return CONDITION_KEYS[self.index]


@dataclass
class LeviSample:
    point: tuple
    eigenvalues: tuple
    signs: str
    warning: str = ""


@dataclass
class ClassificationReport:
    source: str = ""
    nvars: int = 0
    has_w: bool = False
    form: str | None = None
    representation: str = ""
    truncation: int | None = None
    complete: bool = True
    rho1: object = None
    convenient: bool | None = None
    missing_axes: tuple = ()
    slab_axis: int | None = None
    canonical: bool | None = None
    canonicity_stable: bool = True
    face_verdicts: list = field(default_factory=list)
    regular_search: TypeSearchResult | None = None
    type_search: TypeSearchResult | None = None
    bloom_graham: object = None
    radius: object = None
    conditions: dict = field(default_factory=dict)
    levi: list = field(default_factory=list)
    corpus_id: str | None = None
    seed: int = 0
    budget: int = 0
    annotations: tuple = ()

    def status(self, k: int) -> str:
        return self.conditions[k].status

    def table(self) -> str:
        return "".join(self.status(k)[0] for k in range(1, 9))

    def has_unknowns(self) -> bool:
        return any(v.status == UNKNOWN for k, v in self.conditions.items() if k != 8)


# individual checks ---------------------------------------------------------------

def check_condition5(r: HermitianJet) -> ConditionVerdict:
    ok, missing = is_convenient(r)
    v = ConditionVerdict(5)
    if ok:
        v.note = "convenient in the given coordinate (other coordinates not examined)"
        return v
    k = min(missing)
    if not r.complete:
        v.note = f"no pure term on axes {sorted(missing)} up to order {r.truncation}"
        return v
    gamma = axis_curve(r.nvars, k - 1)
    res = contact_order(r, gamma)
    v.status = PROVED
    v.certificate = {"missing_axes": sorted(missing), "axis": k, "curve": gamma.encode(), "contact": res.order}
    return v


def check_condition6(r: HermitianJet) -> ConditionVerdict:
    v = ConditionVerdict(6)
    k = slab_axis(r)
    if k is not None and r.complete:
        v.status = PROVED
        v.certificate = {"slab_axis": k}
    elif k is not None:
        v.note = f"slab up to order {r.truncation}; unseen terms could leave it"
    else:
        v.note = "not a slab in the given coordinate"
    return v


def bloom_graham(r: HermitianJet, bound: int | None = None):
    """Mixed vanishing order of ``F`` for ``r = 2 Re(w) + F``, censored at ``bound`` and ``T``."""
    F = split_model(r)
    _, mixed = pure_mixed_split(F)
    mo = vanishing_order(mixed)
    if isinstance(mo, Infinite):
        if mo.exact:
            return mo if bound is None else AtLeast(bound + 1)
        cap = mo.witnessed_to if bound is None else min(bound, mo.witnessed_to)
        return AtLeast(cap + 1)
    if bound is not None and mo > bound:
        return AtLeast(bound + 1)
    return mo


def _zero_curve_certificate(r, gamma, res):
    return {"curve": gamma.encode(), "curve_order": gamma.order(), "contact": "identically zero"}


def _z_candidates(F: HermitianJet, verdicts, P) -> list:
    """z-curves worth testing for a vanishing mixed part: face witnesses and axes."""
    n = F.nvars
    out = []
    seen = set()

    def add(c: CurveJet):
        c = CurveJet(c.components, None, ZCURVE).normalized()
        if c.encode() not in seen:
            seen.add(c.encode())
            out.append(c)

    for k in range(n):
        add(axis_curve(n, k))
    if P is not None:
        for v in verdicts:
            if v.status != DEGENERATE:
                continue
            face = P.face(v.face_id)
            active = {j for p in face.support_points for j, x in enumerate(p) if x}
            coeffs = [v.witness[j] if j in active else ZERO for j in range(n)]
            weight = v.weight[:n]
            if any(coeffs[:n]):
                try:
                    add(monomial_curve(coeffs[:n], weight))
                except Exception:
                    continue
    return out


def levi_spot_check(r: HermitianJet, points, tol: float = 1e-9) -> list:
    """Eigenvalues of the Levi form on the complex tangent space at each point (floating point)."""
    n = r.nvars
    out = []
    terms = [(complex(c), np.array(a), np.array(b)) for (a, b), c in r.coeffs.items()]
    for pt in points:
        z = np.array([complex(x) for x in pt])
        zb = np.conj(z)
        grad = np.zeros(n, complex)
        H = np.zeros((n, n), complex)
        for c, a, b in terms:
            for j in range(n):
                if a[j]:
                    ea = a.copy()
                    ea[j] -= 1
                    grad[j] += c * a[j] * np.prod(z ** ea) * np.prod(zb ** b)
                    for k in range(n):
                        if b[k]:
                            eb = b.copy()
                            eb[k] -= 1
                            H[j, k] += c * a[j] * b[k] * np.prod(z ** ea) * np.prod(zb ** eb)
        if np.linalg.norm(grad) < 1e-12:
            raise SingularPoint(f"gradient vanishes at {tuple(pt)}")
        # null space of the row vector grad: complex tangent directions
        _, s, vh = np.linalg.svd(grad.reshape(1, n))
        B = vh[1:].T  # columns span {v : grad . v = 0}
        A = B.T @ H @ np.conj(B)
        A = (A + A.conj().T) / 2
        eig = tuple(float(x) for x in np.linalg.eigvalsh(A)) if A.size else ()
        signs = "".join("+" if x > tol else "-" if x < -tol else "0" for x in eig)
        warn = ""
        if s[0] < 1e-6:
            warn = "gradient nearly vanishes; eigenvalues unreliable"
        out.append(LeviSample(tuple(complex(x) for x in pt), eig, signs, warn))
    return out


def sample_model_points(r: HermitianJet, count: int = 3, seed: int = 0, scale: float = 0.1) -> list:
    """Points of ``{2 Re(w) + F = 0}`` with small random ``z`` (w is the last variable)."""
    F = split_model(r)
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        z = [complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale)) for _ in range(F.nvars)]
        val = complex(F.evaluate([gq(Fraction(x.real).limit_denominator(10**6), Fraction(x.imag).limit_denominator(10**6)) for x in z]))
        pts.append(tuple(z) + (complex(-val.real / 2, rng.uniform(-scale, scale)),))
    return pts


# conditions 1-4 and 7 ---------------------------------------------------------------

def check_conditions_1_to_4(r: HermitianJet, model: bool, canonical, stable: bool, verdicts, P,
                            budget: int, search: TypeSearchResult | None, reg: TypeSearchResult | None):
    v = {k: ConditionVerdict(k) for k in (1, 2, 3, 4)}
    extras = {}

    # exact vanishing along some curve found by the search
    for res in (search, reg):
        if res is None or res.contact is None:
            continue
        if isinstance(res.contact.order, Infinite) and res.contact.order.exact:
            cert = _zero_curve_certificate(r, res.witness, res.contact)
            if v[4].status != PROVED:
                v[4].status, v[4].certificate = PROVED, cert
            if res.witness.order() == 1 and v[3].status != PROVED:
                v[3].status, v[3].certificate = PROVED, cert

    if model:
        F = split_model(r)
        ext = extract_S(F)
        rad = radius_verdict(ext.series)
        extras["radius"] = rad
        for gh in _z_candidates(F, verdicts, P):
            mixed_along = compose(ext.mixed, gh)
            if mixed_along.terms or mixed_along.bound is not None:
                continue
            if not r.complete:
                continue
            N = max(2 * budget, 20)
            wit = tangency_witness(F, gh, N)
            res = contact_order(r, wit.curve)
            cert = {
                "z_curve": gh.encode(),
                "mixed_along_curve": "identically zero",
                "ladder_curve": wit.curve.encode(),
                "ladder_contact": str(res.order),
                "ladder_ratio": str(res.ratio),
            }
            regular = gh.order() == 1
            if v[1].status != PROVED:
                v[1].status, v[1].certificate = PROVED, cert
                v[1].note = "pure terms along this z-curve are absorbed to every order"
            if regular and v[2].status != PROVED:
                v[2].status, v[2].certificate = PROVED, cert
            if isinstance(res.order, Infinite) and res.order.exact:
                if v[4].status != PROVED:
                    v[4].status, v[4].certificate = PROVED, cert
                if regular and v[3].status != PROVED:
                    v[3].status, v[3].certificate = PROVED, cert
            elif radius_verdict(ext.series, gh).kind == "Positive":
                # the pure series converges, so the absorbing curve converges too
                c2 = dict(cert, radius="positive along the z-curve")
                if v[4].status != PROVED:
                    v[4].status, v[4].certificate = PROVED, c2
                if regular and v[3].status != PROVED:
                    v[3].status, v[3].certificate = PROVED, c2

    if canonical is True and stable:
        r1 = rho1(r)
        if isinstance(r1, int):
            for k in (1, 2):
                if v[k].status == UNKNOWN:
                    v[k].status = REFUTED
                    v[k].certificate = {"canonical": True, "rho1": r1}
                    v[k].note = "type equals rho1 on a canonical coordinate"

    if v[2].status == UNKNOWN and reg is not None:
        v[2].note = f"regular type search over degree <= {budget}: {_fmt_value(reg.value)}"
    if v[1].status == UNKNOWN and search is not None:
        v[1].note = f"type search over degree <= {budget}: {_fmt_value(search.value)}"
    return v, extras


def _fmt_value(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def check_condition7(r: HermitianJet, model: bool):
    v = ConditionVerdict(7)
    if not model:
        v.note = "Bloom-Graham type is only read off model-form inputs"
        return v, None
    bg = bloom_graham(r)
    if isinstance(bg, int):
        v.status = REFUTED
        v.certificate = {"bloom_graham": bg}
    elif isinstance(bg, Infinite):
        v.status = PROVED
        v.certificate = {"bloom_graham": "inf", "mixed_part": "zero"}
    else:
        v.note = f"no mixed term up to order {bg.bound - 1}"
    return v, bg


def radius_refutes_tangency(bg, rad) -> bool:
    return isinstance(bg, Infinite) and bg.exact and rad is not None and rad.kind == "Zero"


# propagation -------------------------------------------------------------------------

def propagate(conds: dict, two_dimensional: bool) -> None:
    arrows = IMPLICATIONS + (IMPLICATIONS_C2 if two_dimensional else ())
    changed = True
    while changed:
        changed = False
        for a, b in arrows:
            if 8 in (a, b):
                continue
            if conds[a].status == PROVED and conds[b].status == UNKNOWN:
                conds[b].status = PROVED
                conds[b].implied_by = a
                changed = True
            if conds[b].status == REFUTED and conds[a].status == UNKNOWN:
                conds[a].status = REFUTED
                conds[a].implied_by = b
                changed = True


def diagram_consistent(conds: dict, two_dimensional: bool = False) -> bool:
    arrows = IMPLICATIONS + (IMPLICATIONS_C2 if two_dimensional else ())
    return not any(conds[a].status == PROVED and conds[b].status == REFUTED for a, b in arrows)


# orchestration -------------------------------------------------------------------------

def classify(df: DefiningFunction | HermitianJet, budget: int = 10, seed: int = 0,
             levi_points: int = 0, annotations=()) -> ClassificationReport:
    if isinstance(df, HermitianJet):
        df = DefiningFunction(df.nvars - 1, True, df, "")
    r = df.jet
    if r.nvars < 2:
        raise DimensionMismatch("a hypersurface germ needs at least two complex variables")
    rep = ClassificationReport(source=df.source_text, nvars=df.nvars, has_w=df.has_w, seed=seed,
                               budget=budget, truncation=r.truncation, complete=r.complete,
                               annotations=tuple(annotations))
    rep.representation = _representation(r)
    try:
        rep.form = recognize_form(df)
    except Exception as exc:  # NotAHypersurface
        rep.form = type(exc).__name__
    model = rep.form == MODEL
    fb = SearchBudget(seed=seed)

    rep.rho1 = rho1(r)
    ok, missing = is_convenient(r)
    rep.convenient, rep.missing_axes = ok, tuple(sorted(missing))
    rep.slab_axis = slab_axis(r)
    P = None
    if not support(r).flat:
        P = hull(r)
        rep.canonical, rep.face_verdicts = is_canonical(r, fb)
    rep.canonicity_stable = face_data_stable(r)

    rep.type_search = type_search(r, SearchConfig(max_degree=budget, seed=seed), fb)
    rep.regular_search = type_search(r, SearchConfig(max_degree=budget, regular_only=True, seed=seed), fb)

    conds, extras = check_conditions_1_to_4(r, model, rep.canonical, rep.canonicity_stable,
                                            rep.face_verdicts, P, budget, rep.type_search, rep.regular_search)
    rep.radius = extras.get("radius")
    conds[5] = check_condition5(r)
    conds[6] = check_condition6(r)
    conds[7], rep.bloom_graham = check_condition7(r, model)
    conds[8] = ConditionVerdict(8, note="Levi-flatness near the point is not evaluated")
    if model and conds[4].status == UNKNOWN and radius_refutes_tangency(rep.bloom_graham, rep.radius):
        conds[4].status = REFUTED
        conds[4].certificate = {"bloom_graham": "inf", "radius": "zero",
                                "reason": "the pure-term series diverges at every point near 0"}
    propagate(conds, df.nvars == 1 and df.has_w)
    rep.conditions = dict(sorted(conds.items()))
    if levi_points and model:
        rep.levi = levi_spot_check(r, sample_model_points(r, levi_points, seed))
    return rep


def _representation(r: HermitianJet) -> str:
    if r.tail is None:
        return f"truncated jet, exact up to order {r.truncation}"
    if r.tail == ():
        return "polynomial germ (all terms known)"
    rules = ", ".join(rule.describe() for rule in r.tail)
    return f"jet exact up to order {r.truncation} plus pure tails: {rules}"


__all__ = [
    "PROVED", "REFUTED", "UNKNOWN", "CONDITION_KEYS", "IMPLICATIONS", "IMPLICATIONS_C2",
    "ConditionVerdict", "ClassificationReport", "LeviSample",
    "check_condition5", "check_condition6", "check_condition7", "bloom_graham",
    "check_conditions_1_to_4", "levi_spot_check", "sample_model_points",
    "propagate", "diagram_consistent", "classify", "NotModelForm",
]
