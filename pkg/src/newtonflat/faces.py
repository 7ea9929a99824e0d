"""Face parts, torus systems and the nondegeneracy test on compact faces.

Substituting the monomial curve ``z_j = c_j t^{a_j}`` into a face part gives
``sum_{(p,q)} G_pq(c, cbar) t^p tbar^q``; the face part is degenerate exactly
when all ``G_pq`` share a zero with every ``c_j != 0``.  Nondegeneracy is only
claimed through one of the named rules below, degeneracy only through an
exactly verified witness; everything else is reported as unknown.

Rules:

* ``R1``  some group is a single monomial.
* ``R2``  some group is ``sum lambda_k |c^gamma_k|^2`` with real ``lambda_k``
  of one sign.
* ``R3``  for some ``(p, q)`` the Hermitian form ``G_pq + G_qp`` (or ``G_pp``)
  splits into semidefinite blocks of one sign, at least one of them definite;
  definiteness is certified by exact LDL* pivots.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import FaceMismatch, NotCanonical, UnknownCanonicity, WeightDoesNotDetermineFace
from .gaussian import ZERO, GaussianRational, gq
from .hermitian import ConjPoly, HermitianJet, degree_of
from .newton import Face, NewtonPolyhedron, determines, hull, known_jet, rho1, support

NONDEGENERATE = "nondegenerate"
DEGENERATE = "degenerate"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class FacePart:
    face_id: int
    poly: HermitianJet


@dataclass(frozen=True)
class GroupedTorusSystem:
    weight: tuple
    groups: dict  # (p, q) -> ConjPoly in c

    def reconstruct(self) -> dict:
        """``(p, q) -> G_pq``; kept as a method so callers never mutate ``groups``."""
        return dict(self.groups)


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the witness search; the seed makes the search reproducible."""

    seed: int = 0
    grid_limit: int = 50_000
    random_samples: int = 200
    newton_starts: int = 8
    newton_iters: int = 60
    max_denominator: int = 1000


@dataclass(frozen=True)
class NondegeneracyVerdict:
    face_id: int
    status: str
    weight: tuple
    rule: str | None = None
    detail: str = ""
    witness: tuple | None = None
    candidate: tuple | None = None
    seed: int | None = None
    groups: dict = field(default_factory=dict)

    @property
    def nondegenerate(self) -> bool:
        return self.status == NONDEGENERATE


def face_part(F: HermitianJet, face: Face, P: NewtonPolyhedron | None = None) -> FacePart:
    """Restrict ``F`` to the monomials whose exponent sum lies on ``face``."""
    F = known_jet(F)
    if P is not None and face not in P.compact_faces:
        raise FaceMismatch(f"face {face.id} is not a compact face of this polyhedron")
    pts = set(face.support_points)
    spt = support(F).points
    if not pts <= spt:
        raise FaceMismatch(f"face {face.id} does not belong to the Newton polyhedron of this jet")
    coeffs = {}
    for (a, b), c in F.coeffs.items():
        if tuple(x + y for x, y in zip(a, b)) in pts:
            coeffs[(a, b)] = c
    return FacePart(face.id, HermitianJet(F.nvars, coeffs, F.truncation, ()))


def grouped_system(part, a, P: NewtonPolyhedron | None = None, face: Face | None = None) -> GroupedTorusSystem:
    """Group the monomials of the face part by ``(a . alpha, a . beta)``."""
    jet = part.poly if isinstance(part, FacePart) else part
    a = tuple(int(x) for x in a)
    if len(a) != jet.nvars or any(x < 1 for x in a):
        raise WeightDoesNotDetermineFace(f"weight {a} is not a positive integer {jet.nvars}-vector")
    if P is not None and face is not None and not determines(P, a, face.vertices):
        raise WeightDoesNotDetermineFace(f"weight {a} does not determine face {face.id}")
    levels = set()
    buckets: dict = {}
    for (al, be), c in jet.coeffs.items():
        p = sum(x * y for x, y in zip(a, al))
        q = sum(x * y for x, y in zip(a, be))
        levels.add(p + q)
        buckets.setdefault((p, q), {})[(al, be)] = c
    if len(levels) > 1:
        raise WeightDoesNotDetermineFace(f"weight {a} is not constant on the face part")
    groups = {pq: ConjPoly(jet.nvars, terms) for pq, terms in sorted(buckets.items())}
    return GroupedTorusSystem(a, groups)


# certificates ------------------------------------------------------------------

def _rule_single_monomial(groups):
    for pq, g in groups.items():
        if len(g.terms) == 1:
            return pq
    return None


def _rule_diagonal_squares(groups):
    for pq, g in groups.items():
        signs = set()
        for (al, be), c in g.terms.items():
            if al != be or not c.is_real():
                break
            signs.add(c.re > 0)
        else:
            if len(signs) == 1:
                return pq
    return None


def hermitian_matrix(H: ConjPoly):
    """Monomial basis and coefficient matrix of a Hermitian form ``sum h_ab c^a cbar^b``."""
    basis = sorted({a for a, _ in H.terms} | {b for _, b in H.terms})
    idx = {m: i for i, m in enumerate(basis)}
    M = [[ZERO] * len(basis) for _ in basis]
    for (a, b), c in H.terms.items():
        M[idx[a]][idx[b]] = c
    return basis, M


def semidefinite(M) -> tuple[bool, bool]:
    """``(psd, pd)`` for a Hermitian Gaussian-rational matrix, by exact pivoting."""
    A = [row[:] for row in M]
    while A:
        k = next((i for i in range(len(A)) if A[i][i].re > 0), None)
        if k is None:
            if any(A[i][i].re < 0 for i in range(len(A))):
                return False, False
            return all(not x for row in A for x in row), False
        piv = A[k][k].re
        rest = [i for i in range(len(A)) if i != k]
        A = [[A[i][j] - A[i][k] * A[k][j] / piv for j in rest] for i in rest]
    return True, True


def _blocks(M):
    n = len(M)
    seen, out = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and (M[i][j] or M[j][i]):
                    seen.add(j)
                    stack.append(j)
        out.append(sorted(comp))
    return out


def _rule_hermitian_blocks(groups):
    for (p, q), g in groups.items():
        if p > q:
            continue
        H = g if p == q else g + groups.get((q, p), ConjPoly(g.nvars))
        if H.is_zero() or not H.is_hermitian():
            continue
        _, M = hermitian_matrix(H)
        for sign in (1, -1):
            ok, definite = True, False
            for blk in _blocks(M):
                sub = [[M[i][j] * sign for j in blk] for i in blk]
                psd, pd = semidefinite(sub)
                if not psd:
                    ok = False
                    break
                definite |= pd
            if ok and definite:
                return (p, q), sign
    return None


def certify_nondegenerate(groups):
    """Return ``(rule, detail)`` if a rule proves there is no torus zero, else ``None``."""
    pq = _rule_single_monomial(groups)
    if pq is not None:
        return "R1", f"group {pq} is a single monomial"
    pq = _rule_diagonal_squares(groups)
    if pq is not None:
        return "R2", f"group {pq} is a one-signed sum of squared moduli"
    hit = _rule_hermitian_blocks(groups)
    if hit is not None:
        (p, q), sign = hit
        kind = "positive" if sign > 0 else "negative"
        return "R3", f"Hermitian form of groups {(p, q)}/{(q, p)} is {kind} semidefinite with a definite block"
    return None


# witness search -----------------------------------------------------------------

_GRID = [gq(1), gq(-1), gq(2), gq(-2), gq(Fraction(1, 2)), gq(Fraction(-1, 2)),
         gq(0, 1), gq(0, -1), gq(1, 1), gq(1, -1), gq(-1, 1), gq(-1, -1)]


def is_torus_zero(groups, c) -> bool:
    if any(not x for x in c):
        return False
    return all(not g.evaluate(c) for g in groups.values())


def _active_vars(groups, n):
    act = set()
    for g in groups.values():
        for a, b in g.terms:
            act |= {j for j in range(n) if a[j] or b[j]}
    return sorted(act)


def _numeric_terms(g: ConjPoly):
    return [(complex(c), np.array(a), np.array(b)) for (a, b), c in g.terms.items()]


def _newton(groups, n, active, rng, budget):
    eqs = [_numeric_terms(g) for (p, q), g in groups.items() if p >= q]
    free = active[1:]
    if not free:
        return None

    def build(c):
        vals, jac = [], []
        for terms in eqs:
            v = 0j
            dz = np.zeros(n, complex)
            dzb = np.zeros(n, complex)
            for coef, a, b in terms:
                mono = coef * np.prod(c ** a) * np.prod(np.conj(c) ** b)
                v += mono
                for j in free:
                    if a[j]:
                        dz[j] += coef * a[j] * np.prod(c ** (a - np.eye(n, dtype=int)[j])) * np.prod(np.conj(c) ** b)
                    if b[j]:
                        dzb[j] += coef * b[j] * np.prod(c ** a) * np.prod(np.conj(c) ** (b - np.eye(n, dtype=int)[j]))
            vals.append(v)
            row = []
            for j in free:
                row.append(dz[j] + dzb[j])
                row.append(1j * (dz[j] - dzb[j]))
            jac.append(row)
        vals = np.array(vals)
        J = np.array(jac)
        return np.concatenate([vals.real, vals.imag]), np.vstack([J.real, J.imag])

    for _ in range(budget.newton_starts):
        c = np.ones(n, complex)
        for j in free:
            c[j] = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        for _ in range(budget.newton_iters):
            F, J = build(c)
            if np.linalg.norm(F) < 1e-13:
                break
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
            for k, j in enumerate(free):
                c[j] += step[2 * k] + 1j * step[2 * k + 1]
        F, _ = build(c)
        if np.linalg.norm(F) < 1e-9 and all(abs(c[j]) > 1e-6 for j in free):
            return c
    return None


def find_torus_zero(groups, n, budget: SearchBudget = SearchBudget()):
    """Search for ``c`` in the torus with every ``G_pq(c, cbar) = 0``.

    Returns ``(witness, candidate)``: an exactly verified Gaussian-rational
    witness, or ``None`` plus possibly a numeric near-zero that did not
    rationalize.
    """
    active = _active_vars(groups, n)
    base = [gq(1)] * n
    if not active:
        return (tuple(base), None) if all(g.is_zero() for g in groups.values()) else (None, None)
    # torus action c_j -> s^{a_j} c_j: fix the first active coordinate to 1
    free = active[1:]
    count = 0
    for vals in itertools.product(_GRID, repeat=len(free)):
        count += 1
        if count > budget.grid_limit:
            break
        c = list(base)
        for j, v in zip(free, vals):
            c[j] = v
        if is_torus_zero(groups, c):
            return tuple(c), None
    rng = random.Random(budget.seed)
    for _ in range(budget.random_samples):
        c = list(base)
        for j in free:
            c[j] = gq(Fraction(rng.randint(-6, 6), rng.randint(1, 4)), Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        if is_torus_zero(groups, c):
            return tuple(c), None
    num = _newton(groups, n, active, rng, budget)
    if num is None:
        return None, None
    c = list(base)
    for j in free:
        z = num[j]
        c[j] = gq(Fraction(z.real).limit_denominator(budget.max_denominator),
                  Fraction(z.imag).limit_denominator(budget.max_denominator))
    if is_torus_zero(groups, c):
        return tuple(c), None
    return None, tuple(complex(x) for x in num)


def nondegeneracy_verdict(F: HermitianJet, face: Face, budget: SearchBudget = SearchBudget(),
                          P: NewtonPolyhedron | None = None, weight=None) -> NondegeneracyVerdict:
    part = face_part(F, face, P)
    a = tuple(weight) if weight is not None else face.weight
    system = grouped_system(part, a, P, face if P is not None else None)
    groups = system.groups
    cert = certify_nondegenerate(groups)
    if cert is not None:
        return NondegeneracyVerdict(face.id, NONDEGENERATE, a, rule=cert[0], detail=cert[1], groups=groups)
    witness, candidate = find_torus_zero(groups, F.nvars, budget)
    if witness is not None:
        return NondegeneracyVerdict(face.id, DEGENERATE, a, detail="exact torus zero of every group",
                                    witness=witness, seed=budget.seed, groups=groups)
    detail = "no rule applies and no exact witness found within budget"
    if candidate is not None:
        detail = "numeric candidate did not verify exactly"
    return NondegeneracyVerdict(face.id, UNKNOWN, a, detail=detail, candidate=candidate,
                                seed=budget.seed, groups=groups)


def is_canonical(F: HermitianJet, budget: SearchBudget = SearchBudget()):
    """``(True | False | None, verdicts)``; ``None`` means undecided."""
    if support(F).flat:
        return True, []
    P = hull(F)
    verdicts = [nondegeneracy_verdict(F, f, budget, P) for f in P.compact_faces]
    if any(v.status == DEGENERATE for v in verdicts):
        return False, verdicts
    if any(v.status == UNKNOWN for v in verdicts):
        return None, verdicts
    return True, verdicts


def face_data_stable(F: HermitianJet) -> bool:
    """True when terms above the truncation cannot change ``N+`` or any face part."""
    if F.complete:
        return True
    r = rho1(F)
    return isinstance(r, int) and r <= F.truncation


def type_if_canonical(F: HermitianJet, budget: SearchBudget = SearchBudget()) -> dict:
    """``delta1 = delta1_reg = rho1`` when every compact face is certified nondegenerate."""
    if not face_data_stable(F):
        raise UnknownCanonicity("truncated jet: unseen terms could change the Newton diagram")
    value, verdicts = is_canonical(F, budget)
    if value is None:
        raise UnknownCanonicity("some face verdicts are unknown")
    if value is False:
        bad = [v.face_id for v in verdicts if v.status == DEGENERATE]
        raise NotCanonical(f"degenerate faces: {bad}")
    r = rho1(F)
    return {"delta1": r, "delta1_reg": r, "rho1": r}


def torus_substitution(part: FacePart | HermitianJet, a, c) -> dict:
    """Exact ``(p, q) -> coefficient`` of ``F_kappa(c_1 t^a_1, ...)`` in ``t^p tbar^q``."""
    jet = part.poly if isinstance(part, FacePart) else part
    c = [GaussianRational.coerce(x) for x in c]
    out: dict = {}
    for (al, be), coef in jet.coeffs.items():
        v = coef
        for j in range(jet.nvars):
            v = v * c[j] ** al[j] * c[j].conjugate() ** be[j]
        key = (sum(x * y for x, y in zip(a, al)), sum(x * y for x, y in zip(a, be)))
        out[key] = out.get(key, ZERO) + v
    return {k: v for k, v in out.items() if v}


__all__ = [
    "FacePart", "GroupedTorusSystem", "SearchBudget", "NondegeneracyVerdict",
    "face_part", "grouped_system", "nondegeneracy_verdict", "is_canonical",
    "type_if_canonical", "face_data_stable", "certify_nondegenerate",
    "find_torus_zero", "is_torus_zero", "torus_substitution", "degree_of",
    "NONDEGENERATE", "DEGENERATE", "UNKNOWN", "NotCanonical",
]
