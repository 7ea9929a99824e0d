"""Newton polyhedra of jets: support, exact hull, compact faces, convenience, ``rho_1``.

The polyhedron ``N+ = conv(S) + R+^n`` is computed exactly with the double
description method applied to the homogenized cone generated by ``(1, p)``
for support points ``p`` and ``(0, e_i)`` for the coordinate rays.  Extreme
rays ``(y0, a)`` of the dual cone are the facets ``a . xi >= -y0``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptySupport
from .hermitian import HermitianJet
from .values import Infinite


@dataclass(frozen=True)
class SupportSet:
    n: int
    points: frozenset

    def __iter__(self):
        return iter(sorted(self.points))

    def __len__(self):
        return len(self.points)

    @property
    def flat(self) -> bool:
        return not self.points


@dataclass(frozen=True)
class Facet:
    normal: tuple  # primitive, componentwise >= 0
    level: int

    def value(self, p) -> int:
        return sum(a * x for a, x in zip(self.normal, p))

    @property
    def compact(self) -> bool:
        return all(a > 0 for a in self.normal)


@dataclass(frozen=True)
class Face:
    """A compact face of ``N+``.

    ``generators`` are the primitive normals of the facets containing the face;
    the integer points in the open cone they span are exactly the weights that
    determine the face.  ``weight`` is the representative with the smallest
    coordinate sum (ties broken lexicographically) and ``level`` its minimum.
    """

    id: int
    dim: int
    vertices: tuple
    support_points: tuple
    generators: tuple
    weight: tuple
    level: int

    def contains(self, p) -> bool:
        """Whether a support point lies on this face."""
        return tuple(p) in self.support_points


@dataclass(frozen=True)
class NewtonPolyhedron:
    n: int
    points: tuple  # all support points
    vertices: tuple
    facets: tuple
    compact_faces: tuple = field(default=())

    def contains(self, xi) -> bool:
        """Membership of a real point (given exactly) in ``N+``."""
        if any(Fraction(x) < 0 for x in xi):
            return False
        return all(sum(a * Fraction(x) for a, x in zip(f.normal, xi)) >= f.level for f in self.facets)

    def face(self, face_id: int) -> Face:
        for f in self.compact_faces:
            if f.id == face_id:
                return f
        raise KeyError(face_id)

    def compact_facets(self) -> list:
        return [f for f in self.facets if f.compact]


def known_jet(F: HermitianJet) -> HermitianJet:
    """Materialize one order of a rule tail so its lowest term is visible."""
    if F.tail:
        return F.materialize(F.truncation + 1)
    return F


def support(F: HermitianJet) -> SupportSet:
    """``{alpha + beta : C_ab != 0}``, including the first term of each tail rule."""
    F = known_jet(F)
    pts = frozenset(tuple(x + y for x, y in zip(a, b)) for a, b in F.coeffs)
    return SupportSet(F.nvars, pts)


# exact linear algebra --------------------------------------------------------

def rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def affine_rank(points) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    base = pts[0]
    return rank([[x - y for x, y in zip(p, base)] for p in pts[1:]])


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def minimal_points(points) -> list:
    """Points not dominated componentwise by another point (they alone shape ``N+``)."""
    pts = sorted(set(points))
    out = []
    for p in pts:
        if not any(q != p and all(x <= y for x, y in zip(q, p)) for q in pts):
            out.append(p)
    return out


def _double_description(points, n):
    d = n + 1
    gens = [(0,) + tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    gens += [(1,) + tuple(p) for p in points]
    p0 = points[0]
    rays = [(1,) + (0,) * n]
    rays += [(-p0[i],) + tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    def dot(r, g):
        return sum(x * y for x, y in zip(r, g))

    done = list(range(n + 1))
    zsets = []
    for r in rays:
        z = 0
        for c in done:
            if dot(r, gens[c]) == 0:
                z |= 1 << c
        zsets.append(z)

    for c in range(n + 1, len(gens)):
        g = gens[c]
        vals = [dot(r, g) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays, new_z = [], []
        for i in pos:
            new_rays.append(rays[i])
            new_z.append(zsets[i])
        for i in zer:
            new_rays.append(rays[i])
            new_z.append(zsets[i] | (1 << c))
        for i in pos:
            for j in neg:
                common = zsets[i] & zsets[j]
                if bin(common).count("1") < d - 2:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != i and k != j and (zsets[k] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], vals[j]
                r = tuple(vi * y - vj * x for x, y in zip(rays[i], rays[j]))
                new_rays.append(_primitive(r))
                new_z.append(common | (1 << c))
        rays, zsets = new_rays, new_z
    return sorted(set(rays))


def hull(S) -> NewtonPolyhedron:
    """Exact facet/vertex/compact-face description of ``conv(S) + R+^n``."""
    if isinstance(S, HermitianJet):
        S = support(S)
    n = S.n
    if S.flat:
        raise EmptySupport("empty support: the jet is flat")
    mins = minimal_points(S.points)
    facets = []
    for r in _double_description(mins, n):
        y0, a = r[0], r[1:]
        if not any(a):
            continue
        g = 0
        for x in a:
            g = math.gcd(g, x)
        normal = tuple(x // g for x in a)
        level = Fraction(-y0, g)
        if level.denominator != 1:
            raise AssertionError("non-integral facet level")
        facets.append(Facet(normal, int(level)))
    facets.sort(key=lambda f: (f.normal, f.level))
    vertices = []
    for p in mins:
        tight = [f.normal for f in facets if f.value(p) == f.level]
        if rank(tight) == n:
            vertices.append(p)
    P = NewtonPolyhedron(n, tuple(sorted(S.points)), tuple(sorted(vertices)), tuple(facets))
    faces = _compact_faces(P)
    return NewtonPolyhedron(P.n, P.points, P.vertices, P.facets, tuple(faces))


def determines(P: NewtonPolyhedron, a, vertex_set) -> bool:
    """True iff the weight ``a`` (all entries >= 1) cuts out exactly the face with these vertices."""
    if any(x < 1 for x in a):
        return False
    vals = {v: sum(x * y for x, y in zip(a, v)) for v in P.vertices}
    m = min(vals.values())
    return {v for v, val in vals.items() if val == m} == set(vertex_set)


def _representative_weight(P, generators, vertex_set, box_cap=60000):
    total = [sum(col) for col in zip(*generators)]
    box = 1
    for x in total:
        box *= x
    if box <= box_cap:
        cands = sorted(itertools.product(*[range(1, x + 1) for x in total]), key=lambda a: (sum(a), a))
        for a in cands:
            if determines(P, a, vertex_set):
                return tuple(a)
    return _primitive(tuple(total))


def _compact_faces(P: NewtonPolyhedron) -> list:
    n = P.n
    facets = P.facets
    verts = P.vertices
    tight = [frozenset(i for i, v in enumerate(verts) if f.value(v) == f.level) for f in facets]
    zero_coords = [frozenset(j for j in range(n) if f.normal[j] == 0) for f in facets]
    all_v = frozenset(range(len(verts)))
    all_c = frozenset(range(n))

    def geometry(T):
        V, R = all_v, all_c
        for i in T:
            V &= tight[i]
            R &= zero_coords[i]
        return V, R

    def closure(T):
        V, R = geometry(T)
        if not V:
            return None
        return frozenset(i for i in range(len(facets)) if V <= tight[i] and R <= zero_coords[i])

    found = set()
    frontier = []
    for i in range(len(facets)):
        c = closure({i})
        if c is not None and c not in found:
            found.add(c)
            frontier.append(c)
    while frontier:
        nxt = []
        for T in frontier:
            for i in range(len(facets)):
                if i in T:
                    continue
                c = closure(T | {i})
                if c is not None and c not in found:
                    found.add(c)
                    nxt.append(c)
        frontier = nxt

    faces = []
    for T in found:
        V, R = geometry(T)
        if R:
            continue
        vset = tuple(sorted(verts[i] for i in V))
        gens = tuple(sorted(facets[i].normal for i in T))
        weight = _representative_weight(P, gens, vset)
        level = min(sum(x * y for x, y in zip(weight, v)) for v in vset)
        pts = tuple(sorted(p for p in P.points if sum(x * y for x, y in zip(weight, p)) == level))
        faces.append((affine_rank(vset), pts, vset, gens, weight, level))
    faces.sort(key=lambda f: (f[0], f[1]))
    return [Face(i, dim, vset, pts, gens, weight, level) for i, (dim, pts, vset, gens, weight, level) in enumerate(faces)]


def compact_faces(P: NewtonPolyhedron) -> list:
    return list(P.compact_faces)


def intercepts(F: HermitianJet) -> dict:
    """1-based axis index -> smallest support coordinate on that axis (axes that are met)."""
    S = support(F)
    out = {}
    for p in S.points:
        nz = [j for j, x in enumerate(p) if x]
        if not nz:
            return {k + 1: 0 for k in range(S.n)}
        if len(nz) == 1:
            k = nz[0]
            out[k + 1] = min(out.get(k + 1, p[k]), p[k])
    return out


def is_convenient(F: HermitianJet) -> tuple[bool, set]:
    hit = intercepts(F)
    missing = {k for k in range(1, F.nvars + 1) if k not in hit}
    return (not missing, missing)


def rho1(F: HermitianJet):
    """Largest axis intercept of the Newton diagram, or :class:`Infinite`."""
    S = support(F)
    if S.flat:
        return Infinite(None if F.complete else F.truncation, "flat")
    ok, missing = is_convenient(F)
    if not ok:
        return Infinite(None if F.complete else F.truncation,
                        f"not convenient: axes {sorted(missing)} missed")
    return max(intercepts(F).values())


def slab_axis(F: HermitianJet) -> int | None:
    """1-based ``k`` with ``N+ = {xi_k >= 1}``, or ``None``."""
    S = support(F)
    n = F.nvars
    for k in range(n):
        unit = tuple(1 if j == k else 0 for j in range(n))
        if unit in S.points and all(p[k] >= 1 for p in S.points):
            return k + 1
    return None


def is_slab_form(F: HermitianJet) -> bool:
    return slab_axis(F) is not None
