"""Walk through the cusp model 2 Re(w) + |z1^3 - z2^2|^2 + 2 Re(z1^8 + z1^9 + z1^10).

Prints its Newton polyhedron, the degenerate face with its witness, the
regular type, and the absorption ladder along (t^2, t^3).
"""
from __future__ import annotations

from newtonflat.curves import SearchConfig, contact_order, curve, type_search
from newtonflat.faces import DEGENERATE, SearchBudget, is_canonical
from newtonflat.newton import hull, rho1
from newtonflat.parsing import parse

TEXT = "2*Re(w) + |z1^3 - z2^2|^2 + 2*Re(z1^8 + z1^9 + z1^10)"


def main() -> None:
    r = parse(TEXT).jet
    P = hull(r)
    print(f"r = {TEXT}")
    print(f"vertices: {P.vertices}")
    for f in P.facets:
        if f.compact:
            print(f"compact facet: normal {f.normal}, level {f.level}")
    print(f"rho1 = {rho1(r)}")
    canonical, verdicts = is_canonical(r, SearchBudget())
    for v in verdicts:
        if v.status == DEGENERATE:
            print(f"degenerate face {v.face_id}: weight {v.weight}, witness {tuple(map(str, v.witness))}")
    print(f"canonical: {canonical}")
    reg = type_search(r, SearchConfig(max_degree=13, regular_only=True))
    print(f"regular type: {reg.value} along {reg.witness.encode()}")
    for N in (8, 9, 10):
        gamma = curve({2: 1}, {3: 1}, {2 * j: -1 for j in range(8, N + 1)}, validity=2 * N + 1)
        print(f"ladder N={N}: {gamma.encode()} -> {contact_order(r, gamma).order}")
    full = curve({2: 1}, {3: 1}, {16: -1, 18: -1, 20: -1})
    print(f"exact curve {full.encode()} -> {contact_order(r, full).order}")


if __name__ == "__main__":
    main()
