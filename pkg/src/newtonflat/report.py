"""Deterministic JSON rendering of analysis results (``"schema": 1``).

Every document starts with ``schema`` and ``kind``.  Keys appear in a fixed
order set by construction (never sorted), ``None`` fields are omitted, rationals
are ints or ``"p/q"`` strings, Gaussian rationals are strings like ``"1-2/3i"``
and orders use the encodings of :func:`encode_value`.
"""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .curves import ContactResult, CurveJet, RadiusVerdict, TypeSearchResult
from .faces import NondegeneracyVerdict
from .gaussian import GaussianRational
from .newton import Face, NewtonPolyhedron
from .parsing import print_jet, print_poly
from .values import AtLeast, Infinite, as_json_number

SCHEMA = 1


def encode_value(x):
    """Exact numbers stay numbers; ``inf``; ``{"at_least": b}``; ``{"inf_witnessed_to": T}``."""
    if isinstance(x, Infinite):
        return "inf" if x.exact else {"inf_witnessed_to": x.witnessed_to}
    if isinstance(x, AtLeast):
        return {"at_least": as_json_number(x.bound)}
    return jsonable(x)


def jsonable(x):
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, Fraction)):
        return as_json_number(x)
    if isinstance(x, GaussianRational):
        return str(x)
    if isinstance(x, (Infinite, AtLeast)):
        return encode_value(x)
    if isinstance(x, CurveJet):
        return x.encode()
    if isinstance(x, ContactResult):
        return contact_json(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items() if v is not None}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if dataclasses.is_dataclass(x):
        return jsonable({f.name: getattr(x, f.name) for f in dataclasses.fields(x)})
    return str(x)


def _obj(**kw) -> dict:
    return {k: v for k, v in kw.items() if v is not None}


def contact_json(res: ContactResult) -> dict:
    return _obj(order=encode_value(res.order), curve_order=res.curve_order,
                ratio=encode_value(res.ratio), censored=res.censored)


def face_json(face: Face) -> dict:
    return _obj(id=face.id, dim=face.dim, vertices=jsonable(face.vertices),
                support_points=jsonable(face.support_points), weight=jsonable(face.weight),
                level=face.level, generators=jsonable(face.generators))


def hull_json(P: NewtonPolyhedron) -> dict:
    return _obj(
        n=P.n,
        vertices=jsonable(P.vertices),
        facets=[_obj(normal=jsonable(f.normal), level=f.level, compact=f.compact) for f in P.facets],
        faces=[face_json(f) for f in P.compact_faces],
    )


def groups_json(groups: dict) -> dict:
    out = {}
    for (p, q), g in groups.items():
        names = [f"c{j + 1}" for j in range(g.nvars)]
        out[f"{p},{q}"] = print_poly(g.terms, names)
    return out


def verdict_json(v: NondegeneracyVerdict) -> dict:
    """Per-face record: id, weight, groups, verdict, then its certificate or witness, then the seed."""
    cert = _obj(rule=v.rule, detail=v.detail or None) or None
    return _obj(id=v.face_id, weight=jsonable(v.weight), groups=groups_json(v.groups) or None,
                verdict=v.status, certificate=cert, witness=jsonable(v.witness),
                candidate=jsonable(v.candidate), seed=v.seed)


def search_json(res: TypeSearchResult) -> dict:
    return _obj(
        regular_only=res.regular_only,
        value=encode_value(res.value),
        exact=res.exact,
        censored=res.censored,
        witness=jsonable(res.witness),
        contact=contact_json(res.contact) if res.contact is not None else None,
        curves_tried=res.curves_tried,
        seed=res.seed,
        note=res.note or None,
    )


def radius_json(rad: RadiusVerdict) -> dict:
    return _obj(verdict=rad.kind, radius=encode_value(rad.radius) if rad.radius is not None else None,
                note=rad.note or None)


def parse_document(df) -> dict:
    """The parsed jet: variables, truncation, tail and every stored coefficient."""
    jet = df.jet
    terms = [{"alpha": list(a), "beta": list(b), "c": str(c)} for (a, b), c in sorted(jet.coeffs.items())]
    body = _obj(
        variables=df.names,
        nvars=df.nvars,
        has_w=df.has_w,
        truncation=jet.truncation,
        complete=jet.complete,
        tail=[t.to_json() for t in jet.tail] if jet.tail else None,
        terms=terms,
        printed=print_jet(jet, df.has_w),
    )
    return document("parse", body)


def error_document(exc: Exception) -> dict:
    body = _obj(error=type(exc).__name__, message=getattr(exc, "message", None) or str(exc),
                position=getattr(exc, "position", None),
                expected=list(getattr(exc, "expected", ())) or None)
    return document("error", body)


def document(kind: str, body: dict | None = None, findings: list | None = None) -> dict:
    doc = {"schema": SCHEMA, "kind": kind}
    doc.update(body or {})
    doc["findings"] = findings if findings is not None else []
    return doc


def report_findings(rep) -> list:
    out = []
    if rep.rho1 is not None:
        f = {"kind": "rho1", "rho1": {"value": encode_value(rep.rho1)}}
        if isinstance(rep.rho1, Infinite):
            f["rho1"]["note"] = "flat"
        out.append(f)
    if rep.convenient is not None:
        out.append(_obj(kind="convenience", convenient=rep.convenient,
                        missing_axes=list(rep.missing_axes) or None))
    if rep.slab_axis is not None:
        out.append({"kind": "slab", "axis": rep.slab_axis})
    if rep.face_verdicts or rep.canonical is not None:
        canon = "unknown" if rep.canonical is None else rep.canonical
        out.append({"kind": "canonicity", "canonical": canon, "stable": rep.canonicity_stable})
    for v in rep.face_verdicts:
        out.append({"kind": "face", **verdict_json(v)})
    if rep.type_search is not None:
        out.append({"kind": "delta1", **search_json(rep.type_search)})
    if rep.regular_search is not None:
        out.append({"kind": "delta1_reg", **search_json(rep.regular_search)})
    if rep.bloom_graham is not None:
        out.append({"kind": "bloom_graham", "value": encode_value(rep.bloom_graham)})
    if rep.radius is not None:
        out.append({"kind": "radius", **radius_json(rep.radius)})
    for k, c in sorted(rep.conditions.items()):
        out.append(_obj(kind="condition", index=k, key=c.key, status=c.status,
                        certificate=jsonable(c.certificate), note=c.note or None,
                        implied_by=c.implied_by))
    for s in rep.levi:
        out.append(_obj(kind="levi", point=jsonable(s.point), eigenvalues=list(s.eigenvalues),
                        signs=s.signs, warning=s.warning or None))
    for a in rep.annotations:
        out.append({"kind": "annotation", "text": a})
    return out


def report_document(rep) -> dict:
    body = _obj(
        corpus_id=rep.corpus_id,
        source=rep.source or None,
        nvars=rep.nvars or None,
        has_w=rep.has_w if rep.nvars else None,
        form=rep.form,
        representation=rep.representation or None,
        truncation=rep.truncation,
        complete=rep.complete if rep.truncation is not None else None,
        seed=rep.seed if rep.conditions else None,
        budget=rep.budget if rep.conditions else None,
        table=rep.table() if len(rep.conditions) == 8 else None,
    )
    return document("classification", body, report_findings(rep))


def dumps(doc: dict, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n"


def emit_report(rep, pretty: bool = False) -> str:
    return dumps(report_document(rep), pretty)
