"""Command-line interface: ``newtonflat <subcommand> <file> [options]``.

Exit codes: 0 ok, 2 parse error, 3 the result still contains Unknown verdicts,
1 a corpus entry failed to reproduce its table.
"""
from __future__ import annotations

import argparse
import sys

from . import report as rp
from .classify import classify
from .corpus import CORPUS, run_corpus
from .curves import (SearchConfig, compose_S, contact_order, curve_regularity_check,
                     extract_S, radius_verdict, split_model, type_search)
from .errors import (BadCurve, DegreeOverflow, DimensionMismatch, ExprSyntaxError, NonRealExpression,
                     NonRealInput, NotModelForm)
from .faces import UNKNOWN, SearchBudget, is_canonical
from .newton import hull, is_convenient, rho1, support
from .parsing import parse, parse_curve

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNKNOWN = 0, 1, 2, 3
PARSE_ERRORS = (ExprSyntaxError, NonRealExpression, NonRealInput, DegreeOverflow, DimensionMismatch, BadCurve)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(args):
    return parse(_read(args.file), args.trunc)


def _out(args, doc: dict) -> None:
    sys.stdout.write(rp.dumps(doc, args.pretty))


def _basics(r) -> list:
    out = [{"kind": "rho1", "rho1": {"value": rp.encode_value(rho1(r))}}]
    ok, missing = is_convenient(r)
    out.append(rp._obj(kind="convenience", convenient=ok, missing_axes=sorted(missing) or None))
    return out


def cmd_hull(args) -> int:
    df = _load(args)
    if support(df.jet).flat:
        _out(args, rp.document("hull", {"flat": True}, _basics(df.jet)))
        return EXIT_OK
    _out(args, rp.document("hull", rp.hull_json(hull(df.jet)), _basics(df.jet)))
    return EXIT_OK


def cmd_faces(args) -> int:
    df = _load(args)
    if support(df.jet).flat:
        _out(args, rp.document("faces", {"flat": True, "canonical": True}))
        return EXIT_OK
    canon, verdicts = is_canonical(df.jet, SearchBudget(seed=args.seed))
    body = {"canonical": "unknown" if canon is None else canon, "seed": args.seed}
    _out(args, rp.document("faces", body, [{"kind": "face", **rp.verdict_json(v)} for v in verdicts]))
    return EXIT_UNKNOWN if any(v.status == UNKNOWN for v in verdicts) else EXIT_OK


def cmd_type(args) -> int:
    df = _load(args)
    cfg = SearchConfig(max_degree=args.max_degree, regular_only=args.regular, seed=args.seed)
    res = type_search(df.jet, cfg, SearchBudget(seed=args.seed))
    key = "delta1_reg" if args.regular else "delta1"
    _out(args, rp.document("type", {key: rp.search_json(res)}))
    return EXIT_OK


def cmd_curve_ord(args) -> int:
    df = _load(args)
    gamma = parse_curve(args.curve)
    if gamma.n != df.jet.nvars:
        raise DimensionMismatch(f"curve has {gamma.n} components, the input has {df.jet.nvars} variables")
    res = contact_order(df.jet, gamma)
    body = {"curve": gamma.encode(), "regularity": curve_regularity_check(gamma), **rp.contact_json(res)}
    _out(args, rp.document("contact", body))
    return EXIT_OK


def _gauss_map(coeffs: dict) -> list:
    return [{"exponent": rp.jsonable(k), "c": str(c)} for k, c in sorted(coeffs.items())]


def cmd_s_series(args) -> int:
    df = _load(args)
    F = split_model(df.jet, df.w_index)
    ext = extract_S(F)
    S = ext.series
    body = {
        "nvars": S.nvars,
        "truncation": S.truncation,
        "complete": S.tail == (),
        "coefficients": _gauss_map(S.coeffs),
        "mixed_order": rp.encode_value(ext.mixed_order),
    }
    findings = [{"kind": "radius", **rp.radius_json(radius_verdict(S))}]
    if args.compose:
        gh = parse_curve(args.compose, "z")
        comp = compose_S(S, gh)
        body["compose"] = rp._obj(curve=gh.encode(), coefficients=_gauss_map(comp.coeffs),
                                  valid_below=comp.bound)
        findings.append({"kind": "radius_along_curve", **rp.radius_json(radius_verdict(S, gh))})
    _out(args, rp.document("s_series", body, findings))
    return EXIT_OK


def _classify(args, levi: int) -> int:
    df = _load(args)
    rep = classify(df, budget=args.budget, seed=args.seed, levi_points=levi)
    doc = rp.report_document(rep)
    if levi and not support(df.jet).flat:
        doc = {**{k: v for k, v in doc.items() if k != "findings"}, "hull": rp.hull_json(hull(df.jet)),
               "findings": doc["findings"]}
    _out(args, doc)
    return EXIT_UNKNOWN if rep.has_unknowns() else EXIT_OK


def cmd_classify(args) -> int:
    return _classify(args, 0)


def cmd_analyze(args) -> int:
    return _classify(args, 3)


def cmd_corpus(args) -> int:
    ids = None if args.id is None else {args.id}
    if ids and not any(e.id == args.id for e in CORPUS):
        sys.stderr.write(f"unknown corpus id {args.id!r}\n")
        return EXIT_FAIL
    results = run_corpus(budget=args.budget, seed=args.seed, ids=ids)
    findings = []
    for res in results:
        findings.append({"kind": "entry", "id": res.entry.id, "title": res.entry.title,
                         "table": res.table, "expected": res.entry.expected,
                         "matches": res.matches, "sound": res.sound})
    passed = sum(r.passed for r in results)
    _out(args, rp.document("corpus", {"passed": passed, "total": len(results)}, findings))
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized search")
    common.add_argument("--trunc", type=int, default=None, help="truncation order T (overrides the file)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    common.set_defaults(pretty=False)

    p = argparse.ArgumentParser(prog="newtonflat", description="Newton polyhedra and contact orders of real hypersurfaces")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, file=True):
        s = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            s.add_argument("file", help="input expression file ('-' for stdin)")
        s.set_defaults(func=fn)
        return s

    s = add("analyze", cmd_analyze, "full pipeline with hull and Levi spot check")
    s.add_argument("--budget", type=int, default=10)
    add("hull", cmd_hull, "Newton polyhedron")
    add("faces", cmd_faces, "nondegeneracy verdict per compact face")
    s = add("type", cmd_type, "certified lower bound for the (regular) type")
    s.add_argument("--max-degree", type=int, default=8)
    s.add_argument("--regular", action="store_true")
    s = add("curve-ord", cmd_curve_ord, "contact order along a curve")
    s.add_argument("--curve", required=True, help='e.g. "(t^2, t^3, -t^16) valid 40"')
    s = add("s-series", cmd_s_series, "pure-term series of a model-form input")
    s.add_argument("--compose", default=None, help="z-curve to compose with")
    s = add("classify", cmd_classify, "verdicts for the eight conditions")
    s.add_argument("--budget", type=int, default=10)
    s = add("corpus", cmd_corpus, "run the built-in example corpus", file=False)
    s.add_argument("--id", default=None)
    s.add_argument("--budget", type=int, default=10)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PARSE_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except NotModelForm as exc:
        sys.stderr.write(f"error: not in model form: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
