import json
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from newtonflat.classify import ClassificationReport, classify
from newtonflat.corpus import entry, run_entry
from newtonflat.errors import ExprSyntaxError
from newtonflat.faces import DEGENERATE, SearchBudget, is_canonical
from newtonflat.parsing import parse
from newtonflat.report import (document, dumps, emit_report, encode_value, error_document, jsonable,
                               parse_document, report_document, verdict_json)
from newtonflat.values import AtLeast, Infinite

CUSP = "2*Re(w) + |z1^3 - z2^2|^2 + 2*Re(z1^8 + z1^9 + z1^10)"


def test_empty_report():
    assert emit_report(ClassificationReport()) == '{"schema":1,"kind":"classification","findings":[]}\n'


def test_rho1_field():
    doc = json.loads(emit_report(classify(parse("2*Re(w) + |z1|^6"), budget=6)))
    (f,) = [f for f in doc["findings"] if f["kind"] == "rho1"]
    assert f["rho1"] == {"value": 6}
    assert list(doc)[:2] == ["schema", "kind"] and list(doc)[-1] == "findings"


def test_degeneracy_witness_fields():
    _, verdicts = is_canonical(parse(CUSP).jet, SearchBudget())
    (v,) = [v for v in verdicts if v.status == DEGENERATE]
    rec = verdict_json(v)
    assert list(rec) == ["id", "weight", "groups", "verdict", "certificate", "witness", "seed"]
    assert rec["id"] == v.face_id and rec["weight"][:2] == [2, 3]
    assert rec["witness"][:2] == ["1", "1"] and rec["verdict"] == "degenerate"


def test_value_encodings():
    assert encode_value(6) == 6
    assert encode_value(Fraction(13, 2)) == "13/2"
    assert encode_value(Infinite()) == "inf"
    assert encode_value(Infinite(witnessed_to=12)) == {"inf_witnessed_to": 12}
    assert encode_value(AtLeast(13)) == {"at_least": 13}
    assert jsonable({"a": None, "b": (1, Fraction(1, 2))}) == {"b": [1, "1/2"]}


def test_documents():
    assert dumps(document("x")) == '{"schema":1,"kind":"x","findings":[]}\n'
    doc = parse_document(parse("2*Re(w) + |z1|^2"))
    assert list(doc) == ["schema", "kind", "variables", "nvars", "has_w", "truncation", "complete", "terms",
                         "printed", "findings"]
    err = error_document(ExprSyntaxError("unexpected ')'", 3, ("number",)))
    assert err["position"] == 3 and err["expected"] == ["number"]


def test_byte_stability():
    a = emit_report(run_entry(entry("4-not-3")).report)
    b = emit_report(run_entry(entry("4-not-3")).report)
    assert a == b
    assert json.loads(a)["table"] == "PUUPURRU"
    assert dumps(json.loads(a), pretty=True) == emit_report(run_entry(entry("4-not-3")).report, pretty=True)


@settings(max_examples=10)
@given(st.integers(0, 2**32))
def test_seed_recorded_and_output_deterministic(seed):
    df = parse("2*Re(w) + |z1*z2|^2 + |z1|^4")
    a = emit_report(classify(df, budget=4, seed=seed))
    assert a == emit_report(classify(df, budget=4, seed=seed))
    assert json.loads(a)["seed"] == seed


def test_report_document_fields():
    doc = report_document(classify(parse("# n=1 T=12\n2*Re(w) + 2*Re(z1^3)"), budget=4))
    assert doc["truncation"] == 12 and doc["complete"] is False
    assert doc["representation"].startswith("truncated jet")
    conds = [f for f in doc["findings"] if f["kind"] == "condition"]
    assert [c["index"] for c in conds] == list(range(1, 9))
    assert all(c["status"] == "Unknown" for c in conds)
