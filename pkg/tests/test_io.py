import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instar_turan.constructions import fixture
from instar_turan.errors import (
    AntiParallel,
    CountMismatch,
    DuplicateArc,
    LoopArc,
    ParseError,
    SchemaError,
    VertexOutOfRange,
)
from instar_turan.io import ReportDocument, emit_report, parse_arclist, parse_report, serialize_arclist
from instar_turan.search import SearchConfig, solve
from instar_turan.verify import random_oriented, verify_lemma


def test_parse_subdivision_fixture():
    assert parse_arclist("5 4\n3 0\n4 1\n0 2\n1 2\n") == fixture("subdiv:2")


def test_comments_and_blank_lines():
    g = parse_arclist("# header next\n3 2\n\n0 1\n  # inner comment\n1 2\n")
    assert g.arcs == ((0, 1), (1, 2))


@pytest.mark.parametrize(
    "text, exc, line, column",
    [
        ("2 2\n0 1\n1 0\n", AntiParallel, 3, 1),
        ("3 1\n1 1\n", LoopArc, 2, 1),
        ("3 2\n0 1\n0 1\n", DuplicateArc, 3, 1),
        ("3 1\n0  7\n", VertexOutOfRange, 2, 4),
        ("3 2\n0 1\n", CountMismatch, 2, None),
        ("3 1\n0 1\n1 2\n", CountMismatch, 3, 1),
        ("3 x\n", ParseError, 1, 3),
        ("3 1\n0 1 2\n", ParseError, 2, 5),
        ("# only a comment\n", ParseError, 1, 1),
        ("3 1\n-1 2\n", ParseError, 2, 1),
    ],
)
def test_parse_errors_carry_location(text, exc, line, column):
    with pytest.raises(exc) as info:
        parse_arclist(text)
    assert info.value.line == line
    assert info.value.column == column
    assert f"line {line}" in str(info.value)


def test_serialize_sorted():
    text = serialize_arclist(fixture("subdiv:2"))
    assert text == "5 4\n0 2\n1 2\n3 0\n4 1\n"


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 9), st.floats(0, 1), st.integers(0, 2**32))
def test_round_trip(n, p, seed):
    g = random_oriented(n, p, seed)
    text = serialize_arclist(g)
    assert parse_arclist(text) == g
    assert serialize_arclist(parse_arclist(text)) == text


def _turan_doc():
    res = solve(4, 2, SearchConfig())
    return ReportDocument("turan", {"n": 4, "k": 2}, None, "0.1.0", res.payload())


def test_emit_turan_report():
    text = emit_report(_turan_doc())
    doc = json.loads(text)
    assert doc["results"]["value"] == 6 and doc["results"]["kind"] == "exact"
    assert doc["schema_version"] == 1 and doc["timing"] is None
    assert text == emit_report(_turan_doc())
    assert text.endswith("}\n")
    assert list(doc) == sorted(doc)


def test_report_round_trip():
    doc = _turan_doc()
    assert parse_report(emit_report(doc)) == doc


def test_verify_report_with_violation():
    report = verify_lemma("2.2", [fixture("H1")])
    report.violations.append({"graph": serialize_arclist(fixture("H1")), "vertex": 5, "detail": "synthetic"})
    doc = ReportDocument("verify", {}, 1, "0.1.0", report.payload())
    parsed = json.loads(emit_report(doc))
    assert len(parsed["results"]["violations"]) == 1
    assert parsed["results"]["passed"] is False


def test_schema_errors_name_the_field():
    doc = _turan_doc()
    doc.results["value"] = 6.0
    with pytest.raises(SchemaError, match="results/value"):
        emit_report(doc)
    doc = _turan_doc()
    del doc.results["kind"]
    with pytest.raises(SchemaError, match="results"):
        emit_report(doc)
    doc = _turan_doc()
    doc.timing = {"elapsed_ms": "soon"}
    with pytest.raises(SchemaError, match="timing/elapsed_ms"):
        emit_report(doc)
    with pytest.raises(SchemaError):
        parse_report("[1, 2]")
    with pytest.raises(SchemaError):
        parse_report("{not json")
