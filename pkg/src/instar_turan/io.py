"""Arc-list files and JSON report documents.

Arc-list format::

    # comment lines start with '#'
    n m
    u v        (m lines, 0-based)
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema

from .errors import (
    AntiParallel,
    CountMismatch,
    DuplicateArc,
    LoopArc,
    ParseError,
    SchemaError,
    VertexOutOfRange,
)
from .graph import OrientedGraph

SCHEMA_NAME = "instar-turan/report"
SCHEMA_VERSION = 1

# -- arc lists ----------------------------------------------------------------------


def _tokens(line):
    """``(column, token)`` pairs, columns 1-based."""
    out, col = [], 0
    for tok in line.split():
        col = line.index(tok, col)
        out.append((col + 1, tok))
        col += len(tok)
    return out


def _int_token(tok, lineno, col):
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line=lineno, column=col) from None
    if value < 0:
        raise ParseError(f"expected a non-negative integer, got {tok!r}", line=lineno, column=col)
    return value


def parse_arclist(text):
    """Parse an arc-list document; errors carry the offending line and column."""
    header = None
    arcs = []
    seen = set()
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = _tokens(raw)
        if len(toks) != 2:
            col = toks[2][0] if len(toks) > 2 else len(raw) + 1
            what = "header 'n m'" if header is None else "arc 'u v'"
            raise ParseError(f"expected {what}, got {len(toks)} token(s)", line=lineno, column=col)
        (c1, t1), (c2, t2) = toks
        a, b = _int_token(t1, lineno, c1), _int_token(t2, lineno, c2)
        if header is None:
            header = (a, b)
            continue
        n, m = header
        for value, col in ((a, c1), (b, c2)):
            if value >= n:
                raise VertexOutOfRange(f"vertex {value} not in 0..{n - 1}", line=lineno, column=col)
        if a == b:
            raise LoopArc(f"loop arc ({a},{b})", line=lineno, column=c1)
        if (a, b) in seen:
            raise DuplicateArc(f"duplicate arc ({a},{b})", line=lineno, column=c1)
        if (b, a) in seen:
            raise AntiParallel(f"arcs ({a},{b}) and ({b},{a}) are anti-parallel", line=lineno, column=c1)
        if len(arcs) == m:
            raise CountMismatch(f"header announces {m} arcs, found more", line=lineno, column=c1)
        seen.add((a, b))
        arcs.append((a, b))
    if header is None:
        raise ParseError("missing header 'n m'", line=max(lineno, 1), column=1)
    if len(arcs) != header[1]:
        raise CountMismatch(f"header announces {header[1]} arcs, found {len(arcs)}", line=max(lineno, 1))
    return OrientedGraph(header[0], arcs)


def serialize_arclist(g):
    lines = [f"{g.n} {g.num_arcs}"]
    lines += [f"{u} {v}" for u, v in g.arcs]
    return "\n".join(lines) + "\n"


def read_arclist(path):
    with open(path, encoding="utf-8") as fh:
        return parse_arclist(fh.read())


def write_arclist(g, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_arclist(g))


# -- reports -----------------------------------------------------------------------

_INT = {"type": "integer"}
_GRAPH = {
    "type": "object",
    "required": ["n", "arcs"],
    "properties": {
        "n": _INT,
        "arcs": {"type": "array", "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}},
    },
}

RESULT_SCHEMAS = {
    "turan": {
        "type": "object",
        "required": ["n", "k", "value", "kind", "witness", "extremal_codes", "stats", "flags"],
        "properties": {
            "n": _INT,
            "k": _INT,
            "value": _INT,
            "kind": {"enum": ["exact", "lower-bound-evidence"]},
            "witness": _GRAPH,
            "extremal_codes": {"type": "array", "items": {"type": "string"}},
            "stats": {"type": "object"},
            "flags": {"type": "array", "items": {"type": "string"}},
        },
    },
    "verify": {
        "type": "object",
        "required": ["check", "instances", "hits", "violations", "passed", "evidence_only"],
        "properties": {
            "check": {"type": "string"},
            "instances": _INT,
            "hits": _INT,
            "violations": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["graph", "vertex", "detail"],
                    "properties": {"graph": {"type": "string"}, "vertex": _INT, "detail": {"type": "string"}},
                },
            },
            "passed": {"type": "boolean"},
            "evidence_only": {"type": "boolean"},
            "details": {"type": "object"},
        },
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "schema_version", "task", "parameters", "seed", "tool_version", "results", "timing"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_NAME},
        "schema_version": {"const": SCHEMA_VERSION},
        "task": {"type": "string"},
        "parameters": {"type": "object"},
        "seed": {"type": ["integer", "null"]},
        "tool_version": {"type": "string"},
        "results": {"type": "object"},
        "timing": {"type": ["object", "null"], "additionalProperties": _INT},
    },
}


def _reject_floats(value, path=()):
    if isinstance(value, float):
        raise SchemaError("floating-point values are not allowed", path)
    if isinstance(value, dict):
        for key, item in value.items():
            if not isinstance(key, str):
                raise SchemaError(f"non-string key {key!r}", path)
            _reject_floats(item, path + (key,))
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _reject_floats(item, path + (i,))


def _validate(instance, schema, prefix=()):
    try:
        jsonschema.validate(instance, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message, prefix + tuple(exc.absolute_path)) from None


def validate_report(doc):
    """Raise ``SchemaError`` (with the field path) unless ``doc`` is a valid report."""
    _reject_floats(doc)
    _validate(doc, REPORT_SCHEMA)
    schema = RESULT_SCHEMAS.get(doc["task"])
    if schema is not None:
        _validate(doc["results"], schema, ("results",))


@dataclass
class ReportDocument:
    task: str
    parameters: dict
    seed: int | None
    tool_version: str
    results: dict
    timing: dict | None = None

    def to_dict(self):
        return {
            "schema": SCHEMA_NAME,
            "schema_version": SCHEMA_VERSION,
            "task": self.task,
            "parameters": self.parameters,
            "seed": self.seed,
            "tool_version": self.tool_version,
            "results": self.results,
            "timing": self.timing,
        }

    @classmethod
    def from_dict(cls, doc):
        validate_report(doc)
        return cls(doc["task"], doc["parameters"], doc["seed"], doc["tool_version"], doc["results"], doc["timing"])


def emit_report(report):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    doc = report.to_dict() if isinstance(report, ReportDocument) else report
    validate_report(doc)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_report(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError("report must be a JSON object")
    return ReportDocument.from_dict(doc)
