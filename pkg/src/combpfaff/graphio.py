"""Graph files: one JSON object per file, in one of three kinds.

``digraph``
    ``vertices``, ``edges`` as ``{"id", "tail", "head"}``.
``undirected-boundary``
    ``vertices``, ``edges`` as ``{"id", "ends": [u, v]}``, ordered ``boundary``.
``planar-circular``
    a digraph plus ordered ``boundary`` (clockwise), ``sources``, ``sinks`` and
    ``rotation``: interior vertex -> incident edge ids, counterclockwise.

Every kind accepts ``weights`` (edge id -> number) to replace the formal
variable of an edge, plus free-form ``name``, ``description`` and ``coords``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .digraph import Digraph
from .errors import CombPfaffError, ParseError, ValidationError
from .flows import PlanarCircularNetwork
from .groves import GraphWithBoundary

_ID = {"type": "string", "minLength": 1}
_IDS = {"type": "array", "items": _ID}
_NUMBER = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
_COMMON = {
    "kind": {"enum": ["digraph", "undirected-boundary", "planar-circular"]},
    "name": {"type": "string"},
    "description": {"type": "string"},
    "vertices": _IDS,
    "weights": {"type": "object", "additionalProperties": _NUMBER},
    "coords": {"type": "object", "additionalProperties": {"type": "array", "items": {"type": "number"},
                                                          "minItems": 2, "maxItems": 2}},
}
_DIRECTED_EDGE = {"type": "object", "required": ["id", "tail", "head"], "additionalProperties": False,
                  "properties": {"id": {"type": "string", "pattern": r"^[A-Za-z_][\w.]*$"},
                                 "tail": _ID, "head": _ID}}
_UNDIRECTED_EDGE = {"type": "object", "required": ["id", "ends"], "additionalProperties": False,
                    "properties": {"id": {"type": "string", "pattern": r"^[A-Za-z_][\w.]*$"},
                                   "ends": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2}}}


def _kind_schema(edge, extra_required=(), extra=None):
    props = dict(_COMMON)
    props["edges"] = {"type": "array", "items": edge}
    props.update(extra or {})
    return {"type": "object", "required": ["kind", "vertices", "edges", *extra_required],
            "additionalProperties": False, "properties": props}


GRAPH_SCHEMAS = {
    "digraph": _kind_schema(_DIRECTED_EDGE),
    "undirected-boundary": _kind_schema(_UNDIRECTED_EDGE, ["boundary"], {"boundary": _IDS}),
    "planar-circular": _kind_schema(
        _DIRECTED_EDGE, ["boundary", "sources", "sinks", "rotation"],
        {"boundary": _IDS, "sources": _IDS, "sinks": _IDS,
         "rotation": {"type": "object", "additionalProperties": _IDS}}),
}


def _weights(doc):
    return {k: Fraction(v) if isinstance(v, str) else v for k, v in doc.get("weights", {}).items()}


def parse_graph(text, source="<string>"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be a JSON object")
    kind = doc.get("kind")
    if kind not in GRAPH_SCHEMAS:
        raise ParseError(f"{source}: field 'kind' must be one of {sorted(GRAPH_SCHEMAS)}, got {kind!r}")
    errors = sorted(jsonschema.Draft202012Validator(GRAPH_SCHEMAS[kind]).iter_errors(doc),
                    key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        field = "/".join(str(p) for p in err.absolute_path) or "(top level)"
        raise ParseError(f"{source}: field {field}: {err.message}")
    return build_graph(doc)


def build_graph(doc):
    """Turn a schema-valid document into a graph object, raising ValidationError."""
    kind = doc["kind"]
    weights = _weights(doc)
    unknown = sorted(set(weights) - {e["id"] for e in doc["edges"]})
    if unknown:
        raise ValidationError([f"weight given for unknown edge {u}" for u in unknown])
    try:
        if kind == "undirected-boundary":
            edges = [(e["id"], e["ends"][0], e["ends"][1]) for e in doc["edges"]]
            return GraphWithBoundary(doc["vertices"], doc["boundary"], edges, weights)
        digraph = Digraph(doc["vertices"], [(e["id"], e["tail"], e["head"]) for e in doc["edges"]], weights)
        if kind == "digraph":
            return digraph
        return PlanarCircularNetwork(digraph, doc["boundary"], doc["sources"], doc["sinks"], doc["rotation"])
    except ValidationError:
        raise
    except (CombPfaffError, ValueError, KeyError) as exc:
        raise ValidationError([str(exc).strip("'\"")]) from None


def load_graph(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return parse_graph(text, str(path))


def fixture_path(name):
    """Path of a bundled fixture such as ``"fig1"`` or ``"fig1.json"``."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("combpfaff") / "fixtures" / name))


def load_fixture(name):
    return load_graph(fixture_path(name))


def list_fixtures():
    return sorted(p.stem for p in Path(str(resources.files("combpfaff") / "fixtures")).glob("*.json"))
