"""JSON input formats, validated with JSON Schema.

Every document may carry a ``"schema"`` field naming its format and
version; any other unknown field is rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .alexandroff import FiniteSpace, specialization_order, to_space
from .errors import InputError
from .order import FiniteProset, MonotoneMap, transitive_closure
from .rational_toy import ParametricFamily
from .rational_toy import family_from_json as build_family
from .stratify import Decomposition

_LABEL = {"type": "string", "minLength": 1}
_LABELS = {"type": "array", "items": _LABEL}
_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*-?\d+)?\s*$"}]}

POSET = {
    "type": "object",
    "properties": {
        "schema": {"const": "stratos/poset@1"},
        "elements": _LABELS,
        "relations": {"type": "array", "items": {"type": "array", "items": _LABEL, "minItems": 2, "maxItems": 2}},
    },
    "required": ["elements"],
    "additionalProperties": False,
}

SPACE = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"schema": {"const": "stratos/space@1"}, "poset": POSET},
            "required": ["poset"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "schema": {"const": "stratos/space@1"},
                "points": _LABELS,
                "opens": {"type": "array", "items": _LABELS},
            },
            "required": ["points", "opens"],
            "additionalProperties": False,
        },
        POSET,
    ]
}

DECOMPOSITION = {
    "type": "object",
    "properties": {
        "schema": {"const": "stratos/decomposition@1"},
        "space": SPACE,
        "pieces": {"type": "object", "additionalProperties": _LABELS},
    },
    "required": ["space", "pieces"],
    "additionalProperties": False,
}

MAP = {
    "type": "object",
    "properties": {
        "schema": {"const": "stratos/map@1"},
        "source": SPACE,
        "target": SPACE,
        "map": {"type": "object", "additionalProperties": _LABEL},
        "basepoint": _LABEL,
    },
    "required": ["source", "target", "map"],
    "additionalProperties": False,
}

_LAW = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "source": {"type": "integer", "minimum": 0},
            "exponents": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
        "required": ["source", "exponents"],
        "additionalProperties": False,
    },
}

FAMILY = {
    "type": "object",
    "properties": {
        "schema": {"const": "stratos/rational-family@1"},
        "dim": {"type": "integer", "minimum": 1},
        "right_law": _LAW,
        "left_law": _LAW,
        "representatives": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"name": _LABEL, "point": {"type": "array", "items": _RATIONAL}},
                "required": ["name", "point"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["dim", "right_law"],
    "additionalProperties": False,
}

SCHEMAS = {"poset": POSET, "space": SPACE, "decomposition": DECOMPOSITION, "map": MAP, "family": FAMILY}


def read_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", witness={"path": str(path)}) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc.msg}", witness={"line": exc.lineno, "column": exc.colno}) from None


def validate(data, kind: str) -> None:
    schema = SCHEMAS[kind]
    errors = sorted(jsonschema.Draft7Validator(schema).iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise InputError(
            f"{kind} document does not match its schema: {err.message}",
            witness={"path": [str(p) for p in err.absolute_path]},
        )


def poset_from_json(data) -> FiniteProset:
    validate(data, "poset")
    return transitive_closure(data["elements"], data.get("relations", []))


def space_from_json(data) -> FiniteSpace:
    validate(data, "space")
    if "points" in data:
        return FiniteSpace.from_opens(data["points"], data["opens"])
    inner = data.get("poset", data)
    return to_space(transitive_closure(inner["elements"], inner.get("relations", [])))


def proset_from_json(data) -> FiniteProset:
    """A space document read as its specialization preorder."""
    validate(data, "space")
    if "points" in data:
        return specialization_order(space_from_json(data))
    inner = data.get("poset", data)
    return transitive_closure(inner["elements"], inner.get("relations", []))


def decomposition_from_json(data) -> Decomposition:
    validate(data, "decomposition")
    return Decomposition.from_labels(space_from_json(data["space"]), data["pieces"])


def map_from_json(data) -> tuple[MonotoneMap, str | None]:
    validate(data, "map")
    source = proset_from_json(data["source"])
    target = proset_from_json(data["target"])
    return MonotoneMap.from_labels(source, target, data["map"]), data.get("basepoint")


def family_from_json(data) -> ParametricFamily:
    validate(data, "family")
    return build_family(data)


def load(path, kind: str):
    data = read_json(path)
    loaders = {
        "poset": poset_from_json,
        "space": space_from_json,
        "proset": proset_from_json,
        "decomposition": decomposition_from_json,
        "map": map_from_json,
        "family": family_from_json,
    }
    return loaders[kind](data)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
