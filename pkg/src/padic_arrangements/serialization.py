"""Versioned JSON documents for points, arrangements and reports."""

from __future__ import annotations

import json
from pathlib import Path

from .arrangements import Arrangement, FLAVORS
from .errors import ArrangementError, InvariantViolation, NotUnimodular, ParseError
from .projective import Hyperplane, ProjPoint, canonicalize

SCHEMA_PREFIX = "padic-arr"
SCHEMA_VERSION = 1


def schema_tag(kind: str) -> str:
    return f"{SCHEMA_PREFIX}/{kind}/v{SCHEMA_VERSION}"


def dumps(doc) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _check_schema(doc: dict, kind: str) -> None:
    tag = doc.get("schema")
    if tag is not None and tag != schema_tag(kind):
        raise ParseError(f"expected schema {schema_tag(kind)!r}, got {tag!r}")


def _int(doc: dict, key: str, minimum: int | None = None) -> int:
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"field {key!r} must be an integer")
    if minimum is not None and v < minimum:
        raise ParseError(f"field {key!r} must be >= {minimum}")
    return v


def _int_list(v, what: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise ParseError(f"{what} must be a list of integers")
    return v


# -- points ---------------------------------------------------------------------

def point_to_dict(z: ProjPoint) -> dict:
    return {"schema": schema_tag("point"), **z.as_dict()}


def hyperplane_to_dict(H: Hyperplane) -> dict:
    return {"schema": schema_tag("point"), **H.as_dict()}


def point_from_dict(doc: dict):
    if not isinstance(doc, dict):
        raise ParseError("a point document must be an object")
    _check_schema(doc, "point")
    p = _int(doc, "p", 2)
    n = _int(doc, "n", 1)
    coords = _int_list(doc.get("coords"), "coords")
    try:
        z = canonicalize(coords, p, n)
    except NotUnimodular as exc:
        raise InvariantViolation(str(exc)) from None
    if doc.get("role") == "dual":
        return Hyperplane(z)
    return z


# -- arrangements ---------------------------------------------------------------

def arrangement_to_dict(A: Arrangement) -> dict:
    return {"schema": schema_tag("arrangement"), **A.as_dict()}


def arrangement_from_dict(doc: dict) -> Arrangement:
    if not isinstance(doc, dict):
        raise ParseError("an arrangement document must be an object")
    _check_schema(doc, "arrangement")
    flavor = doc.get("flavor")
    if flavor not in FLAVORS:
        raise ParseError(f"flavor must be one of {FLAVORS}")
    p = _int(doc, "p", 2)
    order = None if flavor == "algebraic" else _int(doc, "order", 1)
    members = doc.get("members")
    if not isinstance(members, list) or not members:
        raise ParseError("members must be a nonempty list")
    vecs = [_int_list(m, "each member") for m in members]
    if len({len(v) for v in vecs}) != 1 or len(vecs[0]) < 2:
        raise ParseError("members must share a length of at least 2")
    try:
        return Arrangement.from_vectors(flavor, p, order, vecs)
    except NotUnimodular as exc:
        raise InvariantViolation(str(exc)) from None
    except InvariantViolation:
        raise
    except ArrangementError as exc:
        raise InvariantViolation(str(exc)) from None


def load_arrangement(path) -> Arrangement:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return arrangement_from_dict(doc)


def save_arrangement(A: Arrangement, path) -> None:
    Path(path).write_text(dumps(arrangement_to_dict(A)))


def parse_members(text: str) -> list[list[int]]:
    """Parse "1,0;1,4" into [[1, 0], [1, 4]]."""
    try:
        return [[int(x) for x in part.split(",")] for part in text.split(";") if part.strip()]
    except ValueError:
        raise ParseError(f"cannot parse member list {text!r}") from None


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"cannot parse integer list {text!r}") from None


__all__ = [
    "SCHEMA_VERSION",
    "schema_tag",
    "dumps",
    "point_to_dict",
    "hyperplane_to_dict",
    "point_from_dict",
    "arrangement_to_dict",
    "arrangement_from_dict",
    "load_arrangement",
    "save_arrangement",
    "parse_members",
    "parse_ints",
]
