"""JSON map files and scalar literals.

Scalar literal: either a bare rational string ``"p"`` / ``"p/q"`` or an
object ``{"q": RAT, "s2": RAT, "s3": RAT, "s6": RAT}`` (absent keys are 0)
for ``q + s2*sqrt2 + s3*sqrt3 + s6*sqrt6``.  Output is canonical (reduced
fractions, fixed key order), so emit -> parse -> emit is byte-identical.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import QuadMapError
from .quadmap import QuadraticSphericalMap
from .scalar import EXACT, Backend, Surd, format_rational, parse_rational

__all__ = [
    "ParseError",
    "MapFile",
    "parse_scalar",
    "format_scalar",
    "load_map_file",
    "loads_map_file",
    "dumps_map",
    "dump_map",
    "dumps_map_file",
]

_SURD_KEYS = ("q", "s2", "s3", "s6")


class ParseError(QuadMapError, ValueError):
    pass


def parse_scalar(value: Any) -> Surd:
    if isinstance(value, str):
        try:
            return Surd(parse_rational(value))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if isinstance(value, dict):
        unknown = set(value) - set(_SURD_KEYS)
        if unknown:
            raise ParseError(f"unknown scalar keys {sorted(unknown)}")
        parts = []
        for key in _SURD_KEYS:
            raw = value.get(key, "0")
            if not isinstance(raw, str):
                raise ParseError(f"scalar component {key!r} must be a rational string")
            try:
                parts.append(parse_rational(raw))
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        return Surd(*parts)
    raise ParseError(f"scalar literal must be a string or an object, got {value!r}")


def format_scalar(value) -> str | dict:
    if isinstance(value, float):
        raise TypeError("float scalars have no exact literal; emit exact maps only")
    value = Surd.coerce(value)
    if value.is_rational():
        return format_rational(value.q)
    return {key: format_rational(c) for key, c in zip(_SURD_KEYS, value.components()) if c}


class MapFile:
    """Parsed contents of a map file, before (or without) validation."""

    def __init__(self, m: int, n: int, matrices: list, name: str | None = None,
                 description: str | None = None, radius_sq=None, rotation=None):
        self.m = m
        self.n = n
        self.matrices = matrices
        self.name = name
        self.description = description
        self.radius_sq = radius_sq
        self.rotation = rotation

    def to_map(self, backend: Backend = EXACT, validate: bool = True) -> QuadraticSphericalMap:
        conv = (lambda v: v) if backend.exact else float
        mats = [[[conv(v) for v in row] for row in a] for a in self.matrices]
        radius_sq = 1 if self.radius_sq is None else conv(self.radius_sq)
        return QuadraticSphericalMap(mats, backend, radius_sq=radius_sq, name=self.name,
                                     validate=validate)


def _square(rows: Any, size: int, what: str) -> list:
    if not isinstance(rows, list) or len(rows) != size:
        raise ParseError(f"{what} must have {size} rows")
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise ParseError(f"{what} row {r} must have {size} entries")
        out.append([parse_scalar(v) for v in row])
    return out


def loads_map_file(text: str) -> MapFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("map file must be a JSON object")
    for key in ("m", "n", "matrices"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    m, n = doc["m"], doc["n"]
    if not (isinstance(m, int) and isinstance(n, int)) or isinstance(m, bool) or m < 1 or n < 1:
        raise ParseError("m and n must be positive integers")
    mats = doc["matrices"]
    if not isinstance(mats, list) or len(mats) != n + 1:
        raise ParseError(f"expected {n + 1} matrices, found "
                         f"{len(mats) if isinstance(mats, list) else 'none'}")
    matrices = [_square(a, m + 1, f"matrix {k + 1}") for k, a in enumerate(mats)]
    meta = doc.get("metadata") or {}
    if not isinstance(meta, dict):
        raise ParseError("metadata must be an object")
    radius_sq = parse_scalar(doc["radius_sq"]) if "radius_sq" in doc else None
    rotation = _square(doc["rotation"], n + 2, "rotation") if "rotation" in doc else None
    return MapFile(m, n, matrices, meta.get("name"), meta.get("description"), radius_sq, rotation)


def load_map_file(path) -> MapFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads_map_file(text)


def _matrix_doc(a) -> list:
    return [[format_scalar(v) for v in row] for row in a]


def dumps_map(qmap: QuadraticSphericalMap, description: str | None = None,
              rotation=None) -> str:
    doc: dict[str, Any] = {"m": qmap.m, "n": qmap.n,
                           "matrices": [_matrix_doc(a) for a in qmap.matrices]}
    if qmap.radius_sq != 1:
        doc["radius_sq"] = format_scalar(qmap.radius_sq)
    if rotation is not None:
        doc["rotation"] = _matrix_doc(rotation)
    meta = {}
    if qmap.name:
        meta["name"] = qmap.name
    if description:
        meta["description"] = description
    if meta:
        doc["metadata"] = meta
    return _canonical_json(doc)


def _matrix_block(a, indent: int) -> str:
    pad = " " * indent
    rows = ",\n".join(f"{pad}  {json.dumps(row, ensure_ascii=False)}" for row in a)
    return f"[\n{rows}\n{pad}]"


def _canonical_json(doc: dict) -> str:
    """Two-space indented JSON with one matrix row per line."""
    lines = []
    for key, value in doc.items():
        if key == "matrices":
            inner = ",\n".join(f"    {_matrix_block(a, 4)}" for a in value)
            body = f"[\n{inner}\n  ]"
        elif key == "rotation":
            body = _matrix_block(value, 2)
        elif isinstance(value, dict):
            body = json.dumps(value, ensure_ascii=False, indent=2).replace("\n", "\n  ")
        else:
            body = json.dumps(value, ensure_ascii=False)
        lines.append(f"  {json.dumps(key)}: {body}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def dumps_map_file(mf: MapFile) -> str:
    qmap = mf.to_map(validate=False)
    return dumps_map(qmap, mf.description, mf.rotation)


def dump_map(qmap: QuadraticSphericalMap, path, description: str | None = None,
             rotation=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_map(qmap, description, rotation))
