"""Reading and writing algebra files.

An algebra file is a JSON object::

    {
      "format": 1,
      "name": "heisenberg",
      "kind": "lie",
      "dim": 3,
      "ops": {"bracket": [[["0", "0", "0"], ...], ...]},
      "maps": {"R": [["1", "0", "0"], ...]},
      "forms": {"B": [...]},
      "tensors": {"r": [...]},
      "provenance": "free text"
    }

Scalars are strings ``"p/q"`` (integers may also be written as JSON
integers).  ``ops[name][i][j][k]`` is the coefficient of ``e_k`` in
``e_i op e_j``; maps store images as columns; ``forms[name][a][b]`` is
``B(e_a, e_b)``; ``tensors[name][i][j]`` is the coefficient of ``e_i (x) e_j``.
Unknown fields are rejected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from . import scalar
from .core import KIND_OPS, KINDS, AlgebraError, BilinearForm, LinearMap, MultiAlgebra

FORMAT_VERSION = 1
FIELDS = {"format", "name", "kind", "dim", "ops", "maps", "forms", "tensors", "provenance"}
REQUIRED = {"format", "kind", "dim", "ops"}


class FormatError(AlgebraError):
    """Malformed algebra file; the message names the offending field."""


@dataclass(frozen=True)
class AlgebraFile:
    algebra: MultiAlgebra
    name: str = ""
    maps: Mapping[str, LinearMap] = field(default_factory=dict)
    forms: Mapping[str, BilinearForm] = field(default_factory=dict)
    tensors: Mapping[str, np.ndarray] = field(default_factory=dict)
    provenance: str = ""


def _array(value: Any, shape: tuple[int, ...], where: str) -> np.ndarray:
    try:
        raw = np.array(value, dtype=object)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"{where}: ragged or invalid array ({exc})") from None
    if 0 in shape:
        if raw.size != 0:
            raise FormatError(f"{where}: expected an empty array")
        return scalar.zeros(shape)
    if raw.shape != shape:
        raise FormatError(f"{where}: expected shape {shape}, got {raw.shape}")
    out = np.empty(shape, dtype=object)
    for idx, v in np.ndenumerate(raw):
        try:
            out[idx] = scalar.parse_scalar(v)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            pos = "][".join(str(i) for i in idx)
            raise FormatError(f"{where}[{pos}]: {exc}") from None
    return out


def from_dict(data: Mapping[str, Any]) -> AlgebraFile:
    if not isinstance(data, Mapping):
        raise FormatError("top level must be an object")
    unknown = set(data) - FIELDS
    if unknown:
        raise FormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = REQUIRED - set(data)
    if missing:
        raise FormatError(f"missing field(s): {', '.join(sorted(missing))}")
    if data["format"] != FORMAT_VERSION:
        raise FormatError(f"format: unsupported version {data['format']!r}")
    kind = data["kind"]
    if kind not in KINDS:
        raise FormatError(f"kind: unknown kind {kind!r}")
    n = data["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("dim: must be a non-negative integer")
    ops_raw = data["ops"]
    if not isinstance(ops_raw, Mapping):
        raise FormatError("ops: must be an object")
    if kind != "raw" and set(ops_raw) != set(KIND_OPS[kind]):
        raise FormatError(f"ops: kind {kind!r} needs {list(KIND_OPS[kind])}, got {sorted(ops_raw)}")
    ops = {name: _array(v, (n, n, n), f"ops.{name}") for name, v in ops_raw.items()}
    alg = MultiAlgebra(n, ops, kind)

    def section(key, shape, build):
        raw = data.get(key, {})
        if not isinstance(raw, Mapping):
            raise FormatError(f"{key}: must be an object")
        return {name: build(_array(v, shape(v), f"{key}.{name}")) for name, v in raw.items()}

    def map_shape(v):
        rows = len(v)
        cols = len(v[0]) if rows else 0
        return (rows, cols)

    maps = section("maps", map_shape, LinearMap)
    forms = section("forms", lambda v: (n, n), BilinearForm)
    tensors = section("tensors", lambda v: (n, n), lambda a: a)
    name = data.get("name", "")
    prov = data.get("provenance", "")
    if not isinstance(name, str) or not isinstance(prov, str):
        raise FormatError("name and provenance must be strings")
    return AlgebraFile(alg, name, maps, forms, tensors, prov)


def to_dict(f: AlgebraFile) -> dict:
    """Serializable form; operations follow the canonical order of the kind
    (alphabetical for raw algebras)."""
    alg = f.algebra
    names = KIND_OPS[alg.kind] if alg.kind != "raw" else tuple(sorted(alg.ops))
    out: dict[str, Any] = {"format": FORMAT_VERSION}
    if f.name:
        out["name"] = f.name
    out["kind"] = alg.kind
    out["dim"] = alg.dim
    out["ops"] = {k: scalar.to_nested(alg.op(k).coeffs) for k in names}
    if f.maps:
        out["maps"] = {k: scalar.to_nested(m.matrix) for k, m in sorted(f.maps.items())}
    if f.forms:
        out["forms"] = {k: scalar.to_nested(b.matrix) for k, b in sorted(f.forms.items())}
    if f.tensors:
        out["tensors"] = {k: scalar.to_nested(t) for k, t in sorted(f.tensors.items())}
    if f.provenance:
        out["provenance"] = f.provenance
    return out


def loads(text: str) -> AlgebraFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def dumps(f: AlgebraFile) -> str:
    return json.dumps(to_dict(f), indent=1) + "\n"


def load(path: str | Path) -> AlgebraFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{p}: {exc.strerror}") from None
    try:
        return loads(text)
    except FormatError as exc:
        raise FormatError(f"{p}: {exc}") from None


def dump(f: AlgebraFile, path: str | Path) -> None:
    Path(path).write_text(dumps(f), encoding="utf-8")


def wrap(alg: MultiAlgebra, name: str = "", provenance: str = "", **extra) -> AlgebraFile:
    return AlgebraFile(alg, name, extra.get("maps", {}), extra.get("forms", {}),
                       extra.get("tensors", {}), provenance)
