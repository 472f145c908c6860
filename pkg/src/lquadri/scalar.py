"""Exact rational scalars and object-array helpers.

Every scalar is a :class:`fractions.Fraction`; arrays are numpy arrays of
dtype ``object`` holding Fractions, so einsum/tensordot stay exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(value: Any) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction.

    Floats are rejected: a verification path must never see one.
    """
    if isinstance(value, bool):
        raise TypeError(f"not a rational scalar: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational string: {value!r}")
        return Fraction(text)
    raise TypeError(f"not a rational scalar: {value!r}")


def format_scalar(value: Any) -> str:
    q = Fraction(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_array(data: Any, shape: tuple[int, ...] | None = None) -> np.ndarray:
    """Convert nested sequences (or an array) to an object array of Fractions."""
    if isinstance(data, np.ndarray) and data.dtype == object:
        arr = data
    else:
        arr = np.array(data, dtype=object)
    if shape is not None:
        if arr.size == 0 and 0 in shape:
            arr = np.empty(shape, dtype=object)
        if arr.shape != shape:
            raise ValueError(f"expected shape {shape}, got {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for i, v in enumerate(flat_in):
        flat_out[i] = parse_scalar(v)
    return out


def zeros(shape: tuple[int, ...]) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = ONE
    return out


def normalize(arr: np.ndarray) -> np.ndarray:
    """Coerce every entry back to Fraction (einsum over empty axes yields int 0)."""
    out = np.empty(arr.shape, dtype=object)
    flat_out = out.reshape(-1)
    for i, v in enumerate(np.asarray(arr, dtype=object).reshape(-1)):
        flat_out[i] = Fraction(v)
    return out


def is_zero(arr: np.ndarray) -> bool:
    return all(v == 0 for v in np.asarray(arr, dtype=object).reshape(-1))


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(x == y for x, y in zip(a.reshape(-1), b.reshape(-1)))


def to_nested(arr: np.ndarray) -> Any:
    """Nested lists of ``"p/q"`` strings (the serialized form)."""
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return format_scalar(arr.item())
    return [to_nested(sub) for sub in arr]


def to_tuple(arr: np.ndarray) -> Any:
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return Fraction(arr.item())
    return tuple(to_tuple(sub) for sub in arr)


def vector(values: Iterable[Any]) -> np.ndarray:
    return as_array(list(values))


_INT64_SAFE = 2**62


def _integer_part(arr: np.ndarray) -> tuple[np.ndarray, int, int]:
    """Scale ``arr`` to integers: returns (object int array, denominator, max |entry|)."""
    flat = [Fraction(v) for v in np.asarray(arr, dtype=object).reshape(-1)]
    den = math.lcm(*(q.denominator for q in flat)) if flat else 1
    ints = [q.numerator * (den // q.denominator) for q in flat]
    out = np.empty(len(ints), dtype=object)
    out[:] = ints
    return out.reshape(np.shape(arr)), den, max((abs(v) for v in ints), default=0)


def einsum(subscripts: str, *operands: np.ndarray) -> np.ndarray:
    """Exact ``np.einsum`` over rational arrays.

    Denominators are cleared first; the integer contraction runs in int64
    whenever no intermediate can overflow, and with Python ints otherwise.
    """
    inputs, output = subscripts.replace(" ", "").split("->")
    labels = inputs.split(",")
    parts = [_integer_part(op) for op in operands]
    sizes: dict[str, int] = {}
    for lab, op in zip(labels, operands):
        sizes.update(zip(lab, np.shape(op)))
    summed = math.prod(sizes[c] for c in set("".join(labels)) - set(output))
    bound = summed * math.prod(p[2] for p in parts)
    den = math.prod(p[1] for p in parts)
    if bound < _INT64_SAFE:
        res = np.einsum(subscripts, *(p[0].astype(np.int64) for p in parts))
    else:
        res = np.einsum(subscripts, *(p[0] for p in parts))
    out = np.empty(np.shape(res), dtype=object)
    flat_out = out.reshape(-1)
    for i, v in enumerate(np.asarray(res).reshape(-1)):
        flat_out[i] = Fraction(int(v), den)
    return out


def integer_table(arrays: dict) -> tuple[dict, int]:
    """Scale a family of rational arrays by one common denominator.

    Returns integer arrays (int64 when small enough, Python ints otherwise)
    and the denominator.
    """
    parts = {k: _integer_part(v) for k, v in arrays.items()}
    den = math.lcm(*(p[1] for p in parts.values())) if parts else 1
    out = {}
    for k, (ints, d, m) in parts.items():
        scaled = ints * (den // d)
        out[k] = scaled.astype(np.int64) if m * (den // d) < _INT64_SAFE else scaled
    return out, den


def max_abs(arr: np.ndarray) -> int:
    return int(np.max(np.abs(arr))) if np.size(arr) else 0


def int_einsum(subscripts: str, *operands: np.ndarray) -> np.ndarray:
    """Integer einsum that falls back to Python ints when int64 could overflow."""
    inputs, output = subscripts.replace(" ", "").split("->")
    labels = inputs.split(",")
    sizes: dict[str, int] = {}
    for lab, op in zip(labels, operands):
        sizes.update(zip(lab, np.shape(op)))
    summed = math.prod(sizes[c] for c in set("".join(labels)) - set(output))
    bound = summed * math.prod(max_abs(op) for op in operands)
    if bound < _INT64_SAFE:
        return np.einsum(subscripts, *(np.asarray(op).astype(np.int64) for op in operands))
    return np.einsum(subscripts, *(np.asarray(op).astype(object) for op in operands))
