"""Structure-constant tensors, multi-operation algebras, linear maps and forms.

Indexing is 0-based throughout: ``c[i, j, k]`` is the coefficient of
``e_k`` in ``e_i op e_j``.  A linear map is a matrix acting on column
vectors (column ``j`` is the image of ``e_j``); a bilinear form is its Gram
matrix ``G[a, b] = B(e_a, e_b)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
import sympy

from . import scalar
from .scalar import ZERO

#: canonical operation names per structure class
KIND_OPS: dict[str, tuple[str, ...]] = {
    "lie": ("bracket",),
    "prelie": ("circ",),
    "associative": ("circ",),
    "dendriform": ("tri_r", "tri_l"),
    "l-dendriform": ("tri_r", "tri_l"),
    "quadri": ("se", "ne", "nw", "sw"),
    "l-quadri": ("se", "ne", "nw", "sw"),
    "octo": ("se1", "se2", "ne1", "ne2", "nw1", "nw2", "sw1", "sw2"),
    "l-octo": ("se1", "se2", "ne1", "ne2", "nw1", "nw2", "sw1", "sw2"),
}
KINDS = tuple(KIND_OPS) + ("raw",)

#: strong form -> its left-symmetric counterpart
STRONG_TO_L = {
    "associative": "prelie",
    "dendriform": "l-dendriform",
    "quadri": "l-quadri",
    "octo": "l-octo",
}


class AlgebraError(ValueError):
    """Malformed algebra data or an operation applied to the wrong shape."""


class OpTensor:
    """Immutable ``n x n x n`` array of exact structure constants."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        arr = scalar.as_array(coeffs)
        if arr.ndim != 3 or not (arr.shape[0] == arr.shape[1] == arr.shape[2]):
            raise AlgebraError(f"structure constants must be n x n x n, got {arr.shape}")
        arr.flags.writeable = False
        self._c = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "OpTensor":
        obj = cls.__new__(cls)
        arr = scalar.normalize(arr)
        arr.flags.writeable = False
        obj._c = arr
        return obj

    @classmethod
    def zero(cls, n: int) -> "OpTensor":
        return cls._wrap(scalar.zeros((n, n, n)))

    @classmethod
    def sparse(cls, n: int, entries: Mapping[tuple[int, int, int], object]) -> "OpTensor":
        arr = scalar.zeros((n, n, n))
        for (i, j, k), v in entries.items():
            arr[i, j, k] = scalar.parse_scalar(v)
        return cls._wrap(arr)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def dim(self) -> int:
        return self._c.shape[0]

    def __getitem__(self, idx):
        return self._c[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OpTensor):
            return NotImplemented
        return scalar.equal(self._c, other._c)

    def __hash__(self):
        return hash(scalar.to_tuple(self._c))

    def __add__(self, other: "OpTensor") -> "OpTensor":
        return OpTensor._wrap(self._c + other._c)

    def __sub__(self, other: "OpTensor") -> "OpTensor":
        return OpTensor._wrap(self._c - other._c)

    def __neg__(self) -> "OpTensor":
        return OpTensor._wrap(-self._c)

    def __rmul__(self, k) -> "OpTensor":
        return OpTensor._wrap(self._c * scalar.parse_scalar(k))

    def is_zero(self) -> bool:
        return scalar.is_zero(self._c)

    def __repr__(self) -> str:
        nz = {(i, j, k): str(v) for (i, j, k), v in np.ndenumerate(self._c) if v != 0}
        return f"OpTensor(dim={self.dim}, nonzero={nz})"


def opposite(t: OpTensor) -> OpTensor:
    """Tensor of ``(x, y) -> t(y, x)``."""
    return OpTensor._wrap(t.coeffs.transpose(1, 0, 2))


# -- recipes -----------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    coeff: Fraction
    op: str
    swapped: bool = False


Recipe = tuple[Term, ...]

_RECIPE_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(swap\(\s*(\w+)\s*\)|(\w+))\s*"
)


def parse_recipe(text: str) -> Recipe:
    """Parse ``"se + ne - swap(nw)"`` or ``"2*se - 1/2*swap(sw)"``."""
    pos = 0
    terms = []
    text = text.strip()
    while pos < len(text):
        m = _RECIPE_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise AlgebraError(f"cannot parse recipe {text!r} at offset {pos}")
        if terms and m.group(1) is None:
            raise AlgebraError(f"missing sign in recipe {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(4):
            terms.append(Term(sign * coeff, m.group(4), True))
        else:
            terms.append(Term(sign * coeff, m.group(5), False))
        pos = m.end()
    if not terms:
        raise AlgebraError("empty recipe")
    return tuple(terms)


def as_recipe(recipe: "str | Recipe | Iterable[tuple]") -> Recipe:
    if isinstance(recipe, str):
        return parse_recipe(recipe)
    out = []
    for t in recipe:
        if isinstance(t, Term):
            out.append(t)
        else:
            sign, op, order = t
            coeff = scalar.parse_scalar(sign) if not isinstance(sign, str) else Fraction(f"{sign}1")
            out.append(Term(coeff, op, order in (True, "swapped", "swap")))
    return tuple(out)


def combine_ops(ops: "MultiAlgebra | Mapping[str, OpTensor]", recipe) -> OpTensor:
    """Structure constants of a formal linear combination of operations.

    ``combine_ops(A, "se - swap(nw)")`` is ``x se y - y nw x``.
    """
    table = ops.ops if isinstance(ops, MultiAlgebra) else ops
    terms = as_recipe(recipe)
    acc = None
    for term in terms:
        if term.op not in table:
            raise AlgebraError(f"unknown operation {term.op!r}")
        t = table[term.op].coeffs
        if term.swapped:
            t = t.transpose(1, 0, 2)
        part = t * term.coeff
        acc = part if acc is None else acc + part
    return OpTensor._wrap(acc)


# -- algebras ------------------------------------------------------------------

class MultiAlgebra:
    """A finite-dimensional space with a named family of bilinear operations.

    ``kind`` is a claim about the structure class, not a certificate; use
    :func:`lquadri.axioms.verify_kind` to decide it.
    """

    __slots__ = ("_dim", "_ops", "_kind")

    def __init__(self, dim: int, ops: Mapping[str, object], kind: str = "raw"):
        if dim < 0:
            raise AlgebraError("dimension must be non-negative")
        if kind not in KINDS:
            raise AlgebraError(f"unknown kind {kind!r}")
        tensors = {}
        for name, t in ops.items():
            t = t if isinstance(t, OpTensor) else OpTensor(t) if dim else OpTensor.zero(0)
            if t.dim != dim:
                raise AlgebraError(f"operation {name!r} has dim {t.dim}, algebra has {dim}")
            tensors[name] = t
        if kind != "raw":
            expected = KIND_OPS[kind]
            if set(tensors) != set(expected):
                raise AlgebraError(
                    f"kind {kind!r} needs operations {list(expected)}, got {sorted(tensors)}"
                )
            tensors = {name: tensors[name] for name in expected}
        self._dim = dim
        self._ops = tensors
        self._kind = kind

    @classmethod
    def zero(cls, kind: str, dim: int) -> "MultiAlgebra":
        return cls(dim, {name: OpTensor.zero(dim) for name in KIND_OPS[kind]}, kind)

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def ops(self) -> Mapping[str, OpTensor]:
        return dict(self._ops)

    @property
    def arity(self) -> int:
        return len(self._ops)

    def op(self, name: str) -> OpTensor:
        try:
            return self._ops[name]
        except KeyError:
            raise AlgebraError(f"unknown operation {name!r}") from None

    def __getitem__(self, name: str) -> OpTensor:
        return self.op(name)

    def with_kind(self, kind: str) -> "MultiAlgebra":
        return MultiAlgebra(self._dim, self._ops, kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiAlgebra):
            return NotImplemented
        return (
            self._dim == other._dim
            and self._kind == other._kind
            and self._ops.keys() == other._ops.keys()
            and all(self._ops[k] == other._ops[k] for k in self._ops)
        )

    def same_tensors(self, other: "MultiAlgebra") -> bool:
        """Equality of the operation tensors, ignoring the kind tag."""
        return self._ops.keys() == other._ops.keys() and all(
            self._ops[k] == other._ops[k] for k in self._ops
        )

    def __repr__(self) -> str:
        return f"MultiAlgebra(dim={self._dim}, kind={self._kind!r}, ops={list(self._ops)})"


def eval_op(alg: MultiAlgebra, op: str, x: Sequence, y: Sequence) -> np.ndarray:
    """``x op y`` for coefficient vectors ``x``, ``y``."""
    t = alg.op(op)
    xv = scalar.as_array(list(x))
    yv = scalar.as_array(list(y))
    if xv.shape != (alg.dim,) or yv.shape != (alg.dim,):
        raise AlgebraError(f"vectors must have length {alg.dim}")
    if alg.dim == 0:
        return scalar.zeros((0,))
    return scalar.einsum("i,j,ijk->k", xv, yv, t.coeffs)


# -- exact linear algebra ------------------------------------------------------

def _to_sympy(m: np.ndarray) -> sympy.Matrix:
    rows, cols = m.shape
    return sympy.Matrix(rows, cols, [sympy.Rational(v.numerator, v.denominator) for v in m.reshape(-1)])


def _from_sympy(m: sympy.Matrix) -> np.ndarray:
    out = scalar.zeros((m.rows, m.cols))
    for i in range(m.rows):
        for j in range(m.cols):
            v = sympy.Rational(m[i, j])
            out[i, j] = Fraction(int(v.p), int(v.q))
    return out


def det(m: np.ndarray) -> Fraction:
    if m.shape[0] != m.shape[1]:
        raise AlgebraError("determinant of a non-square matrix")
    if m.shape[0] == 0:
        return Fraction(1)
    v = sympy.Rational(_to_sympy(m).det(method="bareiss"))
    return Fraction(int(v.p), int(v.q))


def inverse(m: np.ndarray) -> np.ndarray:
    if det(m) == 0:
        raise AlgebraError("matrix is singular")
    if m.shape[0] == 0:
        return scalar.zeros((0, 0))
    return _from_sympy(_to_sympy(m).inv())


def rank(m: np.ndarray) -> int:
    if 0 in m.shape:
        return 0
    return _to_sympy(m).rank()


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    if m.shape[1] == 0:
        return []
    if m.shape[0] == 0:
        return [scalar.identity(m.shape[1])[:, j] for j in range(m.shape[1])]
    return [_from_sympy(v)[:, 0] for v in _to_sympy(m).nullspace()]


def pivot_columns(m: np.ndarray) -> list[int]:
    if 0 in m.shape:
        return []
    _, pivots = _to_sympy(m).rref()
    return list(pivots)


def solve(m: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Some exact solution ``x`` of ``m @ x = b``; raises if inconsistent."""
    rows, cols = m.shape
    aug = _to_sympy(np.concatenate([m, b.reshape(rows, -1)], axis=1))
    red, pivots = aug.rref()
    if cols in pivots:
        raise AlgebraError("linear system is inconsistent")
    x = scalar.zeros((cols,))
    for r, p in enumerate(pivots):
        v = sympy.Rational(red[r, cols])
        x[p] = Fraction(int(v.p), int(v.q))
    return x


def matmul(*ms: np.ndarray) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = np.dot(out, m) if out.size and m.size else scalar.zeros((out.shape[0], m.shape[1]))
    return scalar.normalize(out)


class LinearMap:
    """Matrix of a linear map; column ``j`` is the image of basis vector ``j``."""

    __slots__ = ("_m", "domain", "codomain")

    def __init__(self, entries, domain: str = "", codomain: str = ""):
        m = scalar.as_array(entries)
        if m.ndim != 2:
            raise AlgebraError(f"a linear map needs a 2-d matrix, got shape {m.shape}")
        m.flags.writeable = False
        self._m = m
        self.domain = domain
        self.codomain = codomain

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(scalar.identity(n))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinearMap":
        return cls(scalar.zeros((rows, cols)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "LinearMap":
        n = len(values)
        m = scalar.zeros((n, n))
        for i, v in enumerate(values):
            m[i, i] = scalar.parse_scalar(v)
        return cls(m)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def rows(self) -> int:
        return self._m.shape[0]

    @property
    def cols(self) -> int:
        return self._m.shape[1]

    def __call__(self, x) -> np.ndarray:
        xv = scalar.as_array(list(x))
        if xv.shape != (self.cols,):
            raise AlgebraError(f"vector length {len(xv)} does not match {self.cols} columns")
        return matmul(self._m, xv.reshape(-1, 1))[:, 0]

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.rows:
            raise AlgebraError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        return LinearMap(matmul(self._m, other._m), other.domain, self.codomain)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return scalar.equal(self._m, other._m)

    def __hash__(self):
        return hash(scalar.to_tuple(self._m))

    def det(self) -> Fraction:
        return det(self._m)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.det() != 0

    def inverse(self) -> "LinearMap":
        if self.rows != self.cols:
            raise AlgebraError("only square maps can be inverted")
        return LinearMap(inverse(self._m), self.codomain, self.domain)

    def rank(self) -> int:
        return rank(self._m)

    def transpose(self) -> "LinearMap":
        return LinearMap(self._m.T.copy())

    def commutes_with(self, other: "LinearMap") -> bool:
        return (self @ other) == (other @ self)

    def __repr__(self) -> str:
        return f"LinearMap({scalar.to_nested(self._m)})"


class BilinearForm:
    """Bilinear form given by its Gram matrix; the symmetry tag is computed."""

    __slots__ = ("_g", "symmetry")

    def __init__(self, entries):
        g = scalar.as_array(entries)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise AlgebraError(f"a bilinear form needs a square matrix, got shape {g.shape}")
        g.flags.writeable = False
        self._g = g
        if scalar.equal(g, g.T):
            self.symmetry = "symmetric"
        elif scalar.equal(g, -g.T):
            self.symmetry = "skew"
        else:
            self.symmetry = "none"
        if scalar.is_zero(g):
            # the zero form is both; report it as symmetric but accept either
            self.symmetry = "symmetric"

    @classmethod
    def zero(cls, n: int) -> "BilinearForm":
        return cls(scalar.zeros((n, n)))

    @property
    def matrix(self) -> np.ndarray:
        return self._g

    @property
    def dim(self) -> int:
        return self._g.shape[0]

    def is_symmetric(self) -> bool:
        return scalar.equal(self._g, self._g.T)

    def is_skew(self) -> bool:
        return scalar.equal(self._g, -self._g.T)

    def det(self) -> Fraction:
        return det(self._g)

    def is_nondegenerate(self) -> bool:
        return self.det() != 0

    def __call__(self, x, y) -> Fraction:
        xv = scalar.as_array(list(x))
        yv = scalar.as_array(list(y))
        if self.dim == 0:
            return ZERO
        return Fraction(scalar.einsum("a,ab,b->", xv, self._g, yv).item())

    def transpose(self) -> "BilinearForm":
        return BilinearForm(self._g.T.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return scalar.equal(self._g, other._g)

    def __repr__(self) -> str:
        return f"BilinearForm({scalar.to_nested(self._g)}, {self.symmetry})"
