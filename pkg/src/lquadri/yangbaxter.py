"""Tensors ``r`` in ``A (x) A``: the CYBE, LD- and LQ-equations, the bridge to
bilinear forms, canonical solutions on semidirect products and central
extensions.

``r = sum r[i, j] e_i (x) e_j`` is stored as the matrix ``r[i, j]``.  As a map
``A* -> A`` (``<r(v*), u*> = <u* (x) v*, r>``) it sends ``e_j*`` to
``sum_i r[i, j] e_i``, so its matrix, columns being images, is ``r`` itself.
:func:`r_as_map` is the only place this orientation is fixed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import scalar
from .axioms import verify_as
from .bimodule import (
    Bimodule,
    BimoduleError,
    OOperator,
    check_o_operator,
    dual_bimodule,
    dual_representation,
    lquadri_bimodule,
    regular_bimodule,
    semidirect_ldend,
)
from .core import AlgebraError, BilinearForm, LinearMap, MultiAlgebra, OpTensor, inverse
from .derived import apply_functor, lquadri_to_ldend, named_products
from .forms import (
    check_cocycle_ldend,
    check_cocycle_lquadri,
    check_extension_conditions,
    check_invariant_lquadri,
    skew_part,
)
from .report import VerificationReport, build_report

#: whether the matrix of ``r`` as a map ``A* -> A`` is the transpose of its entries
R_MAP_TRANSPOSED = False


@dataclass(frozen=True)
class TensorPair:
    """``r in A (x) A`` over a fixed algebra."""

    alg: MultiAlgebra
    entries: np.ndarray

    def __post_init__(self):
        n = self.alg.dim
        m = scalar.as_array(self.entries) if n else scalar.zeros((0, 0))
        if m.shape != (n, n):
            raise AlgebraError(f"r must be {n} x {n}, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.alg.dim

    def sigma(self) -> "TensorPair":
        return TensorPair(self.alg, self.entries.T.copy())

    def is_symmetric(self) -> bool:
        return scalar.equal(self.entries, self.entries.T)

    def is_skew(self) -> bool:
        return scalar.equal(self.entries, -self.entries.T)

    def embed(self, slots: str) -> "Embedded":
        """``r_12``, ``r_13`` or ``r_23``."""
        if slots not in ("12", "13", "23"):
            raise AlgebraError(f"unknown embedding {slots!r}")
        return Embedded(self, slots)


@dataclass(frozen=True)
class Embedded:
    """``r`` placed in two of three tensor slots; the third holds the formal unit."""

    r: TensorPair
    slots: str

    def product(self, other: "Embedded", op: str | OpTensor) -> np.ndarray:
        return pairwise_product(self.r, other.r, op, f"{self.slots}.{other.slots}")


def r_as_map(r: TensorPair) -> LinearMap:
    m = r.entries.T.copy() if R_MAP_TRANSPOSED else r.entries.copy()
    return LinearMap(m, domain="A*", codomain="A")


def r_from_map(alg: MultiAlgebra, T: LinearMap) -> TensorPair:
    m = T.matrix
    return TensorPair(alg, m.T.copy() if R_MAP_TRANSPOSED else m.copy())


# -- products of embedded tensors -------------------------------------------------

_SLOTS = re.compile(r"^\s*([123]{2})\s*[.*·,]?\s*([123]{2})\s*$")
_SLOT_PATTERNS = {("12", "13"), ("13", "23"), ("23", "12"), ("12", "23"), ("13", "12"), ("23", "13")}


def _parse_slots(slots: str) -> tuple[str, str]:
    m = _SLOTS.match(slots)
    if not m or (m.group(1), m.group(2)) not in _SLOT_PATTERNS:
        raise AlgebraError(f"unsupported slot pattern {slots!r}")
    return m.group(1), m.group(2)


def pairwise_product(r: TensorPair, s: TensorPair, op: str | OpTensor, slots: str) -> np.ndarray:
    """``r_ab op s_cd`` as a rank-3 tensor ``t[p1, p2, p3]``.

    The shared slot carries ``(element of r) op (element of s)``; the other
    two slots pass through, e.g. ``r_12 * r_13 = sum a_i * a_j (x) b_i (x) b_j``.
    """
    if r.dim != s.dim:
        raise AlgebraError("tensors over different algebras")
    first, second = _parse_slots(slots)
    c = op.coeffs if isinstance(op, OpTensor) else named_products_or_ops(r.alg)[op].coeffs
    shared = (set(first) & set(second)).pop()
    # index letters: r has (i, j), s has (k, l); the product lands in m
    r_idx = dict(zip(first, "ij"))
    s_idx = dict(zip(second, "kl"))
    out = []
    for slot in "123":
        if slot == shared:
            out.append("m")
        else:
            out.append(r_idx.get(slot) or s_idx[slot])
    sub = f"ij,kl,{r_idx[shared]}{s_idx[shared]}m->{''.join(out)}"
    return scalar.einsum(sub, r.entries, s.entries, c)


def named_products_or_ops(alg: MultiAlgebra) -> Mapping[str, OpTensor]:
    try:
        return named_products(alg)
    except AlgebraError:
        return alg.ops


def _prod(r: TensorPair, op: str, slots: str, table) -> np.ndarray:
    return pairwise_product(r, r, table[op], slots)


def cybe_tensor(alg: MultiAlgebra, r: TensorPair) -> np.ndarray:
    """``[r12, r13] + [r12, r23] + [r13, r23]``."""
    b = alg.op("bracket")
    return (pairwise_product(r, r, b, "12.13") + pairwise_product(r, r, b, "12.23")
            + pairwise_product(r, r, b, "13.23"))


def check_cybe(alg: MultiAlgebra, r: TensorPair) -> VerificationReport:
    t = cybe_tensor(alg, r)
    return build_report("CYBE", [("cybe", t, scalar.zeros(t.shape))], witness_axes=3)


def ld_sides(alg: MultiAlgebra, r: TensorPair) -> tuple[np.ndarray, np.ndarray]:
    """``r23 tri_l r13`` and ``r13 o r12 + r23 bullet r12``."""
    t = named_products(alg)
    lhs = _prod(r, "tri_l", "23.13", t)
    rhs = _prod(r, "circ", "13.12", t) + _prod(r, "bullet", "23.12", t)
    return lhs, rhs


def check_ld_equation(alg: MultiAlgebra, r: TensorPair) -> VerificationReport:
    lhs, rhs = ld_sides(alg, r)
    return build_report("LD-equation", [("ld", lhs, rhs)], witness_axes=3)


def lq_sides(alg: MultiAlgebra, r: TensorPair) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Both LQ equations and their sum, each as ``(lhs, rhs)``.

    ``lq-1``: ``r13 tri_r r23 = -(r12 vee r23 + r12 wedge r23) + r12 nw r13``;
    ``lq-2``: ``r13 tri_l r23 = r12 wedge r23 - r12 prec r13``;
    ``lq-sum``: ``r13 bullet r23 = -r12 sw r13 - r12 vee r23``.
    """
    t = named_products(alg)
    p = lambda op, slots: _prod(r, op, slots, t)
    return {
        "lq-1": (p("tri_r", "13.23"), -(p("vee", "12.23") + p("wedge", "12.23")) + p("nw", "12.13")),
        "lq-2": (p("tri_l", "13.23"), p("wedge", "12.23") - p("prec", "12.13")),
        "lq-sum": (p("bullet", "13.23"), -p("sw", "12.13") - p("vee", "12.23")),
    }


def check_lq_equation(alg: MultiAlgebra, r: TensorPair) -> VerificationReport:
    """Per-equation status of the LQ-equation (``lq-1`` and ``lq-2`` are both required)."""
    sides = lq_sides(alg, r)
    return build_report("LQ-equation", [(k, *sides[k]) for k in ("lq-1", "lq-2")], witness_axes=3)


def lq_sum_residuals(alg: MultiAlgebra, r: TensorPair) -> dict[str, np.ndarray]:
    """``lhs - rhs`` for each LQ equation and for their sum."""
    return {k: lhs - rhs for k, (lhs, rhs) in lq_sides(alg, r).items()}


# -- r and bilinear forms ---------------------------------------------------------

def form_from_r(r: TensorPair) -> BilinearForm:
    """``B(u, v) = <T^-1 u, v>`` with ``T`` the map of ``r``; Gram matrix ``(T^-1)^T``."""
    T = r_as_map(r)
    if not T.is_invertible():
        raise AlgebraError("r is not invertible")
    return BilinearForm(inverse(T.matrix).T.copy())


def r_from_form(alg: MultiAlgebra, B: BilinearForm) -> TensorPair:
    if not B.is_nondegenerate():
        raise AlgebraError("B is degenerate")
    return r_from_map(alg, LinearMap(inverse(B.matrix.T.copy())))


# -- O-operator equivalences --------------------------------------------------------

#: associated L-dendriform algebra and the bimodule whose dual carries each condition
EQUIVALENCE_CONTEXTS = ("horizontal", "vertical", "depth")


def dual_lquadri_bimodule(alg: MultiAlgebra, flavor: str) -> Bimodule:
    """Dual of the multiplication bimodule over the ``flavor`` L-dendriform algebra."""
    return dual_bimodule(lquadri_bimodule(alg, flavor))


@dataclass(frozen=True)
class EquivalenceResult:
    horizontal: bool
    vertical: bool
    depth: bool
    lq_equation: bool

    @property
    def values(self) -> tuple[bool, bool, bool, bool]:
        return (self.horizontal, self.vertical, self.depth, self.lq_equation)

    @property
    def agree(self) -> bool:
        return len(set(self.values)) == 1


def o_operator_equivalence_suite(alg: MultiAlgebra, r: TensorPair) -> EquivalenceResult:
    """The four conditions of the symmetric-r equivalence, each decided independently."""
    if not r.is_symmetric():
        raise AlgebraError("the equivalence requires a symmetric r")
    T = r_as_map(r)
    flags = {
        f: check_o_operator(OOperator(T, dual_lquadri_bimodule(alg, f))).holds
        for f in EQUIVALENCE_CONTEXTS
    }
    return EquivalenceResult(**flags, lq_equation=check_lq_equation(alg, r).holds)


def cybe_operator_form(alg: MultiAlgebra, r: TensorPair) -> VerificationReport:
    """O-operator check of ``r`` with respect to the coadjoint representation."""
    return check_o_operator(OOperator(r_as_map(r), dual_representation(regular_bimodule(alg))))


def ld_operator_form(alg: MultiAlgebra, r: TensorPair) -> VerificationReport:
    """O-operator check of ``r`` with respect to the dual of the regular bimodule."""
    return check_o_operator(OOperator(r_as_map(r), dual_bimodule(regular_bimodule(alg))))


# -- canonical solutions ------------------------------------------------------------

def _block_r(n: int, m: int, T: np.ndarray) -> np.ndarray:
    """``T - sigma(T)`` in ``(A + V*) (x) (A + V*)``: ``[[0, T], [-T^T, 0]]``."""
    r = scalar.zeros((n + m, n + m))
    r[:n, n:] = T
    r[n:, :n] = -T.T
    return r


@dataclass(frozen=True)
class LiftedR:
    ambient: MultiAlgebra
    r: TensorPair


def lift_operator_to_r(op: OOperator) -> LiftedR:
    """``r = T - sigma(T)`` in the semidirect product over the dual bimodule."""
    ctx = op.context
    if ctx.shape != "ldend":
        raise BimoduleError("lift_operator_to_r needs an ldend context")
    ambient = semidirect_ldend(dual_bimodule(ctx), force=True)
    r = _block_r(ctx.base.dim, ctx.module_dim, op.T.matrix)
    return LiftedR(ambient, TensorPair(ambient, r))


@dataclass(frozen=True)
class CanonicalR:
    ambients: dict
    r: np.ndarray
    form: BilinearForm

    def tensor(self, flavor: str) -> TensorPair:
        return TensorPair(self.ambients[flavor], self.r)


def canonical_form(n: int) -> BilinearForm:
    """``B(x + a*, y + b*) = -<a*, y> + <x, b*>``."""
    g = scalar.zeros((2 * n, 2 * n))
    for i in range(n):
        g[i, n + i] = 1
        g[n + i, i] = -1
    return BilinearForm(g)


def canonical_r(alg: MultiAlgebra) -> CanonicalR:
    """``r = sum e_i (x) e_i* - e_i* (x) e_i`` on the three semidirect products
    ``A x| A*`` over the duals of the horizontal, vertical and depth bimodules."""
    n = alg.dim
    ambients = {
        f: semidirect_ldend(dual_lquadri_bimodule(alg, f), force=True) for f in EQUIVALENCE_CONTEXTS
    }
    return CanonicalR(ambients, _block_r(n, n, scalar.identity(n)), canonical_form(n))


# -- central extensions ----------------------------------------------------------------

@dataclass(frozen=True)
class CentralExtension:
    algebra: MultiAlgebra
    extension: VerificationReport
    conditions: VerificationReport
    omega: dict

    @property
    def iff_holds(self) -> bool:
        return self.extension.holds == self.conditions.holds


def extend(alg: MultiAlgebra, B: BilinearForm) -> MultiAlgebra:
    """``A + Fc`` with ``x se y - B(y, x) c``, ``x nw y - B(x, y) c``,
    ``x ne y + B(y, x) c``, ``x sw y + B(x, y) c``; products with ``c`` vanish."""
    n = alg.dim
    G = B.matrix
    # (coefficient, transposed?) of B in the c-component of each product
    shift = {"se": (-1, True), "nw": (-1, False), "ne": (1, True), "sw": (1, False)}
    ops = {}
    for name in ("se", "ne", "nw", "sw"):
        t = scalar.zeros((n + 1, n + 1, n + 1))
        t[:n, :n, :n] = alg.op(name).coeffs
        sign, transposed = shift[name]
        t[:n, :n, n] = (G.T if transposed else G) * sign
        ops[name] = t
    return MultiAlgebra(n + 1, ops, "l-quadri")


def central_extension(alg: MultiAlgebra, B: BilinearForm) -> CentralExtension:
    """Build the extension, verify it, and decide the conditions on ``B``.

    When the conditions hold, ``omega(x, y) = B(x, y) - B(y, x)`` is checked as a
    2-cocycle of the vertical and depth L-dendriform algebras.
    """
    ext = extend(alg, B)
    rep = verify_as(ext, "l-quadri")
    cond = check_extension_conditions(alg, B)
    omega = {}
    if cond.holds:
        w = skew_part(B)
        omega = {f: check_cocycle_ldend(lquadri_to_ldend(alg, f), w) for f in ("vertical", "depth")}
    return CentralExtension(ext, rep, cond, omega)


# -- transfer under the transpose and symmetries --------------------------------------

TRANSFORMS = ("identity", "transpose", "symmetry:a", "symmetry:b", "symmetry:c", "symmetry:d")


def transfer_under_symmetry(alg: MultiAlgebra, B: BilinearForm) -> dict[str, bool]:
    """Invariance (skew ``B``) or 2-cocycle (symmetric ``B``) on the algebra and its
    five transforms."""
    if B.is_skew():
        check = check_invariant_lquadri
    elif B.is_symmetric():
        check = check_cocycle_lquadri
    else:
        raise AlgebraError("B must be skew-symmetric or symmetric")
    out = {}
    for name in TRANSFORMS:
        target = alg if name == "identity" else apply_functor(alg, name)
        out[name] = check(target, B).holds
    return out
