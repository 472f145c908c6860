"""Bimodules, O-operators and Rota-Baxter operators, and the structures they induce.

Action tensors follow one convention throughout: ``a[i, p, q]`` is the
coefficient of ``f_q`` in ``rho(e_i) f_p``.  For column vectors the
endomorphism ``rho(e_i)`` is therefore the matrix ``a[i].T``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
import sympy

from . import scalar
from .core import (
    AlgebraError,
    BilinearForm,
    LinearMap,
    MultiAlgebra,
    OpTensor,
    combine_ops,
    inverse,
    nullspace,
    solve,
)
from .derived import apply_functor, named_products
from .forms import DEFAULT_READING, INVARIANCE, P, check_cocycle_ldend, pairing_tensor
from .report import VerificationReport, build_report

#: action names per bimodule shape
SHAPES: dict[str, tuple[str, ...]] = {
    "lie": ("rho",),
    "prelie": ("l", "r"),
    "ldend": ("l_tri_r", "r_tri_r", "l_tri_l", "r_tri_l"),
}

#: structure induced on the module space by an O-operator, one level up
INDUCED_KIND = {"lie": "prelie", "prelie": "l-dendriform", "ldend": "l-quadri"}

_SHAPE_OF_KIND = {
    "lie": "lie",
    "prelie": "prelie",
    "associative": "prelie",
    "l-dendriform": "ldend",
    "dendriform": "ldend",
}
_SHAPE_OF_OPS = {("bracket",): "lie", ("circ",): "prelie", ("tri_l", "tri_r"): "ldend"}


class BimoduleError(AlgebraError):
    """Invalid bimodule, O-operator or Rota-Baxter input."""


class PreconditionFailed(BimoduleError):
    """A construction's input failed its verification; ``report`` holds the witnesses."""

    def __init__(self, message: str, report: VerificationReport | None = None):
        super().__init__(message if report is None else f"{message}:\n{report.render()}")
        self.report = report


def shape_of(alg: MultiAlgebra) -> str:
    """Bimodule shape appropriate for ``alg`` (from its kind, else its operation names)."""
    if alg.kind in _SHAPE_OF_KIND:
        return _SHAPE_OF_KIND[alg.kind]
    key = tuple(sorted(alg.ops))
    if key in _SHAPE_OF_OPS:
        return _SHAPE_OF_OPS[key]
    raise BimoduleError(f"no bimodule shape for a {alg.kind!r} algebra with operations {sorted(alg.ops)}")


# -- action tensors ------------------------------------------------------------

def left_action(t: OpTensor) -> np.ndarray:
    """``L(e_i) f_p = e_i * e_p``."""
    return t.coeffs.copy()


def right_action(t: OpTensor) -> np.ndarray:
    """``R(e_i) f_p = e_p * e_i``."""
    return t.coeffs.transpose(1, 0, 2).copy()


def dual_action(a: np.ndarray) -> np.ndarray:
    """``rho*``: ``<rho*(x) v*, u> = -<v*, rho(x) u>``."""
    return -np.transpose(a, (0, 2, 1))


_ACTION_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([LR]):(\w+)\s*")


def multiplication_action(text: str, products: Mapping[str, OpTensor]) -> np.ndarray:
    """Combination of left/right multiplications, e.g. ``"L:se - R:nw"``."""
    pos, acc = 0, None
    text = text.strip()
    while pos < len(text):
        m = _ACTION_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise BimoduleError(f"cannot parse action {text!r} at offset {pos}")
        if acc is not None and m.group(1) is None:
            raise BimoduleError(f"missing sign in action {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign * (Fraction(m.group(2)) if m.group(2) else Fraction(1))
        if m.group(4) not in products:
            raise BimoduleError(f"unknown product {m.group(4)!r}")
        t = products[m.group(4)]
        part = (left_action(t) if m.group(3) == "L" else right_action(t)) * coeff
        acc = part if acc is None else acc + part
        pos = m.end()
    if acc is None:
        raise BimoduleError("empty action")
    return acc


# -- bimodules -----------------------------------------------------------------

@dataclass(frozen=True)
class Bimodule:
    """Actions of ``base`` on a ``module_dim``-dimensional space.

    Validity is decided by :func:`check_bimodule`, never assumed.
    """

    base: MultiAlgebra
    module_dim: int
    actions: Mapping[str, np.ndarray]
    shape: str

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise BimoduleError(f"unknown bimodule shape {self.shape!r}")
        names = SHAPES[self.shape]
        if set(self.actions) != set(names):
            raise BimoduleError(f"{self.shape} bimodule needs actions {list(names)}, got {sorted(self.actions)}")
        n, m = self.base.dim, self.module_dim
        frozen = {}
        for name in names:
            a = scalar.as_array(self.actions[name]) if (n and m) else scalar.zeros((n, m, m))
            if a.shape != (n, m, m):
                raise BimoduleError(f"action {name!r} must have shape {(n, m, m)}, got {a.shape}")
            a.flags.writeable = False
            frozen[name] = a
        object.__setattr__(self, "actions", frozen)

    def endomorphisms(self, name: str) -> np.ndarray:
        """``E[i]`` is the matrix of the action of ``e_i`` on column vectors."""
        return np.transpose(self.actions[name], (0, 2, 1))

    @classmethod
    def from_multiplications(
        cls, base: MultiAlgebra, specs: Sequence[str], products: Mapping[str, OpTensor] | None = None,
        shape: str | None = None,
    ) -> "Bimodule":
        """Bimodule on the underlying space of an algebra, e.g. ``["L:se", "-L:nw", "L:ne", "-L:sw"]``.

        ``products`` defaults to the operations of ``base``; pass the named
        products of a richer algebra on the same space to use its multiplications.
        """
        shape = shape or shape_of(base)
        table = dict(products) if products is not None else base.ops
        names = SHAPES[shape]
        if len(specs) != len(names):
            raise BimoduleError(f"{shape} bimodule needs {len(names)} actions")
        acts = {name: multiplication_action(s, table) for name, s in zip(names, specs)}
        return cls(base, base.dim, acts, shape)

    @classmethod
    def zero(cls, base: MultiAlgebra, module_dim: int, shape: str | None = None) -> "Bimodule":
        shape = shape or shape_of(base)
        z = scalar.zeros((base.dim, module_dim, module_dim))
        return cls(base, module_dim, {name: z for name in SHAPES[shape]}, shape)


REGULAR_SPECS = {
    "lie": ("L:bracket",),
    "prelie": ("L:circ", "R:circ"),
    "ldend": ("L:tri_r", "R:tri_r", "L:tri_l", "R:tri_l"),
}


def regular_bimodule(alg: MultiAlgebra) -> Bimodule:
    """Adjoint representation (Lie), ``(L, R)`` (pre-Lie) or ``(L_tri_r, R_tri_r, L_tri_l, R_tri_l)``."""
    shape = shape_of(alg)
    return Bimodule.from_multiplications(alg, REGULAR_SPECS[shape], shape=shape)


#: the three bimodules carried by an L-quadri-algebra, over its horizontal,
#: vertical and depth L-dendriform algebras respectively
LQUADRI_BIMODULES = {
    "horizontal": ("L:se", "-L:nw", "L:ne", "-L:sw"),
    "vertical": ("L:se", "R:ne", "L:sw", "R:nw"),
    "depth": ("L:se", "R:sw", "L:ne", "R:nw"),
}

_FLAVOR_PAIR = {
    "horizontal": ("tri_r", "tri_l"),
    "vertical": ("succ", "prec"),
    "depth": ("vee", "wedge"),
}


def associated_ldend(alg: MultiAlgebra, flavor: str) -> MultiAlgebra:
    products = named_products(alg)
    a, b = _FLAVOR_PAIR[flavor]
    return MultiAlgebra(alg.dim, {"tri_r": products[a], "tri_l": products[b]}, "l-dendriform")


def lquadri_bimodule(alg: MultiAlgebra, flavor: str = "horizontal") -> Bimodule:
    """Multiplication bimodule of an L-quadri-algebra over one of its L-dendriform algebras."""
    if flavor not in LQUADRI_BIMODULES:
        raise BimoduleError(f"unknown flavor {flavor!r}")
    base = associated_ldend(alg, flavor)
    return Bimodule.from_multiplications(base, LQUADRI_BIMODULES[flavor], alg.ops, "ldend")


def dual_bimodule(m: Bimodule) -> Bimodule:
    """Dual bimodule of an L-dendriform bimodule on ``V*``:
    ``(l_r* + l_l* - r_r* - r_l*, r_r*, r_r* - l_l*, -(r_r* + r_l*))``
    with ``_r``/``_l`` the ``tri_r``/``tri_l`` actions."""
    if m.shape != "ldend":
        raise BimoduleError("dual_bimodule needs an ldend bimodule")
    lr, rr, ll, rl = (dual_action(m.actions[k]) for k in SHAPES["ldend"])
    acts = {
        "l_tri_r": lr + ll - rr - rl,
        "r_tri_r": rr,
        "l_tri_l": rr - ll,
        "r_tri_l": -(rr + rl),
    }
    return Bimodule(m.base, m.module_dim, acts, "ldend")


def dual_representation(m: Bimodule) -> Bimodule:
    """``(rho*, V*)`` for a Lie-shaped module; coadjoint for the adjoint representation."""
    if m.shape != "lie":
        raise BimoduleError("dual_representation needs a lie-shaped module")
    return Bimodule(m.base, m.module_dim, {"rho": dual_action(m.actions["rho"])}, "lie")


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``rho_a(e_i) rho_b(e_j)`` as ``[i, j]``-indexed column-convention matrices."""
    return scalar.einsum("iqs,jsp->ijqp", np.transpose(a, (0, 2, 1)), np.transpose(b, (0, 2, 1)))


def _compose_rev(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``rho_a(e_j) rho_b(e_i)`` indexed ``[i, j]``."""
    return np.transpose(_compose(a, b), (1, 0, 2, 3))


def _at_product(a: np.ndarray, t: OpTensor) -> np.ndarray:
    """``rho_a(e_i * e_j)`` indexed ``[i, j]``."""
    return scalar.einsum("ijk,kqp->ijqp", t.coeffs, np.transpose(a, (0, 2, 1)))


def bimodule_equations(m: Bimodule) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Defining operator equations, both sides indexed ``[x, y, row, col]``."""
    acts = m.actions
    if m.shape == "lie":
        rho = acts["rho"]
        bracket = m.base.op("bracket")
        return [("representation", _at_product(rho, bracket), _compose(rho, rho) - _compose_rev(rho, rho))]
    if m.shape == "prelie":
        l, r = acts["l"], acts["r"]
        circ = m.base.op("circ")
        swap = lambda x: np.transpose(x, (1, 0, 2, 3))
        return [
            ("bimodule-l", _compose(l, l) - _at_product(l, circ), swap(_compose(l, l) - _at_product(l, circ))),
            ("bimodule-r", _compose(l, r) - _compose_rev(r, l), _at_product(r, circ) - _compose_rev(r, r)),
        ]
    lr, rr, ll, rl = (acts[k] for k in SHAPES["ldend"])
    ops = m.base.ops
    tri_r, tri_l = ops["tri_r"], ops["tri_l"]
    circ = combine_ops(ops, "tri_r - swap(tri_l)")
    bullet = tri_r + tri_l
    bracket = combine_ops(ops, "tri_r + tri_l - swap(tri_r) - swap(tri_l)")

    def comm(a, b):
        return _compose(a, b) - _compose_rev(b, a)

    return [
        ("ld-bimodule-1", comm(lr, lr), _at_product(lr, bracket)),
        ("ld-bimodule-2", comm(lr, ll), _at_product(ll, circ) + _compose_rev(ll, ll)),
        ("ld-bimodule-3", _at_product(rr, tri_r),
         _compose_rev(rr, rr) + _compose_rev(rr, rl) + comm(lr, rr) - _compose_rev(rr, ll)),
        ("ld-bimodule-4", _at_product(rr, tri_l),
         _compose_rev(rl, rr) + _compose(ll, rr) + comm(ll, rl)),
        ("ld-bimodule-5", comm(lr, rl), _at_product(rl, bullet) - _compose_rev(rl, rl)),
    ]


def check_bimodule(m: Bimodule) -> VerificationReport:
    """Decide the defining equations on all basis pairs of the base algebra."""
    return build_report(f"{m.shape} bimodule", bimodule_equations(m), witness_axes=2)


def semidirect_ldend(m: Bimodule, force: bool = False) -> MultiAlgebra:
    """L-dendriform algebra on ``A + V``: ``e_i tri f_p = l(e_i) f_p``, ``f_p tri e_j = r(e_j) f_p``,
    module-module products zero."""
    if m.shape != "ldend":
        raise BimoduleError("semidirect_ldend needs an ldend bimodule")
    if not force:
        rep = check_bimodule(m)
        if not rep.holds:
            raise PreconditionFailed("not a bimodule", rep)
    n, k = m.base.dim, m.module_dim
    ops = {}
    for name, (left, right) in {"tri_r": ("l_tri_r", "r_tri_r"), "tri_l": ("l_tri_l", "r_tri_l")}.items():
        t = scalar.zeros((n + k, n + k, n + k))
        t[:n, :n, :n] = m.base.op(name).coeffs
        t[:n, n:, n:] = m.actions[left]
        t[n:, :n, n:] = np.transpose(m.actions[right], (1, 0, 2))
        ops[name] = t
    return MultiAlgebra(n + k, ops, "l-dendriform")


# -- O-operators ---------------------------------------------------------------

#: per shape: (base product, left action, right action, sign of the right-action term)
_O_EQUATIONS = {
    "lie": [("bracket", "rho", "rho", -1)],
    "prelie": [("circ", "l", "r", 1)],
    "ldend": [("tri_r", "l_tri_r", "r_tri_r", 1), ("tri_l", "l_tri_l", "r_tri_l", 1)],
}


@dataclass(frozen=True)
class OOperator:
    """A linear map ``T: V -> A`` together with the bimodule it is meant for."""

    T: LinearMap
    context: Bimodule

    def __post_init__(self):
        if (self.T.rows, self.T.cols) != (self.context.base.dim, self.context.module_dim):
            raise BimoduleError(
                f"T must be {self.context.base.dim} x {self.context.module_dim}, got {self.T.rows} x {self.T.cols}"
            )


def _acting(T: np.ndarray, a: np.ndarray) -> np.ndarray:
    """``rho(T f_p) f_q`` as ``[p, q, s]`` coefficients of ``f_s``."""
    return scalar.einsum("ip,iqs->pqs", T, a)


def o_operator_equations(op: OOperator) -> list[tuple[str, np.ndarray, np.ndarray]]:
    T = op.T.matrix
    ctx = op.context
    out = []
    for prod, left, right, sign in _O_EQUATIONS[ctx.shape]:
        c = ctx.base.op(prod).coeffs
        lhs = scalar.einsum("ip,jq,ijk->pqk", T, T, c)
        inner = _acting(T, ctx.actions[left]) + sign * np.transpose(_acting(T, ctx.actions[right]), (1, 0, 2))
        rhs = scalar.einsum("pqs,ks->pqk", inner, T)
        out.append((f"o-operator-{prod}", lhs, rhs))
    return out


def check_o_operator(op: OOperator) -> VerificationReport:
    """Decide the O-operator equations on all pairs of module basis vectors."""
    return build_report("O-operator", o_operator_equations(op), witness_axes=2)


def check_rota_baxter(alg: MultiAlgebra, R: LinearMap) -> VerificationReport:
    """Weight-zero Rota-Baxter condition ``R(x) * R(y) = R(R(x) * y + x * R(y))``.

    For Lie, pre-Lie and L-dendriform algebras this is the O-operator check in
    the adjoint/regular context; for any other algebra each operation is
    checked directly.
    """
    if (R.rows, R.cols) != (alg.dim, alg.dim):
        raise BimoduleError(f"R must be {alg.dim} x {alg.dim}")
    try:
        ctx = regular_bimodule(alg)
    except BimoduleError:
        ctx = None
    if ctx is not None:
        rep = check_o_operator(OOperator(R, ctx))
        rep.subject = "Rota-Baxter"
        return rep
    M = R.matrix
    checks = []
    for name, t in alg.ops.items():
        c = t.coeffs
        lhs = scalar.einsum("ip,jq,ijk->pqk", M, M, c)
        inner = scalar.einsum("ip,iqk->pqk", M, c) + scalar.einsum("jq,pjk->pqk", M, c)
        rhs = scalar.einsum("pqs,ks->pqk", inner, M)
        checks.append((f"rota-baxter-{name}", lhs, rhs))
    return build_report("Rota-Baxter", checks, witness_axes=2)


def _require(rep: VerificationReport, what: str) -> None:
    if not rep.holds:
        raise PreconditionFailed(f"{what} failed", rep)


def induce(op: OOperator, force: bool = False) -> MultiAlgebra:
    """Structure on the module space, one level up from the context's base.

    lie context: ``u o v = rho(Tu) v``;
    pre-Lie context: ``u tri_r v = l(Tu) v``, ``u tri_l v = -r(Tu) v``;
    L-dendriform context: ``u se v = l_tri_r(Tu) v``, ``u nw v = -r_tri_r(Tu) v``,
    ``u ne v = l_tri_l(Tu) v``, ``u sw v = -r_tri_l(Tu) v``.
    """
    if not force:
        _require(check_o_operator(op), "O-operator check")
    T = op.T.matrix
    acts = op.context.actions
    shape = op.context.shape
    k = op.context.module_dim
    if shape == "lie":
        ops = {"circ": _acting(T, acts["rho"])}
    elif shape == "prelie":
        ops = {"tri_r": _acting(T, acts["l"]), "tri_l": -_acting(T, acts["r"])}
    else:
        ops = {
            "se": _acting(T, acts["l_tri_r"]),
            "nw": -_acting(T, acts["r_tri_r"]),
            "ne": _acting(T, acts["l_tri_l"]),
            "sw": -_acting(T, acts["r_tri_l"]),
        }
    return MultiAlgebra(k, ops, INDUCED_KIND[shape])


@dataclass(frozen=True)
class ImageAlgebra:
    """Structure transported to ``T(V)``; ``basis`` has the chosen image basis as columns."""

    algebra: MultiAlgebra
    basis: LinearMap


def _image_basis(T: np.ndarray) -> np.ndarray:
    """Reduced column-echelon basis of the column space (the identity when T is onto)."""

    rows, cols = T.shape
    if rows == 0 or cols == 0:
        return scalar.zeros((rows, 0))
    mt = sympy.Matrix(cols, rows, [sympy.Rational(v.numerator, v.denominator) for v in T.T.reshape(-1)])
    red, pivots = mt.rref()
    out = scalar.zeros((rows, len(pivots)))
    for k in range(len(pivots)):
        for i in range(rows):
            v = sympy.Rational(red[k, i])
            out[i, k] = Fraction(int(v.p), int(v.q))
    return out


def induce_on_image(op: OOperator, force: bool = False) -> ImageAlgebra:
    """Transport the induced structure to ``T(V)`` via ``T(u) * T(v) = T(u * v)``.

    Well-definedness (``T(w * v) = T(v * w) = 0`` for ``w`` in the kernel) is
    checked before anything is emitted.
    """
    induced = induce(op, force=force)
    T = op.T.matrix
    n = op.T.rows
    kernel = nullspace(T) if T.size else [scalar.identity(op.T.cols)[:, j] for j in range(op.T.cols)]
    for name, t in induced.ops.items():
        c = t.coeffs
        for w in kernel:
            for side, expr in (("left", "p,pqs->qs"), ("right", "q,pqs->ps")):
                prod = scalar.einsum(expr, w, c)
                image = scalar.einsum("qs,ks->qk", prod, T)
                if not scalar.is_zero(image):
                    raise PreconditionFailed(
                        f"induced {name!r} is not well defined on T(V) ({side} kernel product survives)"
                    )
    basis = _image_basis(T)
    d = basis.shape[1]
    pivots = [next(i for i in range(n) if basis[i, k] != 0) for k in range(d)]
    # preimages u_k with T u_k = b_k
    pre = [solve(T, basis[:, k]) for k in range(d)]
    ops = {}
    for name, t in induced.ops.items():
        out = scalar.zeros((d, d, d))
        for a in range(d):
            for b in range(d):
                prod = scalar.einsum("p,q,pqs->s", pre[a], pre[b], t.coeffs)
                vec = scalar.einsum("ks,s->k", T, prod)
                for k, piv in enumerate(pivots):
                    out[a, b, k] = vec[piv]
        ops[name] = out
    return ImageAlgebra(MultiAlgebra(d, ops, induced.kind), LinearMap(basis))


# -- Rota-Baxter towers ----------------------------------------------------------

_RB_TARGET = {"lie": "prelie", "prelie": "l-dendriform", "l-dendriform": "l-quadri"}


def _tower_kind(alg: MultiAlgebra) -> str:
    shape = shape_of(alg)
    return {"lie": "lie", "prelie": "prelie", "ldend": "l-dendriform"}[shape]


def rb_step(alg: MultiAlgebra, R: LinearMap, force: bool = False) -> MultiAlgebra:
    """One level up the tower from a single Rota-Baxter operator.

    Lie: ``x o y = [R(x), y]``; pre-Lie: ``x tri_r y = R(x) o y``, ``x tri_l y = -y o R(x)``;
    L-dendriform: ``x se y = R(x) tri_r y``, ``x nw y = -y tri_r R(x)``,
    ``x ne y = R(x) tri_l y``, ``x sw y = -y tri_l R(x)``.
    """
    return induce(OOperator(R, regular_bimodule(alg)), force=force)


def rb_tower(alg: MultiAlgebra, Rs: Sequence[LinearMap], force: bool = False) -> MultiAlgebra:
    """Apply commuting Rota-Baxter operators ``R1, R2, ...`` in order, one level each.

    On a Lie algebra, ``[R1, R2]`` gives ``x tri_r y = [R1 R2 x, y]``,
    ``x tri_l y = [R2 x, R1 y]`` and ``[R1, R2, R3]`` gives
    ``x se y = [R1 R2 R3 x, y]``, ``x nw y = [R3 x, R1 R2 y]``,
    ``x ne y = [R2 R3 x, R1 y]``, ``x sw y = [R1 R3 x, R2 y]``.
    """
    Rs = list(Rs)
    kind = _tower_kind(alg)
    levels = ["lie", "prelie", "l-dendriform", "l-quadri"]
    if len(Rs) > len(levels) - 1 - levels.index(kind):
        raise BimoduleError(f"too many operators for a {kind} algebra: {len(Rs)}")
    if not force:
        for i, R in enumerate(Rs):
            rep = check_rota_baxter(alg, R)
            if not rep.holds:
                raise PreconditionFailed(f"R{i + 1} is not a Rota-Baxter operator", rep)
        for (i, a), (j, b) in itertools.combinations(enumerate(Rs), 2):
            if not a.commutes_with(b):
                raise PreconditionFailed(f"R{i + 1} and R{j + 1} do not commute")
    current = alg
    for R in Rs:
        current = rb_step(current, R, force=force)
    return current


#: closed formulas for the transpose and symmetries of the one-step L-quadri-algebra
#: built from a Rota-Baxter operator R on an L-dendriform algebra.  Each product is
#: (sign, base product, which argument carries R, swapped argument order).
RB_VARIANTS: dict[str, dict[str, tuple[int, str, str, bool]]] = {
    "base": {"se": (1, "tri_r", "x", False), "nw": (-1, "tri_r", "x", True),
             "ne": (1, "tri_l", "x", False), "sw": (-1, "tri_l", "x", True)},
    "transpose": {"se": (1, "tri_r", "x", False), "nw": (-1, "tri_r", "x", True),
                  "ne": (-1, "tri_l", "x", True), "sw": (1, "tri_l", "x", False)},
    "symmetry:a": {"se": (1, "tri_r", "x", False), "nw": (-1, "tri_l", "y", True),
                   "ne": (1, "tri_r", "y", False), "sw": (-1, "tri_l", "x", True)},
    "symmetry:b": {"se": (1, "tri_r", "x", False), "nw": (-1, "tri_l", "y", True),
                   "ne": (-1, "tri_l", "x", True), "sw": (1, "tri_r", "y", False)},
    "symmetry:c": {"se": (1, "tri_r", "x", False), "nw": (1, "tri_l", "y", False),
                   "ne": (1, "tri_r", "y", False), "sw": (1, "tri_l", "x", False)},
    "symmetry:d": {"se": (1, "tri_r", "x", False), "nw": (1, "tri_l", "y", False),
                   "ne": (1, "tri_l", "x", False), "sw": (1, "tri_r", "y", False)},
}


def _rb_product(alg: MultiAlgebra, R: np.ndarray, sign: int, prod: str, carrier: str, swapped: bool) -> np.ndarray:
    """Tensor of ``x * y -> sign * (a tri b)`` where R hits ``x`` or ``y`` and the
    factors are ``(x, y)`` or, when swapped, ``(y, x)``."""
    c = alg.op(prod).coeffs
    n = alg.dim
    I = scalar.identity(n)
    Fx, Fy = (R, I) if carrier == "x" else (I, R)
    if not swapped:
        t = scalar.einsum("ai,bj,abk->ijk", Fx, Fy, c)
    else:
        t = scalar.einsum("bi,aj,abk->ijk", Fx, Fy, c)
    return t * sign


def rb_variant_formulas(alg: MultiAlgebra, R: LinearMap) -> dict[str, MultiAlgebra]:
    """The six L-quadri-algebras written directly from the closed formulas."""
    out = {}
    for name, table in RB_VARIANTS.items():
        ops = {op: _rb_product(alg, R.matrix, *spec) for op, spec in table.items()}
        out[name] = MultiAlgebra(alg.dim, ops, "l-quadri")
    return out


def symmetry_variants_of_rb_lquadri(alg: MultiAlgebra, R: LinearMap, force: bool = False) -> dict[str, MultiAlgebra]:
    """Transpose and the four symmetries of the L-quadri-algebra induced by ``R``.

    Computed by composing :func:`rb_step` with the functors of
    :mod:`lquadri.derived`; :func:`rb_variant_formulas` gives the same five
    algebras from their closed formulas.
    """
    base = rb_step(alg, R, force=force)
    out = {"transpose": apply_functor(base, "transpose")}
    for which in "abcd":
        out[f"symmetry:{which}"] = apply_functor(base, f"symmetry:{which}")
    return out


# -- lifting along a 2-cocycle ---------------------------------------------------

#: depth and vertical companions, each ``B(x op y, z) = ...``
COMPANIONS = {
    "vee": [P(-1, "y", ("bullet", "x", "z"))],
    "wedge": [P(1, "y", ("tri_l", "x", "z"))],
    "succ": [P(-1, "y", ("circ", "x", "z"))],
    "prec": [P(-1, "y", ("tri_l", "z", "x"))],
}


@dataclass(frozen=True)
class CocycleLift:
    lquadri: MultiAlgebra
    depth: MultiAlgebra
    vertical: MultiAlgebra
    reading: str


def solve_products(G: np.ndarray, products: Mapping[str, OpTensor], rhs: Sequence[P]) -> np.ndarray:
    """Structure constants ``c`` of the product with ``B(x op y, z) = rhs[x, y, z]``.

    ``B(x op y, z) = sum_k c[x, y, k] G[k, z]``, so ``c = rhs G^-1``.
    """
    phi = pairing_tensor(G, products, rhs)
    return scalar.einsum("xyz,zk->xyk", phi, inverse(G))


def check_lift_preconditions(alg: MultiAlgebra, B: BilinearForm) -> None:
    if B.dim != alg.dim:
        raise BimoduleError("form and algebra dimensions differ")
    if not B.is_skew():
        raise BimoduleError("B must be skew-symmetric")
    if not B.is_nondegenerate():
        raise BimoduleError("B is degenerate (a nondegenerate skew form needs even dimension)")
    rep = check_cocycle_ldend(alg, B)
    if not rep.holds:
        raise PreconditionFailed("B is not a 2-cocycle", rep)


def lift_via_cocycle(alg: MultiAlgebra, B: BilinearForm, reading: str = DEFAULT_READING,
                     force: bool = False) -> CocycleLift:
    """Four-operation algebra whose horizontal L-dendriform algebra is ``alg``.

    The products are solved from the invariance relations of ``B`` (see
    :data:`lquadri.forms.INVARIANCE`; ``reading`` picks the sign variant).
    The depth pair ``(vee, wedge)`` and vertical pair ``(succ, prec)`` are
    solved from ``B(x vee y, z) = -B(y, x bullet z)``,
    ``B(y wedge x, z) = B(x, y tri_l z)``, ``B(x succ y, z) = -B(y, x o z)`` and
    ``B(y prec x, z) = -B(x, z tri_l y)``.
    """
    if reading not in INVARIANCE:
        raise BimoduleError(f"unknown reading {reading!r}")
    if not force:
        check_lift_preconditions(alg, B)
    elif not B.is_nondegenerate():
        raise BimoduleError("B is degenerate")
    G = B.matrix
    products = named_products(alg)
    ops = {}
    for name, (lhs, rhs) in INVARIANCE[reading].items():
        ops[lhs[0].left[0]] = solve_products(G, products, rhs)
    comp = {name: solve_products(G, products, rhs) for name, rhs in COMPANIONS.items()}
    return CocycleLift(
        MultiAlgebra(alg.dim, ops, "l-quadri"),
        MultiAlgebra(alg.dim, {"tri_r": comp["vee"], "tri_l": comp["wedge"]}, "l-dendriform"),
        MultiAlgebra(alg.dim, {"tri_r": comp["succ"], "tri_l": comp["prec"]}, "l-dendriform"),
        reading,
    )


# -- Rota-Baxter search ----------------------------------------------------------

DEFAULT_SEARCH_CAP = 200_000


class SearchCapExceeded(BimoduleError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"search space has {size} candidates, above the cap of {cap}")
        self.size = size
        self.cap = cap


def _rb_residual_tensors(alg: MultiAlgebra) -> list[np.ndarray]:
    """Integer structure constants (denominators cleared) of every operation."""
    table, _ = scalar.integer_table({k: v.coeffs for k, v in alg.ops.items()})
    return [np.asarray(t, dtype=object) for t in table.values()]


def search_rb(alg: MultiAlgebra, entries: Iterable = (-1, 0, 1), max_results: int | None = None,
              diagonal: bool = False, cap: int = DEFAULT_SEARCH_CAP) -> list[LinearMap]:
    """Exhaustive search for weight-zero Rota-Baxter operators with entries in a finite set.

    Candidates are enumerated row-major in the order of ``entries`` (the zero
    matrix, when admissible, is reported first).  ``diagonal=True`` restricts
    to diagonal matrices.  Every hit is confirmed by :func:`check_rota_baxter`.
    """
    vals = [scalar.parse_scalar(v) for v in entries]
    if len(set(vals)) != len(vals):
        raise BimoduleError("entry set has repeated values")
    n = alg.dim
    slots = n if diagonal else n * n
    size = len(vals) ** slots
    if size > cap:
        raise SearchCapExceeded(size, cap)
    den = 1
    for v in vals:
        den = den * v.denominator // np.gcd(den, v.denominator)
    ivals = [int(v * den) for v in vals]
    tensors = _rb_residual_tensors(alg)
    found: list[LinearMap] = []

    def emit(M: np.ndarray) -> bool:
        R = LinearMap(M)
        if check_rota_baxter(alg, R).holds:
            found.append(R)
        return max_results is not None and len(found) >= max_results

    zero_first = Fraction(0) in vals
    if zero_first and emit(scalar.zeros((n, n))):
        return found
    if n == 0:
        return found
    for combo in itertools.product(range(len(vals)), repeat=slots):
        if zero_first and all(vals[i] == 0 for i in combo):
            continue
        Mi = np.zeros((n, n), dtype=object)
        if diagonal:
            for k, idx in enumerate(combo):
                Mi[k, k] = ivals[idx]
        else:
            Mi[:, :] = np.array([ivals[idx] for idx in combo], dtype=object).reshape(n, n)
        # integer prefilter: the condition is homogeneous of degree 2 in R
        if not all(_rb_integer_holds(Mi, c) for c in tensors):
            continue
        M = scalar.as_array([[Fraction(v, den) for v in row] for row in Mi])
        if emit(M):
            break
    return found


def _rb_integer_holds(M: np.ndarray, c: np.ndarray) -> bool:
    lhs = np.einsum("ip,jq,ijk->pqk", M, M, c)
    inner = np.einsum("ip,iqk->pqk", M, c) + np.einsum("jq,pjk->pqk", M, c)
    rhs = np.einsum("pqs,ks->pqk", inner, M)
    return bool(np.all(lhs == rhs))


# -- strong-form algebras from associative Rota-Baxter families --------------------

def loday_from_rb(assoc: MultiAlgebra, Rs: Sequence[LinearMap]) -> MultiAlgebra:
    """Dendriform, quadri or octo algebra from 1, 2 or 3 commuting Rota-Baxter
    operators on an associative algebra (product ``circ``).

    One operator: ``x tri_r y = R(x) y``, ``x tri_l y = x R(y)``.  Two:
    ``x se y = R1 R2(x) y``, ``x ne y = R1(x) R2(y)``, ``x sw y = R2(x) R1(y)``,
    ``x nw y = x R1 R2(y)``.  A third operator splits each of these into
    ``op2 = R3(x) op y`` and ``op1 = x op R3(y)``.
    """
    mats = [R.matrix for R in Rs]
    if not 1 <= len(mats) <= 3:
        raise BimoduleError("loday_from_rb takes one, two or three operators")
    c = assoc.op("circ").coeffs
    n = assoc.dim
    I = scalar.identity(n)

    def prod(F, G):
        return scalar.einsum("ai,bj,abk->ijk", F, G, c)

    if len(mats) == 1:
        (R,) = mats
        return MultiAlgebra(n, {"tri_r": prod(R, I), "tri_l": prod(I, R)}, "dendriform")
    R1, R2 = mats[0], mats[1]
    R12 = np.dot(R1, R2)
    quad = {"se": (R12, I), "ne": (R1, R2), "sw": (R2, R1), "nw": (I, R12)}
    if len(mats) == 2:
        return MultiAlgebra(n, {k: prod(F, G) for k, (F, G) in quad.items()}, "quadri")
    R3 = mats[2]
    ops = {}
    for k, (F, G) in quad.items():
        ops[k + "2"] = prod(np.dot(R3, F), G)
        ops[k + "1"] = prod(F, np.dot(R3, G))
    return MultiAlgebra(n, ops, "octo")
