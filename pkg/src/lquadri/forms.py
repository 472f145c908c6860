"""Bilinear-form conditions: 2-cocycles, invariance and the extension conditions.

A condition is a list of pairing terms ``coeff * B(left, right)``, where each
slot is a variable (``"x"``) or a product of two variables
(``("tri_r", "z", "x")``).  Both sides of a relation are evaluated on every
basis triple as ``[x, y, z]``-indexed tensors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import scalar
from .core import AlgebraError, BilinearForm, MultiAlgebra
from .derived import lquadri_to_ldend, named_products
from .report import VerificationReport, build_report

Slot = Union[str, tuple]


@dataclass(frozen=True)
class Pairing:
    coeff: int
    left: Slot
    right: Slot


def pairing_tensor(G: np.ndarray, ops: dict, terms: Sequence[Pairing]) -> np.ndarray:
    """``sum coeff * B(left, right)`` on all basis triples, indexed ``[x, y, z]``."""
    n = G.shape[0]
    acc = scalar.zeros((n, n, n))
    eye = scalar.identity(n)
    for t in terms:
        operands, subs = [], []
        for slot, out in ((t.left, "k"), (t.right, "l")):
            if isinstance(slot, str):
                operands.append(eye)
                subs.append(slot + out)
            else:
                op, a, b = slot
                operands.append(ops[op].coeffs)
                subs.append(a + b + out)
        operands.append(G)
        subs.append("kl")
        acc = acc + scalar.einsum(",".join(subs) + "->xyz", *operands) * t.coeff
    return acc


def P(coeff: int, left: Slot, right: Slot) -> Pairing:
    return Pairing(coeff, left, right)


#: B(x tri_l y, z) = -B(y, z o x) + B(x, z bullet y)
LDEND_COCYCLE = {
    "ld-cocycle": ([P(1, ("tri_l", "x", "y"), "z")],
                   [P(-1, "y", ("circ", "z", "x")), P(1, "x", ("bullet", "z", "y"))]),
}

#: invariance of a skew form on a four-operation algebra; ``proof`` flips the
#: signs of the nw and sw relations
INVARIANCE = {
    "statement": {
        "inv-se": ([P(1, ("se", "x", "y"), "z")], [P(-1, "y", ("bracket", "x", "z"))]),
        "inv-nw": ([P(1, ("nw", "x", "y"), "z")], [P(1, "y", ("tri_r", "z", "x"))]),
        "inv-ne": ([P(1, ("ne", "x", "y"), "z")], [P(-1, "y", ("circ", "z", "x"))]),
        "inv-sw": ([P(1, ("sw", "x", "y"), "z")], [P(-1, "y", ("bullet", "z", "x"))]),
    },
    "proof": {
        "inv-se": ([P(1, ("se", "x", "y"), "z")], [P(-1, "y", ("bracket", "x", "z"))]),
        "inv-nw": ([P(1, ("nw", "x", "y"), "z")], [P(-1, "y", ("tri_r", "z", "x"))]),
        "inv-ne": ([P(1, ("ne", "x", "y"), "z")], [P(-1, "y", ("circ", "z", "x"))]),
        "inv-sw": ([P(1, ("sw", "x", "y"), "z")], [P(1, "y", ("bullet", "z", "x"))]),
    },
}
DEFAULT_READING = "statement"

#: symmetric 2-cocycle of a four-operation algebra
LQUADRI_COCYCLE = {
    "lq-cocycle-sw": ([P(1, ("sw", "x", "y"), "z")],
                      [P(-1, "y", ("bullet", "z", "x")), P(-1, "x", ("vee", "z", "y"))]),
    "lq-cocycle-ne": ([P(1, ("ne", "x", "y"), "z")],
                      [P(1, "y", ("wedge", "x", "z")), P(-1, "y", ("vee", "z", "x")),
                       P(-1, "x", ("succ", "z", "y"))]),
}

#: conditions for the one-dimensional central extension (B arbitrary)
EXTENSION = {
    "ext-ne": ([P(1, ("ne", "x", "y"), "z")],
               [P(-1, "y", ("vee", "z", "x")), P(1, "y", ("wedge", "x", "z")),
                P(-1, ("succ", "z", "y"), "x")]),
    "ext-sw": ([P(1, ("sw", "x", "y"), "z")],
               [P(-1, ("tri_r", "z", "x"), "y"), P(-1, ("tri_l", "z", "x"), "y"),
                P(-1, "x", ("vee", "z", "y"))]),
}


def check_relations(alg: MultiAlgebra, B: BilinearForm, relations: dict, subject: str,
                    products: dict | None = None) -> VerificationReport:
    if B.dim != alg.dim:
        raise AlgebraError(f"form has dim {B.dim}, algebra has {alg.dim}")
    ops = products if products is not None else named_products(alg)
    G = B.matrix
    checks = [
        (name, pairing_tensor(G, ops, lhs), pairing_tensor(G, ops, rhs))
        for name, (lhs, rhs) in relations.items()
    ]
    return build_report(subject, checks, witness_axes=3)


def check_cocycle_ldend(alg: MultiAlgebra, B: BilinearForm) -> VerificationReport:
    """2-cocycle of a two-operation algebra; ``B`` must be skew-symmetric."""
    if not B.is_skew():
        raise AlgebraError("a 2-cocycle of an L-dendriform algebra must be skew-symmetric")
    return check_relations(alg, B, LDEND_COCYCLE, "L-dendriform 2-cocycle")


def check_invariant_lquadri(alg: MultiAlgebra, B: BilinearForm, reading: str = DEFAULT_READING) -> VerificationReport:
    """Invariance of a skew-symmetric form on a four-operation algebra."""
    if not B.is_skew():
        raise AlgebraError("an invariant form must be skew-symmetric")
    if reading not in INVARIANCE:
        raise AlgebraError(f"unknown reading {reading!r}")
    return check_relations(alg, B, INVARIANCE[reading], "invariant form")


def check_cocycle_lquadri(alg: MultiAlgebra, B: BilinearForm) -> VerificationReport:
    """Symmetric 2-cocycle of a four-operation algebra."""
    if not B.is_symmetric():
        raise AlgebraError("a 2-cocycle of an L-quadri-algebra must be symmetric")
    return check_relations(alg, B, LQUADRI_COCYCLE, "L-quadri 2-cocycle")


def check_extension_conditions(alg: MultiAlgebra, B: BilinearForm) -> VerificationReport:
    """Conditions on an arbitrary form for the central extension to stay L-quadri."""
    return check_relations(alg, B, EXTENSION, "central-extension conditions")


def skew_part(B: BilinearForm) -> BilinearForm:
    """``omega(x, y) = B(x, y) - B(y, x)``."""
    return BilinearForm(B.matrix - B.matrix.T)


def check_cocycle_on_associated(alg: MultiAlgebra, B: BilinearForm,
                                flavors: Sequence[str] = ("horizontal", "vertical", "depth")) -> dict[str, VerificationReport]:
    """Skew 2-cocycle check on the chosen associated L-dendriform algebras."""
    return {f: check_cocycle_ldend(lquadri_to_ldend(alg, f), B) for f in flavors}
