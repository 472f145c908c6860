"""Functors down the tower, plus the transpose/symmetry reshufflings of
L-quadri-algebras.

Every functor is a :class:`FunctorRecipe`: one recipe (see
:func:`lquadri.core.combine_ops`) per target operation.  Outputs are tagged
optimistically with the target kind; certificates come from
:mod:`lquadri.axioms`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import AlgebraError, KIND_OPS, MultiAlgebra, OpTensor, as_recipe, combine_ops


@dataclass(frozen=True)
class FunctorRecipe:
    name: str
    source: str
    target: str
    recipes: Mapping[str, str]
    #: when the input carries ``strong_source``, the output is tagged ``strong_target``
    strong_source: str | None = None
    strong_target: str | None = None

    def __post_init__(self):
        if len(self.recipes) != len(KIND_OPS[self.target]):
            raise AlgebraError(f"{self.name}: target arity mismatch")

    def apply(self, alg: MultiAlgebra) -> MultiAlgebra:
        needed = set(KIND_OPS[self.source])
        if not needed <= set(alg.ops):
            raise AlgebraError(f"{self.name} needs operations {sorted(needed)}, got {sorted(alg.ops)}")
        kind = self.target
        if self.strong_source is not None and alg.kind == self.strong_source:
            kind = self.strong_target
        ops = {name: combine_ops(alg, as_recipe(r)) for name, r in self.recipes.items()}
        return MultiAlgebra(alg.dim, ops, kind)


def _f(name, source, target, recipes, strong=None):
    strong_source, strong_target = strong or (None, None)
    return FunctorRecipe(name, source, target, recipes, strong_source, strong_target)


FUNCTORS: dict[str, FunctorRecipe] = {
    f.name: f
    for f in [
        _f("commutator_lie", "prelie", "lie", {"bracket": "circ - swap(circ)"}),
        _f("ldend_to_prelie:horizontal", "l-dendriform", "prelie", {"circ": "tri_r + tri_l"},
           ("dendriform", "associative")),
        _f("ldend_to_prelie:vertical", "l-dendriform", "prelie", {"circ": "tri_r - swap(tri_l)"}),
        _f("lquadri_to_ldend:vertical", "l-quadri", "l-dendriform",
           {"tri_r": "se + ne", "tri_l": "nw + sw"}, ("quadri", "dendriform")),
        _f("lquadri_to_ldend:depth", "l-quadri", "l-dendriform",
           {"tri_r": "se + sw", "tri_l": "ne + nw"}, ("quadri", "dendriform")),
        _f("lquadri_to_ldend:horizontal", "l-quadri", "l-dendriform",
           {"tri_r": "se - swap(nw)", "tri_l": "ne - swap(sw)"}),
        _f("lquadri_to_prelie:circ", "l-quadri", "prelie",
           {"circ": "se + sw - swap(nw) - swap(ne)"}),
        _f("lquadri_to_prelie:star", "l-quadri", "prelie",
           {"circ": "se + ne + nw + sw"}, ("quadri", "associative")),
        _f("lquadri_to_prelie:bullet", "l-quadri", "prelie",
           {"circ": "se + ne - swap(nw) - swap(sw)"}),
        _f("subadjacent_lie", "l-quadri", "lie",
           {"bracket": "se + ne + nw + sw - swap(se) - swap(ne) - swap(nw) - swap(sw)"}),
        _f("transpose", "l-quadri", "l-quadri",
           {"se": "se", "ne": "sw", "nw": "nw", "sw": "ne"}, ("quadri", "quadri")),
        _f("symmetry:a", "l-quadri", "l-quadri",
           {"se": "se", "ne": "-swap(nw)", "nw": "-swap(ne)", "sw": "sw"}),
        _f("symmetry:b", "l-quadri", "l-quadri",
           {"se": "se", "ne": "sw", "nw": "-swap(ne)", "sw": "-swap(nw)"}),
        _f("symmetry:c", "l-quadri", "l-quadri",
           {"se": "se", "ne": "-swap(nw)", "nw": "-swap(sw)", "sw": "ne"}),
        _f("symmetry:d", "l-quadri", "l-quadri",
           {"se": "se", "ne": "ne", "nw": "-swap(sw)", "sw": "-swap(nw)"}),
        # (se, ne, nw, sw) := (vee2, wedge2, wedge1, vee1)
        _f("octo_project:depth", "l-octo", "l-quadri",
           {"se": "se2 + sw2", "ne": "ne2 + nw2", "nw": "ne1 + nw1", "sw": "se1 + sw1"},
           ("octo", "quadri")),
        # (se, ne, nw, sw) := (succ2, succ1, prec1, prec2)
        _f("octo_project:vertical", "l-octo", "l-quadri",
           {"se": "se2 + ne2", "ne": "se1 + ne1", "nw": "nw1 + sw1", "sw": "nw2 + sw2"},
           ("octo", "quadri")),
        _f("octo_project:sum", "l-octo", "l-quadri",
           {"se": "se1 + se2", "ne": "ne1 + ne2", "nw": "nw1 + nw2", "sw": "sw1 + sw2"},
           ("octo", "quadri")),
        _f("octo_project:mixed", "l-octo", "l-quadri",
           {"se": "se2 - swap(nw1)", "ne": "ne2 - swap(sw1)",
            "nw": "ne1 - swap(sw2)", "sw": "se1 - swap(nw2)"}),
    ]
}


def apply_functor(alg: MultiAlgebra, name: str) -> MultiAlgebra:
    try:
        functor = FUNCTORS[name]
    except KeyError:
        raise AlgebraError(f"unknown functor {name!r}; known: {sorted(FUNCTORS)}") from None
    return functor.apply(alg)


def _flavored(base: str, flavor: str) -> FunctorRecipe:
    key = f"{base}:{flavor}"
    if key not in FUNCTORS:
        raise AlgebraError(f"unknown flavor {flavor!r} for {base}")
    return FUNCTORS[key]


def commutator_lie(alg: MultiAlgebra) -> MultiAlgebra:
    """Lie bracket ``[x, y] = x o y - y o x`` of a pre-Lie (or associative) product."""
    return FUNCTORS["commutator_lie"].apply(alg)


def ldend_to_prelie(alg: MultiAlgebra, flavor: str = "horizontal") -> MultiAlgebra:
    return _flavored("ldend_to_prelie", flavor).apply(alg)


def lquadri_to_ldend(alg: MultiAlgebra, flavor: str = "horizontal") -> MultiAlgebra:
    """Associated horizontal, vertical or depth L-dendriform algebra."""
    return _flavored("lquadri_to_ldend", flavor).apply(alg)


def lquadri_to_prelie(alg: MultiAlgebra, flavor: str = "circ") -> MultiAlgebra:
    return _flavored("lquadri_to_prelie", flavor).apply(alg)


def subadjacent_lie(alg: MultiAlgebra) -> MultiAlgebra:
    return FUNCTORS["subadjacent_lie"].apply(alg)


def transpose(alg: MultiAlgebra) -> MultiAlgebra:
    _check_four(alg)
    return FUNCTORS["transpose"].apply(alg)


def symmetry(alg: MultiAlgebra, which: str) -> MultiAlgebra:
    """One of the four sign-and-swap symmetries ``a``, ``b``, ``c``, ``d``.

    The labels follow the order in which the four symmetries are usually
    listed after the transpose (the second and third are sometimes both
    numbered "(3)"; here they are ``b`` and ``c``).
    """
    _check_four(alg)
    return _flavored("symmetry", which).apply(alg)


def octo_project(alg: MultiAlgebra, which: str) -> MultiAlgebra:
    """Four-operation algebras carried by an eight-operation one.

    ``depth``: (vee2, wedge2, wedge1, vee1); ``vertical``: (succ2, succ1, prec1, prec2);
    ``sum``: the subscript-12 sums; ``mixed``: ``x se2 y - y nw1 x`` and its companions.
    """
    if set(alg.ops) != set(KIND_OPS["l-octo"]):
        raise AlgebraError("octo_project needs an eight-operation algebra")
    return _flavored("octo_project", which).apply(alg)


def _check_four(alg: MultiAlgebra) -> None:
    if set(alg.ops) != set(KIND_OPS["l-quadri"]):
        raise AlgebraError("expected a four-operation algebra (se, ne, nw, sw)")


# -- named products -----------------------------------------------------------

LQUADRI_PRODUCTS: dict[str, str] = {
    "succ": "se + ne",
    "prec": "nw + sw",
    "vee": "se + sw",
    "wedge": "ne + nw",
    "star": "se + ne + nw + sw",
    "tri_r": "se - swap(nw)",
    "tri_l": "ne - swap(sw)",
    "circ": "se + sw - swap(nw) - swap(ne)",
    "bullet": "se + ne - swap(nw) - swap(sw)",
    "bracket": "se + ne + nw + sw - swap(se) - swap(ne) - swap(nw) - swap(sw)",
}

LDEND_PRODUCTS: dict[str, str] = {
    "bullet": "tri_r + tri_l",
    "circ": "tri_r - swap(tri_l)",
    "bracket": "tri_r + tri_l - swap(tri_r) - swap(tri_l)",
}


def named_products(alg: MultiAlgebra) -> dict[str, OpTensor]:
    """Primary operations together with every product named after them.

    For a four-operation algebra: ``succ, prec`` (vertical), ``vee, wedge``
    (depth), ``tri_r, tri_l`` (horizontal), ``circ, star, bullet`` and the
    sub-adjacent ``bracket``.  For a two-operation algebra: ``bullet``,
    ``circ`` and ``bracket``.
    """
    table = alg.ops
    names = set(alg.ops)
    if names == set(KIND_OPS["l-quadri"]):
        extra = LQUADRI_PRODUCTS
    elif names == set(KIND_OPS["l-dendriform"]):
        extra = LDEND_PRODUCTS
    else:
        raise AlgebraError(f"no named products for operations {sorted(names)}")
    for name, recipe in extra.items():
        table[name] = combine_ops(alg.ops, recipe)
    return table


#: identities between derived products of the transformed and original algebra,
#: written as (product of transformed algebra, recipe over original products)
SYMMETRY_PRODUCT_IDENTITIES: dict[str, dict[str, str]] = {
    "transpose": {"vee": "succ", "wedge": "prec", "tri_r": "tri_r", "tri_l": "-swap(tri_l)",
                  "succ": "vee", "prec": "wedge"},
    "symmetry:a": {"vee": "vee", "wedge": "-swap(wedge)", "tri_r": "succ", "tri_l": "-swap(prec)",
                   "succ": "tri_r", "prec": "-swap(tri_l)"},
    "symmetry:b": {"vee": "tri_r", "wedge": "-swap(tri_l)", "tri_r": "succ", "tri_l": "prec",
                   "succ": "vee", "prec": "-swap(wedge)"},
    "symmetry:c": {"vee": "succ", "wedge": "-swap(prec)", "tri_r": "vee", "tri_l": "-swap(wedge)",
                   "succ": "tri_r", "prec": "tri_l"},
    "symmetry:d": {"vee": "tri_r", "wedge": "tri_l", "tri_r": "vee", "tri_l": "wedge",
                   "succ": "succ", "prec": "-swap(prec)"},
}


def symmetry_product_mismatches(alg: MultiAlgebra, which: str) -> list[str]:
    """Products for which the transformed algebra disagrees with the stated formula."""
    transformed = apply_functor(alg, which)
    new = named_products(transformed)
    old = named_products(alg)
    return [
        name for name, recipe in SYMMETRY_PRODUCT_IDENTITIES[which].items()
        if new[name] != combine_ops(old, recipe)
    ]
