import pytest
from hypothesis import given
from hypothesis import strategies as st

from lquadri.axioms import holds, verify_as
from lquadri.core import AlgebraError, MultiAlgebra
from lquadri.derived import (
    FUNCTORS, SYMMETRY_PRODUCT_IDENTITIES, apply_functor, commutator_lie, ldend_to_prelie, lquadri_to_ldend,
    lquadri_to_prelie, octo_project, subadjacent_lie, symmetry, symmetry_product_mismatches, transpose,
)
from strategies import algebras

TRANSFORMS = ["transpose", "symmetry:a", "symmetry:b", "symmetry:c", "symmetry:d"]


def lie_routes(alg):
    routes = {"direct": subadjacent_lie(alg)}
    for flavor in ("horizontal", "vertical", "depth"):
        d = lquadri_to_ldend(alg, flavor)
        for pflavor in ("horizontal", "vertical"):
            routes[f"{flavor}/{pflavor}"] = commutator_lie(ldend_to_prelie(d, pflavor))
    for flavor in ("circ", "star", "bullet"):
        routes[f"prelie:{flavor}"] = commutator_lie(lquadri_to_prelie(alg, flavor))
    return routes


def test_all_routes_to_the_lie_algebra_agree_on_corpus(lquadri_examples):
    for name, alg in lquadri_examples.items():
        routes = lie_routes(alg)
        direct = routes["direct"].op("bracket")
        for label, lie in routes.items():
            assert lie.op("bracket") == direct, (name, label)
        assert holds(routes["direct"], "lie")


@given(algebras("l-quadri", dims=st.integers(1, 3)))
def test_lie_routes_agree_as_tensor_identities(alg):
    routes = lie_routes(alg)
    assert len({r.op("bracket") for r in routes.values()}) == 1


def test_derived_structures_of_corpus_pass_their_systems(lquadri_examples):
    for name, alg in lquadri_examples.items():
        for flavor in ("horizontal", "vertical", "depth"):
            assert verify_as(lquadri_to_ldend(alg, flavor), "l-dendriform").holds, (name, flavor)
        for flavor in ("circ", "star", "bullet"):
            assert verify_as(lquadri_to_prelie(alg, flavor), "prelie").holds, (name, flavor)


def test_strong_tags_propagate(bundle):
    q = bundle["quadri-ut"].algebra
    assert lquadri_to_ldend(q, "vertical").kind == "dendriform"
    assert holds(lquadri_to_ldend(q, "vertical"))
    assert holds(lquadri_to_ldend(q, "depth"), "dendriform")
    assert lquadri_to_prelie(q, "star").kind == "associative"
    assert holds(lquadri_to_prelie(q, "star"))
    assert lquadri_to_ldend(q, "horizontal").kind == "l-dendriform"


@pytest.mark.parametrize("which", TRANSFORMS)
def test_transforms_preserve_the_corpus(lquadri_examples, which):
    for name, alg in lquadri_examples.items():
        out = apply_functor(alg, which)
        assert verify_as(out, "l-quadri").holds, (name, which)
        assert symmetry_product_mismatches(alg, which) == [], (name, which)


@pytest.mark.parametrize("which", TRANSFORMS)
@given(alg=algebras("l-quadri", dims=st.integers(1, 2)))
def test_transforms_are_invertible_and_products_follow(which, alg):
    # b and c are mutually inverse; the other three are involutions
    inverse = {"symmetry:b": "symmetry:c", "symmetry:c": "symmetry:b"}.get(which, which)
    assert apply_functor(apply_functor(alg, which), inverse) == alg
    assert symmetry_product_mismatches(alg, which) == []


@pytest.mark.parametrize("which", TRANSFORMS)
@given(alg=algebras("l-quadri", dims=st.just(2), elements=st.sampled_from([0, 0, 0, 1, -1])))
def test_transforms_preserve_the_axioms(which, alg):
    assert holds(alg, "l-quadri") == holds(apply_functor(alg, which), "l-quadri")


def test_transpose_and_symmetry_wrappers(lquadri_examples):
    alg = lquadri_examples["cocycle-lquadri-2"]
    assert transpose(alg) == apply_functor(alg, "transpose")
    assert symmetry(alg, "c") == apply_functor(alg, "symmetry:c")
    with pytest.raises(AlgebraError):
        symmetry(alg, "e")
    with pytest.raises(AlgebraError):
        transpose(MultiAlgebra.zero("l-dendriform", 2))


@pytest.mark.parametrize("which", ["depth", "vertical", "sum", "mixed"])
def test_octo_projections(bundle, which):
    octo = bundle["octo-poly"].algebra
    out = octo_project(octo, which)
    assert verify_as(out, "l-quadri").holds
    if which != "mixed":
        assert out.kind == "quadri" and holds(out, "quadri")


def test_functor_table_is_consistent():
    assert set(SYMMETRY_PRODUCT_IDENTITIES) == set(TRANSFORMS)
    assert {"commutator_lie", "subadjacent_lie", "transpose"} <= set(FUNCTORS)
    with pytest.raises(AlgebraError):
        apply_functor(MultiAlgebra.zero("lie", 2), "transpose")
    with pytest.raises(AlgebraError):
        apply_functor(MultiAlgebra.zero("lie", 2), "no-such-functor")
