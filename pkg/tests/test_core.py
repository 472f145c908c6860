from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lquadri import scalar
from lquadri.core import (
    AlgebraError, BilinearForm, LinearMap, MultiAlgebra, OpTensor, combine_ops, det, eval_op, inverse,
    nullspace, opposite, parse_recipe, rank, solve,
)
from strategies import algebras, arrays, rationals


def test_parse_scalar_forms():
    assert scalar.parse_scalar("3/6") == Fraction(1, 2)
    assert scalar.parse_scalar(-4) == -4
    assert scalar.parse_scalar("-2") == -2
    for bad in ("1.5", "a", "1/0", True):
        with pytest.raises((ValueError, TypeError, ZeroDivisionError)):
            scalar.parse_scalar(bad)


@given(rationals)
def test_scalar_format_round_trip(q):
    assert scalar.parse_scalar(scalar.format_scalar(q)) == q


@given(arrays((2, 3), rationals), arrays((3, 2), rationals))
def test_exact_einsum_matches_object_einsum(a, b):
    expected = np.einsum("ij,jk->ik", a.astype(object), b.astype(object))
    assert scalar.equal(scalar.einsum("ij,jk->ik", a, b), expected)


def test_einsum_large_values_fall_back_to_python_ints():
    big = scalar.as_array([[2 ** 40, 1], [3, 2 ** 40]])
    out = scalar.einsum("ij,jk->ik", big, big)
    assert out[0, 0] == 2 ** 80 + 3


def test_eval_op_and_sparse_constructor():
    t = OpTensor.sparse(2, {(0, 1, 1): 1})
    alg = MultiAlgebra(2, {"bracket": t - opposite(t)}, "lie")
    assert scalar.equal(eval_op(alg, "bracket", [1, 0], [0, 1]), scalar.vector([0, 1]))
    assert scalar.equal(eval_op(alg, "bracket", [0, 1], [1, 0]), scalar.vector([0, -1]))


def test_opposite_swaps_arguments():
    t = OpTensor.sparse(2, {(0, 1, 0): 3})
    assert opposite(t)[1, 0, 0] == 3 and opposite(t)[0, 1, 0] == 0
    assert opposite(opposite(t)) == t


@given(algebras("l-quadri", dims=st.integers(1, 2)))
def test_combine_ops_is_linear(alg):
    lhs = combine_ops(alg, "se + 2*ne - swap(nw)")
    rhs = alg.op("se") + 2 * alg.op("ne") - opposite(alg.op("nw"))
    assert lhs == rhs


def test_recipe_parse_errors():
    with pytest.raises(AlgebraError):
        parse_recipe("se +")
    with pytest.raises(AlgebraError):
        combine_ops(MultiAlgebra.zero("lie", 2), "circ")


def test_algebra_rejects_wrong_shapes():
    with pytest.raises(AlgebraError):
        MultiAlgebra(2, {"bracket": scalar.zeros((3, 3, 3))}, "lie")
    with pytest.raises(AlgebraError):
        MultiAlgebra(2, {"circ": scalar.zeros((2, 2, 2))}, "lie")


def test_linear_algebra_helpers():
    m = scalar.as_array([[2, 1], [1, 1]])
    assert det(m) == 1
    assert scalar.equal(inverse(m), scalar.as_array([[1, -1], [-1, 2]]))
    assert rank(scalar.as_array([[1, 2], [2, 4]])) == 1
    ns = nullspace(scalar.as_array([[1, 2], [2, 4]]))
    assert len(ns) == 1 and scalar.is_zero(scalar.einsum("ij,j->i", scalar.as_array([[1, 2], [2, 4]]), ns[0]))
    assert scalar.equal(solve(m, scalar.vector([3, 2])), scalar.vector([1, 1]))


def test_linear_map_and_form():
    R = LinearMap([[0, 1], [0, 0]])
    assert scalar.equal(R([0, 1]), scalar.vector([1, 0]))
    assert not R.is_invertible() and R.rank() == 1
    assert (R @ R) == LinearMap.zero(2, 2)
    B = BilinearForm([[0, 1], [-1, 0]])
    assert B.is_skew() and not B.is_symmetric() and B.is_nondegenerate()
    assert B([1, 0], [0, 1]) == 1 and B([0, 1], [1, 0]) == -1
    S = BilinearForm([[1, 0], [0, 0]])
    assert S.is_symmetric() and not S.is_nondegenerate()


@given(arrays((2, 2)), arrays((2, 2)))
def test_commuting_maps(a, b):
    A, B = LinearMap(a), LinearMap(b)
    assert A.commutes_with(B) == ((A @ B) == (B @ A))
    assert A.commutes_with(A)
