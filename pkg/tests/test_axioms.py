from fractions import Fraction

import pytest
from hypothesis import given

from lquadri import scalar
from lquadri.axioms import builtin_system, holds, parse_identity, verify, verify_as, verify_kind
from lquadri.core import KIND_OPS, STRONG_TO_L, AlgebraError, MultiAlgebra, combine_ops, eval_op
from split_oracle import oracle_relations, span_rank, table_relations
from strategies import sparse_algebras

COUNTS = {"lie": 2, "prelie": 1, "associative": 1, "dendriform": 3, "l-dendriform": 2,
          "quadri": 9, "l-quadri": 5, "octo": 27, "l-octo": 14}


@pytest.mark.parametrize("tag,count", sorted(COUNTS.items()))
def test_identity_counts(tag, count):
    assert len(builtin_system(tag).identities) == count


@pytest.mark.parametrize("kind", sorted(KIND_OPS))
def test_zero_algebras_pass_every_system_of_their_arity(kind):
    for tag in KIND_OPS:
        if KIND_OPS[tag] == KIND_OPS[kind]:
            for n in (1, 2, 3):
                assert verify_as(MultiAlgebra.zero(kind, n), tag).holds


@pytest.mark.parametrize("tag", ["dendriform", "quadri", "octo"])
def test_strong_relations_match_splitting_oracle(tag):
    oracle, table = oracle_relations(tag), table_relations(tag)
    assert span_rank(oracle) == span_rank(table) == span_rank(oracle, table) == len(oracle)


def _naive_side(alg, system, terms, basis):
    """Evaluate one side on basis vectors with eval_op only."""
    n = alg.dim
    ops = dict(alg.ops)
    for name, recipe in system.derived_ops.items():
        ops[name] = combine_ops(alg.ops, recipe)
    ext = MultiAlgebra(n, ops, "raw")
    vec = {v: [int(i == b) for i in range(n)] for v, b in basis.items()}
    acc = scalar.zeros((n,))
    for t in terms:
        a, b = vec[t.variables[0]], vec[t.variables[1]]
        if t.inner is None:
            val = eval_op(ext, t.outer, a, b)
        elif t.nesting == "right":
            val = eval_op(ext, t.outer, a, eval_op(ext, t.inner, b, vec[t.variables[2]]))
        else:
            val = eval_op(ext, t.outer, eval_op(ext, t.inner, a, b), vec[t.variables[2]])
        acc = acc + val * t.coeff
    return acc


def naive_holds(alg, tag):
    system = builtin_system(tag)
    n = alg.dim
    for ident in system.identities:
        for idx in scalar.np.ndindex(*(n,) * len(ident.variables)):
            basis = dict(zip(ident.variables, idx))
            if not scalar.equal(_naive_side(alg, system, ident.lhs, basis),
                                _naive_side(alg, system, ident.rhs, basis)):
                return False
    return True


@pytest.mark.parametrize("tag", ["prelie", "l-dendriform", "dendriform", "l-quadri", "quadri"])
@given(data=__import__("hypothesis").strategies.data())
def test_verify_agrees_with_naive_evaluation(tag, data):
    alg = data.draw(sparse_algebras(tag, n=2, max_entries=3))
    assert verify_as(alg, tag).holds == naive_holds(alg, tag)


@pytest.mark.parametrize("strong", sorted(STRONG_TO_L))
@given(data=__import__("hypothesis").strategies.data())
def test_strong_form_implies_left_symmetric_form(strong, data):
    alg = data.draw(sparse_algebras(strong, n=2, max_entries=3))
    if holds(alg, strong):
        assert holds(alg, STRONG_TO_L[strong])


def test_corpus_strong_examples_pass_their_l_counterparts(bundle):
    seen = set()
    for name, f in bundle.items():
        kind = f.algebra.kind
        if kind in STRONG_TO_L:
            assert verify_as(f.algebra, STRONG_TO_L[kind]).holds, name
            seen.add(kind)
    assert {"dendriform", "quadri", "octo", "associative"} <= seen


def test_every_corpus_file_passes_its_kind(bundle):
    for name, f in bundle.items():
        assert verify_kind(f.algebra).holds, name


def test_single_entry_mutation_is_detected(bundle):
    alg = bundle["quadri-ut"].algebra
    ops = {k: v.coeffs.copy() for k, v in alg.ops.items()}
    ops["ne"][0, 1, 1] += 1
    rep = verify(MultiAlgebra(3, ops, "quadri"), builtin_system("quadri"))
    assert not rep.holds
    assert rep.failures == sorted(rep.failures, key=lambda f: rep.names.index(f.identity))


def test_witness_is_lexicographically_first_violation():
    bad = MultiAlgebra(2, {"circ": scalar.as_array([[[0, 1], [0, 0]], [[1, 0], [0, 0]]])}, "associative")
    rep = verify_kind(bad)
    assert not rep.holds
    f = rep.failures[0]
    system = builtin_system("associative")
    ident = system.identities[0]
    first = next(idx for idx in scalar.np.ndindex(2, 2, 2)
                 if not scalar.equal(_naive_side(bad, system, ident.lhs, dict(zip(ident.variables, idx))),
                                     _naive_side(bad, system, ident.rhs, dict(zip(ident.variables, idx)))))
    assert f.index == first
    assert f.basis == tuple(i + 1 for i in first)
    assert "fails at (e" in f.describe()


def test_fractional_structure_constants():
    alg = MultiAlgebra(1, {"circ": scalar.as_array([[[Fraction(1, 2)]]])}, "associative")
    assert holds(alg)


def test_kind_mismatch_raises():
    with pytest.raises(AlgebraError):
        verify_as(MultiAlgebra.zero("lie", 2), "l-quadri")
    with pytest.raises(AlgebraError):
        builtin_system("nonsense")


def test_identity_parser_round_trip():
    ident = parse_identity("t", "x se (y ne z) - 2*(x star y) nw z = 0")
    assert ident.operations() == {"se", "ne", "star", "nw"}
    assert "2*(x star y) nw z" in ident.render()
