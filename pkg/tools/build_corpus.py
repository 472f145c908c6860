"""Regenerate the bundled example corpus under src/lquadri/data/corpus.

Every example is built from a small seed through library constructions, then
verified; the provenance field records the construction and the check used.
Run from the repository root: ``python tools/build_corpus.py``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from pathlib import Path

from lquadri import scalar
from lquadri.axioms import verify_as
from lquadri.bimodule import lift_via_cocycle, loday_from_rb, rb_tower, search_rb
from lquadri.core import KIND_OPS, BilinearForm, LinearMap, MultiAlgebra, OpTensor, nullspace
from lquadri.forms import LDEND_COCYCLE, LQUADRI_COCYCLE, pairing_tensor
from lquadri.derived import named_products
from lquadri.serialize import dump, wrap
from lquadri.yangbaxter import TensorPair, check_lq_equation, r_from_form

OUT = Path(__file__).resolve().parents[1] / "src" / "lquadri" / "data" / "corpus"

ZERO_NAMES = {
    "lie": "zero-lie-2", "prelie": "zero-prelie-2", "associative": "zero-assoc-2",
    "dendriform": "zero-dendriform-2", "l-dendriform": "zero-ldend-2",
    "quadri": "zero-quadri-2", "l-quadri": "zero-lquadri-2",
    "octo": "zero-octo-2", "l-octo": "zero-locto-2",
}


def save(name, alg, provenance, **extra):
    rep = verify_as(alg, alg.kind)
    if not rep.holds:
        raise SystemExit(f"{name} fails its own kind:\n{rep.render()}")
    dump(wrap(alg, name, provenance, **extra), OUT / f"{name}.json")
    print(f"wrote {name} ({alg.kind}, dim {alg.dim})")


def heisenberg():
    return MultiAlgebra(3, {"bracket": OpTensor.sparse(3, {(0, 1, 2): 1, (1, 0, 2): -1})}, "lie")


def aff1():
    return MultiAlgebra(2, {"bracket": OpTensor.sparse(2, {(0, 1, 0): 1, (1, 0, 0): -1})}, "lie")


def upper_triangular():
    """Upper triangular 2x2 matrices on the basis (E11, E12, E22)."""
    entries = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 2, 1): 1, (2, 2, 2): 1}
    return MultiAlgebra(3, {"circ": OpTensor.sparse(3, entries)}, "associative")


def truncated_polynomials(n):
    return MultiAlgebra(n, {"circ": OpTensor.sparse(n, {(i, j, i + j): 1 for i in range(n)
                                                          for j in range(n) if i + j < n})}, "associative")


def integration(n):
    m = scalar.zeros((n, n))
    for k in range(n - 1):
        m[k + 1, k] = Fraction(1, k + 1)
    return LinearMap(m)


def nnz(alg):
    return sum(1 for t in alg.ops.values() for v in t.coeffs.reshape(-1) if v != 0)


def nonzero_ops(alg):
    return sum(1 for t in alg.ops.values() if not scalar.is_zero(t.coeffs))


def symmetric_lquadri_2():
    """Sparsest 2-dim L-quadri algebra with all four operations nonzero for which
    B = [[0,1],[1,0]] is a symmetric 2-cocycle.  Candidates are sums of at most two
    basis vectors (signs +-1) of the solutions of the linear cocycle condition."""
    B = BilinearForm([[0, 1], [1, 0]])
    names = KIND_OPS["l-quadri"]

    def alg_of(v):
        return MultiAlgebra(2, {o: scalar.as_array(v[8 * i:8 * i + 8]).reshape(2, 2, 2)
                                for i, o in enumerate(names)}, "l-quadri")

    def residual(v):
        ops = named_products(alg_of(v))
        return [x for lhs, rhs in LQUADRI_COCYCLE.values()
                for x in (pairing_tensor(B.matrix, ops, lhs) - pairing_tensor(B.matrix, ops, rhs)).reshape(-1)]

    unit = [[Fraction(int(i == j)) for j in range(32)] for i in range(32)]
    basis = nullspace(scalar.as_array([residual(u) for u in unit]).T)
    best = None
    for k in (1, 2):
        for sel in itertools.combinations(range(len(basis)), k):
            for signs in itertools.product((1, -1), repeat=k):
                v = sum((s * basis[i] for s, i in zip(signs, sel)), scalar.zeros((32,)))
                a = alg_of(list(v))
                if nonzero_ops(a) < 4 or not verify_as(a, "l-quadri").holds:
                    continue
                key = (nnz(a), scalar.to_nested(v))
                if best is None or key < best[0]:
                    best = (key, a)
    return best[1], B


def cocycle_ldend_2():
    """Densest 2-dim L-dendriform algebra (coefficients from a {-1,0,1} grid on the
    solution space of the cocycle condition) with B = [[0,1],[-1,0]] a 2-cocycle."""
    B = BilinearForm([[0, 1], [-1, 0]])

    def alg_of(v):
        return MultiAlgebra(2, {"tri_r": scalar.as_array(v[:8]).reshape(2, 2, 2),
                                "tri_l": scalar.as_array(v[8:]).reshape(2, 2, 2)}, "l-dendriform")

    def residual(v):
        a = alg_of(v)
        lhs, rhs = LDEND_COCYCLE["ld-cocycle"]
        ops = named_products(a)
        return (pairing_tensor(B.matrix, ops, lhs) - pairing_tensor(B.matrix, ops, rhs)).reshape(-1)

    unit = [[Fraction(int(i == j)) for j in range(16)] for i in range(16)]
    M = scalar.as_array([list(residual(u)) for u in unit]).T
    basis = nullspace(M)
    best = None
    for coeffs in itertools.product((-1, 0, 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = sum((c * b for c, b in zip(coeffs, basis)), scalar.zeros((16,)))
        a = alg_of(list(v))
        if verify_as(a, "l-dendriform").holds:
            lifted = lift_via_cocycle(a, B).lquadri
            key = (nonzero_ops(lifted), nnz(lifted), nnz(a))
            if best is None or key > best[0]:
                best = (key, a)
    return best[1], B


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for kind, name in ZERO_NAMES.items():
        save(name, MultiAlgebra.zero(kind, 2), "All structure constants zero. Oracle: every identity term vanishes.")

    h, R = heisenberg(), LinearMap.diagonal([1, 0, 0])
    save("heisenberg", h, "Heisenberg Lie algebra [e1,e2]=e3 with the Rota-Baxter operator R=diag(1,0,0). "
         "Oracle: R checked exhaustively over all basis pairs.", maps={"R": R})
    a, S = aff1(), LinearMap([[0, 1], [0, 0]])
    save("aff1", a, "Two-dimensional non-abelian Lie algebra [e1,e2]=e1 with the Rota-Baxter operator "
         "R: e2 -> e1, e1 -> 0. Oracle: exhaustive search over {-1,0,1} entries.", maps={"R": S})
    save("aff1-prelie", rb_tower(a, [S]), "x o y = [R(x), y] on aff1. Oracle: direct bracket evaluation, "
         "then pre-Lie verification.")
    save("heisenberg-prelie", rb_tower(h, [R]), "x o y = [R(x), y] on heisenberg, R=diag(1,0,0). "
         "Oracle: e1 o e2 = e3 by hand, then pre-Lie verification.", maps={"R": R})
    save("heisenberg-ldend", rb_tower(h, [R, R]), "x tri_r y = [R1 R2 x, y], x tri_l y = [R2 x, R1 y] on "
         "heisenberg with R1=R2=diag(1,0,0). Oracle: L-dendriform verification.", maps={"R": R})
    save("heisenberg-lquadri", rb_tower(h, [R, R, R]), "Three-operator construction on heisenberg with "
         "R1=R2=R3=diag(1,0,0): only e1 se e2 = e3. Oracle: L-quadri verification.", maps={"R": R})

    d, B = cocycle_ldend_2()
    save("cocycle-ldend-2", d, "2-dim L-dendriform algebra with the nondegenerate 2-cocycle "
         "B=[[0,1],[-1,0]], found by enumerating {-1,0,1} combinations of a basis of the solutions of "
         "the (linear) cocycle condition. Oracle: L-dendriform and cocycle checks.", forms={"B": B})
    lq = lift_via_cocycle(d, B).lquadri
    sym = []
    for p, q, s in itertools.product(range(-2, 3), repeat=3):
        r = TensorPair(lq, [[p, q], [q, s]])
        if p * s != q * q and check_lq_equation(lq, r).holds:
            sym.append(r)
    tensors = {"r": sym[0].entries} if sym else {}
    save("cocycle-lquadri-2", lq, "Lift of cocycle-ldend-2 along its 2-cocycle B; B is invariant. "
         "r (if present) is an invertible symmetric solution of the LQ-equation found by enumerating "
         "entries in {-2..2}. Oracle: L-quadri verification and horizontal projection equals the base.",
         forms={"B": B}, tensors=tensors)

    sq, C = symmetric_lquadri_2()
    r = r_from_form(sq, C)
    if not check_lq_equation(sq, r).holds:
        raise SystemExit("symmetric-lquadri-2: r fails the LQ-equation")
    save("symmetric-lquadri-2", sq, "2-dim L-quadri-algebra with the nondegenerate symmetric 2-cocycle "
         "B=[[0,1],[1,0]]; r is the symmetric tensor whose map is the inverse of B. Found as the sparsest "
         "sum of at most two basis solutions of the linear cocycle condition with all four operations "
         "nonzero. Oracle: L-quadri, cocycle and LQ-equation checks.", forms={"B": C}, tensors={"r": r.entries})

    ut = upper_triangular()
    save("upper-triangular", ut, "Upper triangular 2x2 matrices (E11, E12, E22). Oracle: associativity check.")
    rbs = search_rb(ut)
    R1 = max(rbs, key=lambda m: nnz(loday_from_rb(ut, [m])))
    dend = loday_from_rb(ut, [R1])
    save("dendriform-ut", dend, "x tri_r y = R(x)y, x tri_l y = xR(y) on upper-triangular with the "
         "densest {-1,0,1} Rota-Baxter operator R. Oracle: dendriform verification.", maps={"R": R1})
    pairs = [(p, q) for p in rbs for q in rbs if p.commutes_with(q)]
    P1, P2 = max(pairs, key=lambda pq: nnz(loday_from_rb(ut, list(pq))))
    save("quadri-ut", loday_from_rb(ut, [P1, P2]), "se = R1R2(x)y, ne = R1(x)R2(y), sw = R2(x)R1(y), "
         "nw = xR1R2(y) on upper-triangular for commuting Rota-Baxter R1, R2. Oracle: quadri verification.",
         maps={"R1": P1, "R2": P2})
    save("dendriform-deg", MultiAlgebra(3, {"tri_r": ut.op("circ"), "tri_l": OpTensor.zero(3)}, "dendriform"),
         "Degenerate pattern: tri_l = 0, tri_r the upper-triangular product. Oracle: with tri_l = 0 the "
         "dendriform axioms reduce to associativity.")
    save("quadri-deg", MultiAlgebra(3, {"se": ut.op("circ"), "ne": OpTensor.zero(3), "nw": OpTensor.zero(3),
                                        "sw": OpTensor.zero(3)}, "quadri"),
         "Degenerate pattern: ne = nw = sw = 0, se the upper-triangular product. Oracle: every strong side "
         "reduces to associativity or vanishes.")
    ldend = dend.with_kind("l-dendriform")
    S2 = max(search_rb(ldend), key=lambda m: nnz(rb_tower(ldend, [m])))
    save("lquadri-rb", rb_tower(ldend, [S2]), "se = R(x) tri_r y, nw = -y tri_r R(x), ne = R(x) tri_l y, "
         "sw = -y tri_l R(x) on dendriform-ut (as an L-dendriform algebra) with the densest {-1,0,1} "
         "Rota-Baxter operator. Oracle: L-quadri verification.", maps={"R": S2})
    poly, I = truncated_polynomials(6), integration(6)
    save("octo-poly", loday_from_rb(poly, [I, I, I]), "Three copies of integration R(t^k)=t^(k+1)/(k+1) on "
         "k[t]/(t^6): op2 = R3(x) op y, op1 = x op R3(y) over the quadri products. Oracle: octo verification.",
         maps={"R": I})


if __name__ == "__main__":
    main()
