import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from cofrob.coalgebra import counit_morphism, identity_morphism
from cofrob.dual_algebra import (Algebra, AlgebraMorphism, bimodule_hom_space, check_frobenius_ring_extension,
                                 dual_cotensor_iso, dual_hom_iso, dualize_coalgebra, dualize_extension,
                                 ground_algebra, is_central, is_module_map, regular_module, restricted_module,
                                 ring_tensor, unit_map, validate_algebra, verify_ring_witness)
from cofrob.coalgebra import AxiomError
from cofrob.exact_linalg import GF, QQ, Matrix
from cofrob.verdict import NO, YES
from cofrob.zoo import dual_numbers, dual_of_square_zero_local, grouplike, matrix_coalgebra, set_map_extension

from helpers import coalgebras, fields, point_inclusion, suite


def _relations_rank_oracle(phi):
    """Rank of the balancing relations, assembled densely in sympy."""
    A, B = phi.source, phi.target
    n = B.dim
    T = {(i, j): {} for i in range(n) for j in range(n)}
    for (i, j, k), v in B.mult.items():
        T[(i, j)][k] = v
    rows = []
    for b, a, bp in itertools.product(range(n), range(A.dim), range(n)):
        pa = phi.image(a)
        row = [0] * (n * n)
        for c, w in enumerate(pa):
            for k, v in T[(b, c)].items():
                row[k * n + bp] += w * v
            for k, v in T[(c, bp)].items():
                row[b * n + k] -= w * v
        rows.append(row)
    M = sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in rows])
    return M.rank()


def _frobenius_form_exists(B: Algebra) -> bool:
    """Over a small prime field: some linear form l with l(xy) nondegenerate."""
    p = B.field.p
    n = B.dim
    for l in itertools.product(range(p), repeat=n):
        G = sympy.Matrix(n, n, lambda x, y: sum(l[k] * v for (i, j, k), v in B.mult.items() if (i, j) == (x, y)))
        if G.det() % p:
            return True
    return False


def test_dual_of_grouplike_is_split():
    A = dualize_coalgebra(grouplike(3))
    assert A.mult == {(i, i, i): 1 for i in range(3)}
    assert A.unit == (1, 1, 1)


def test_dual_numbers_dualize_to_truncated_polynomials():
    A = dualize_coalgebra(dual_numbers())
    # g* is the unit, x* squares to zero
    assert A.mult == {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
    assert A.unit == (1, 0)


def test_matrix_coalgebra_dualizes_to_matrix_algebra():
    A = dualize_coalgebra(matrix_coalgebra(2))
    for i, j, k, l in itertools.product(range(2), repeat=4):
        prod = A.product(tuple(int(x == 2 * i + j) for x in range(4)), tuple(int(x == 2 * k + l) for x in range(4)))
        want = tuple(int(j == k and x == 2 * i + l) for x in range(4))
        assert prod == want


def test_dualize_extension_examples():
    C = dual_numbers()
    assert dualize_extension(identity_morphism(C)).matrix.is_identity()
    phi = dualize_extension(counit_morphism(C))
    assert phi.matrix.column(0) == dualize_coalgebra(C).unit
    fold = dualize_extension(set_map_extension([0, 0], 1))
    assert fold.matrix.column(0) == (1, 1)


def test_bimodule_hom_dims():
    KK = dualize_coalgebra(grouplike(2))
    assert bimodule_hom_space(regular_module(KK), regular_module(KK)).dim == 2
    M2 = dualize_coalgebra(matrix_coalgebra(2))
    assert bimodule_hom_space(regular_module(M2), regular_module(M2)).dim == 1
    K = ground_algebra(QQ)
    assert bimodule_hom_space(regular_module(K), regular_module(K)).dim == 1


def test_ring_tensor_dims():
    KK = dualize_coalgebra(grouplike(2))
    ident = AlgebraMorphism(KK, KK, Matrix.identity(QQ, 2))
    assert ring_tensor(ident).dim == 2
    assert ring_tensor(unit_map(KK)).dim == 4
    B = dualize_coalgebra(matrix_coalgebra(2))
    assert ring_tensor(unit_map(B)).dim == 16
    for phi in (ident, unit_map(KK), unit_map(B)):
        RT = ring_tensor(phi)
        assert (RT.projection @ RT.section).is_identity()
        assert RT.relations_rank == _relations_rank_oracle(phi)


def test_ring_frobenius_examples():
    B = dualize_coalgebra(dual_numbers())
    ident = AlgebraMorphism(B, B, Matrix.identity(QQ, 2))
    v = check_frobenius_ring_extension(ident)
    assert v.status == YES and verify_ring_witness(ident, v.witness)
    v = check_frobenius_ring_extension(unit_map(B))
    assert v.status == YES
    # a Frobenius form on K[x]/(x^2) must see x
    assert v.witness.E[0, 1] != 0
    assert verify_ring_witness(unit_map(B), v.witness)
    assert is_central(ring_tensor(unit_map(B)), v.witness.h_class)
    S = dualize_coalgebra(dual_of_square_zero_local(2))
    v = check_frobenius_ring_extension(unit_map(S))
    assert v.status == NO and v.evidence == "det-family-identically-zero"
    assert v.family.route in ("grid", "exhaustive", "symbolic")


def test_inclusion_into_dual_numbers_is_not_projective():
    # dual of K -> C is the augmentation K[x]/(x^2) -> K, and K is not projective over K[x]/(x^2)
    C = dual_numbers()
    phi = dualize_extension(point_inclusion(C))
    v = check_frobenius_ring_extension(phi)
    assert v.status == NO and v.evidence == "not-projective"


def test_invalid_algebra_is_refused():
    with pytest.raises(AxiomError):
        Algebra(QQ, 2, {(0, 0, 0): 1, (1, 1, 1): 1}, (1, 0))
    assert not validate_algebra(Algebra(QQ, 1, {(0, 0, 0): 2}, (1,), check=False)).ok


@pytest.mark.parametrize("name,lam", suite(QQ)[:12], ids=[n for n, _ in suite(QQ)[:12]])
def test_duality_isomorphisms_on_suite(name, lam):
    c = dual_cotensor_iso(lam)
    assert c.ok, c.dims
    h = dual_hom_iso(lam)
    assert h.ok


@given(coalgebras(max_dim=4))
def test_dual_algebra_is_valid_and_transposes_back(C):
    A = dualize_coalgebra(C)
    assert A.report.ok
    assert {(i, j, k): v for (j, k, i), v in A.mult.items()} == C.delta


@given(st.lists(st.integers(0, 2), min_size=1, max_size=4), st.lists(st.integers(0, 1), min_size=3, max_size=3),
       fields)
def test_dualize_is_contravariant(f, g, field):
    lam = set_map_extension(f, 3, field)
    mu = set_map_extension(g, 2, field)
    assert dualize_extension(mu.compose(lam)).matrix == dualize_extension(lam).matrix @ dualize_extension(mu).matrix


@given(coalgebras(field=GF(3), max_dim=3, twist=False))
def test_unit_map_verdict_matches_frobenius_form_search(C):
    B = dualize_coalgebra(C)
    v = check_frobenius_ring_extension(unit_map(B))
    assert v.is_yes == _frobenius_form_exists(B)
    if v.is_yes:
        assert verify_ring_witness(unit_map(B), v.witness)
        assert is_central(ring_tensor(unit_map(B)), v.witness.h_class)


@given(coalgebras(max_dim=4))
def test_witness_E_is_bimodule_map(C):
    phi = unit_map(dualize_coalgebra(C))
    v = check_frobenius_ring_extension(phi)
    if v.is_yes:
        assert is_module_map(v.witness.E, restricted_module(phi.target, phi), regular_module(phi.source))
