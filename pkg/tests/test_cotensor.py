import itertools

from hypothesis import given, strategies as st

from cofrob.coalgebra import (corestrict, counit_morphism, ground_coalgebra, identity_morphism, regular_bicomodule,
                              regular_left, regular_right, zero_comodule, direct_sum, cofree)
from cofrob.cotensor import (cotensor, embedding_commutes, extension_cotensor, image_invariance, iota, omega)
from cofrob.exact_linalg import QQ, kernel
from cofrob.zoo import (dual_numbers, dual_of_square_zero_local, grouplike, matrix_coalgebra, set_map_extension,
                        trivial_extension)

from helpers import F5, coalgebras, fields, oracle_rank, suite


def _brute_kernel_dim(M, N):
    """dim M (x) N minus the rank of omega built entry by entry from the coaction tensors."""
    f = M.field
    m, n, d = M.dim, N.dim, M.over.dim
    import sympy
    W = sympy.zeros(m * d * n, m * n)
    for (i, j, k), v in M.coaction.items():
        for b in range(n):
            W[(j * d + k) * n + b, i * n + b] += int(v) if f.p else sympy.Rational(str(v))
    for (i, j, k), v in N.coaction.items():
        for a in range(m):
            W[(a * d + k) * n + j, a * n + i] -= int(v) if f.p else sympy.Rational(str(v))
    if f.p:
        from sympy.polys.matrices import DomainMatrix
        W = DomainMatrix.from_Matrix(W).convert_to(sympy.GF(f.p))
    return m * n - W.rank()


def test_omega_over_trivial_coalgebra_is_zero():
    K = ground_coalgebra(QQ)
    C = dual_numbers()
    M = corestrict(regular_right(C), counit_morphism(C))
    N = corestrict(regular_left(C), counit_morphism(C))
    assert omega(M, N).is_zero()
    assert cotensor(M, N).dim == 4
    assert M.over == K


def test_omega_on_grouplike_two():
    D = grouplike(2)
    W = omega(regular_right(D), regular_left(D))
    assert oracle_rank(W) == 2
    assert kernel(W).ncols == 2 == _brute_kernel_dim(regular_right(D), regular_left(D))


def test_dual_numbers_over_itself():
    D = dual_numbers()
    T = cotensor(regular_right(D), regular_left(D))
    assert T.dim == 2 == _brute_kernel_dim(regular_right(D), regular_left(D))


def test_self_cotensor_has_dim_of_coalgebra():
    for C in (grouplike(3), dual_numbers(), matrix_coalgebra(2), dual_of_square_zero_local(2)):
        assert cotensor(regular_bicomodule(C), regular_bicomodule(C)).dim == C.dim


def test_set_map_cotensor_counts_fibre_pairs():
    for f in ([0, 0], [0, 1, 1], [0, 1, 2], [1, 1, 0, 2]):
        lam = set_map_extension(f, 3)
        expected = sum(1 for s, t in itertools.product(f, repeat=2) if s == t)
        assert extension_cotensor(lam).dim == expected


def test_iota_examples():
    for lam in (identity_morphism(dual_numbers()), trivial_extension(dual_numbers()),
                set_map_extension([0, 0], 1)):
        r = iota(lam)
        assert r.ok
        assert r.space.dim == lam.source.dim
    # counit contraction over K: (1 (x) c) -> c
    r = iota(trivial_extension(dual_numbers()))
    assert r.forward.is_identity() and r.space.basis.is_identity()


def test_image_invariance_examples():
    surj = image_invariance(set_map_extension([0, 1, 1], 2))
    assert surj.ok and surj.image.dim == 2
    inc = image_invariance(set_map_extension([0], 2))
    assert inc.ok and inc.image.dim == 1 and inc.kernel_D.dim == inc.kernel_E.dim == 1
    tri = image_invariance(trivial_extension(dual_numbers()))
    assert tri.ok and tri.image.dim == 1


def test_zero_dimensional_factor():
    D = dual_numbers()
    T = cotensor(zero_comodule(D, "right"), regular_left(D))
    assert T.dim == 0 and T.ambient_dim == 0


@given(coalgebras(max_dim=4))
def test_regular_cotensor_invariants(C):
    B = regular_bicomodule(C)
    T = cotensor(B, B)
    W = omega(B.right, B.left)
    assert (W @ T.basis).is_zero()
    assert T.basis.rank() == T.dim == T.ambient_dim - W.rank()
    assert T.bicomodule.report.ok
    assert embedding_commutes(T)


@given(coalgebras(max_dim=3), st.integers(1, 2), st.integers(1, 2))
def test_trivial_base_gives_full_tensor_product(C, a, b):
    lam = counit_morphism(C)
    M = corestrict(cofree(C, a), lam)
    N = corestrict(cofree(C, b, "left"), lam)
    assert cotensor(M, N).dim == M.dim * N.dim


@given(st.lists(st.integers(0, 2), min_size=1, max_size=4), fields)
def test_extension_cotensor_against_brute_force(f, field):
    lam = set_map_extension(f, 3, field)
    C = lam.source
    M = corestrict(regular_right(C), lam)
    N = corestrict(regular_left(C), lam)
    T = extension_cotensor(lam)
    assert T.dim == _brute_kernel_dim(M, N)
    assert embedding_commutes(T)
    assert iota(lam).ok


def test_suite_iota_and_invariance():
    for field in (QQ, F5):
        for name, lam in suite(field):
            assert iota(lam).ok, name
            assert image_invariance(lam).ok, name


@given(coalgebras(max_dim=3))
def test_direct_sum_cotensor_is_additive(C):
    B = regular_bicomodule(C)
    S = direct_sum(regular_right(C), regular_right(C))
    assert cotensor(S, B).dim == 2 * C.dim
