import pytest
from hypothesis import given, settings, strategies as st

from cofrob.coalgebra import (InputError, corestrict, direct_sum, identity_morphism, is_injective_comodule,
                              regular_left, regular_right, zero_comodule)
from cofrob.cotensor import extension_cotensor, iota
from cofrob.exact_linalg import QQ, Matrix
from cofrob.frobenius import (BalanceError, FrobeniusCertificate, balance_violations, check_frobenius_extension,
                              counit_transformation, frobenius_system, gamma_condition, gamma_form,
                              identity_certificate, reconstruct_beta, system_identities, triangle_check,
                              unit_transformation, verify_certificate)
from cofrob.verdict import NO, YES
from cofrob.zoo import (dual_numbers, dual_of_square_zero_local, grouplike, matrix_coalgebra, set_map_extension,
                        standard_comodules, trivial, trivial_extension)

from helpers import coalgebras, fields


def _bump(M: Matrix, r: int, c: int) -> Matrix:
    f = M.field
    return Matrix(f, M.nrows, M.ncols, tuple(tuple(f.canon(v + 1) if (i, j) == (r, c) else v
                                                   for j, v in enumerate(row)) for i, row in enumerate(M.data)))


def test_identity_extensions_are_frobenius():
    for C in (grouplike(2), dual_numbers(), matrix_coalgebra(2), dual_of_square_zero_local(2)):
        lam = identity_morphism(C)
        cert = identity_certificate(C)
        assert cert.alpha.is_identity()
        assert verify_certificate(lam, cert)
        v = check_frobenius_extension(lam)
        assert v.status == YES and verify_certificate(lam, v.witness)


def test_square_zero_local_over_ground_is_not_frobenius():
    lam = trivial_extension(dual_of_square_zero_local(2))
    v = check_frobenius_extension(lam)
    assert v.status == NO and v.evidence == "det-family-identically-zero"
    assert v.exit_code == 1
    assert check_frobenius_extension(lam, route="primal").status == NO


def test_grouplike_fold_is_frobenius():
    lam = trivial_extension(grouplike(2))
    v = check_frobenius_extension(lam)
    assert v.status == YES
    cert = v.witness
    # beta(c_1 (x) alpha lam(c_2)) = c on both grouplikes, by hand
    T = extension_cotensor(lam)
    a = cert.alpha.column(0)
    for g in range(2):
        amb = [0] * 4
        for x in range(2):
            amb[g * 2 + x] += a[x]
        coords = T.space.coords(amb)
        assert cert.beta.apply(coords) == tuple(int(i == g) for i in range(2))


def test_perturbed_beta_fails():
    lam = trivial_extension(dual_numbers())
    cert = check_frobenius_extension(lam).witness
    for r in range(cert.beta.nrows):
        for c in range(cert.beta.ncols):
            assert not verify_certificate(lam, FrobeniusCertificate(cert.alpha, _bump(cert.beta, r, c)))


def test_shape_mismatch_is_an_input_error():
    lam = trivial_extension(dual_numbers())
    cert = check_frobenius_extension(lam).witness
    with pytest.raises(InputError):
        verify_certificate(lam, FrobeniusCertificate(cert.beta, cert.alpha))


def test_unit_transformation_examples():
    C = dual_numbers()
    lam = identity_morphism(C)
    eta, T = unit_transformation(Matrix.identity(QQ, 2), regular_right(C), lam)
    assert T.basis @ eta == C.delta_matrix
    lam = trivial_extension(C)
    alpha = check_frobenius_extension(lam).witness.alpha
    eta, T = unit_transformation(alpha, regular_right(lam.target), lam)
    assert iota(lam).forward @ eta == alpha
    eta, T = unit_transformation(alpha, zero_comodule(lam.target), lam)
    assert eta.shape == (0, 0)
    # g -> x is not colinear
    with pytest.raises(InputError):
        unit_transformation(Matrix.from_rows(QQ, [[0, 0], [1, 0]]), regular_right(C), identity_morphism(C))


def test_counit_transformation_examples():
    lam = trivial_extension(dual_numbers())
    cert = check_frobenius_extension(lam).witness
    eps, _ = counit_transformation(cert.beta, regular_right(lam.source), lam)
    assert eps == cert.beta
    eps, _ = counit_transformation(cert.beta, zero_comodule(lam.source), lam)
    assert eps.shape == (0, 0)
    C = matrix_coalgebra(2)
    ident = identity_morphism(C)
    cert = identity_certificate(C)
    for M in standard_comodules(C):
        eps, T = counit_transformation(cert.beta, M, ident)
        m, n = M.dim, C.dim
        contract = Matrix.from_sparse(QQ, m, m * n, {(a, a * n + b): C.counit[b] for a in range(m)
                                                     for b in range(n) if C.counit[b]})
        assert eps == contract @ T.basis


def test_triangle_examples():
    C = dual_numbers()
    ident = identity_morphism(C)
    R = regular_right(C)
    assert triangle_check(ident, identity_certificate(C), [R, direct_sum(R, R)]).ok
    lam = trivial_extension(grouplike(2))
    cert = check_frobenius_extension(lam).witness
    sample = standard_comodules(lam.source) + standard_comodules(lam.target)
    rep = triangle_check(lam, cert, sample)
    assert rep.ok and rep.checked == len(sample)
    # alpha of (2 alpha, beta / 2) with beta of (alpha, beta)
    swapped = FrobeniusCertificate(cert.alpha.scale(2), cert.beta)
    with pytest.raises(InputError):
        triangle_check(lam, swapped, sample)
    rep = triangle_check(lam, swapped, sample, require_verified=False)
    assert not rep.ok
    assert {i for i, _ in rep.failures} == set(range(len(sample)))


def test_gamma_examples():
    C = dual_numbers()
    ident = identity_morphism(C)
    cert = identity_certificate(C)
    g = gamma_form(cert, ident)
    T = extension_cotensor(ident)
    eps = C.counit_row
    assert g == eps.kron(eps) @ T.basis
    assert reconstruct_beta(ident, g) == cert.beta
    lam = trivial_extension(grouplike(2))
    fold = check_frobenius_extension(lam).witness
    assert reconstruct_beta(lam, gamma_form(fold, lam)) == fold.beta
    assert gamma_condition(lam, fold.alpha, gamma_form(fold, lam))


def test_unbalanced_gamma_is_rejected_with_index():
    # the dual of dual_numbers is commutative, so every gamma balances there
    dn = identity_morphism(dual_numbers())
    g = gamma_form(identity_certificate(dn.source), dn)
    assert all(not balance_violations(dn, _bump(g, 0, q)) for q in range(g.ncols))
    lam = identity_morphism(matrix_coalgebra(2))
    g = gamma_form(identity_certificate(lam.source), lam)
    assert not balance_violations(lam, g)
    bad = _bump(g, 0, 1)
    viol = balance_violations(lam, bad)
    assert viol
    with pytest.raises(BalanceError) as e:
        reconstruct_beta(lam, bad)
    assert e.value.index == viol[0]


def test_frobenius_system_examples():
    sys = frobenius_system(dual_numbers())
    assert sys is not None and system_identities(dual_numbers(), sys)
    assert frobenius_system(dual_of_square_zero_local(2)) is None
    K = trivial()
    sys = frobenius_system(K)
    assert sys.e == (1,) and sys.pi == Matrix.identity(QQ, 1)


def test_non_surjective_inclusion_is_frobenius_with_injectivity():
    lam = set_map_extension([0], 2)
    v = check_frobenius_extension(lam)
    assert v.is_yes
    assert is_injective_comodule(corestrict(regular_right(lam.source), lam))


def test_unknown_reports_confidence():
    lam = trivial_extension(grouplike(3))
    v = check_frobenius_extension(lam, route="primal", budget=2)
    assert v.status in ("yes", "unknown")
    if v.status == "unknown":
        assert 0 <= v.confidence < 1 and v.exit_code == 2


@settings(max_examples=15)
@given(coalgebras(max_dim=4))
def test_trivial_extension_routes_agree_and_yes_verifies(C):
    lam = trivial_extension(C)
    d = check_frobenius_extension(lam)
    p = check_frobenius_extension(lam, route="primal")
    assert d.status == p.status
    for v in (d, p):
        if v.is_yes:
            assert verify_certificate(lam, v.witness)
            assert reconstruct_beta(lam, gamma_form(v.witness, lam)) == v.witness.beta


@settings(max_examples=15)
@given(coalgebras(max_dim=4))
def test_opposite_extension_has_same_verdict(C):
    lam = trivial_extension(C)
    assert check_frobenius_extension(lam).status == check_frobenius_extension(lam.opposite()).status


@settings(max_examples=15)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=4), fields)
def test_yes_implies_injective_on_both_sides(f, field):
    lam = set_map_extension(f, 3, field)
    v = check_frobenius_extension(lam)
    if v.is_yes:
        C = lam.source
        assert is_injective_comodule(corestrict(regular_right(C), lam))
        assert is_injective_comodule(corestrict(regular_left(C), lam))
        assert triangle_check(lam, v.witness, standard_comodules(C, 3) + standard_comodules(lam.target, 3)).ok


@given(st.integers(0, 50))
def test_verdicts_deterministic_in_seed(seed):
    lam = trivial_extension(dual_numbers())
    a = check_frobenius_extension(lam, seed=seed)
    b = check_frobenius_extension(lam, seed=seed)
    assert a.witness.alpha == b.witness.alpha and a.witness.beta == b.witness.beta
