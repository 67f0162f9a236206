import pytest
from hypothesis import given, strategies as st

from cofrob.coalgebra import InputError, corestrict, direct_sum, regular_right, validate_coalgebra
from cofrob.dual_algebra import dualize_coalgebra
from cofrob.exact_linalg import FieldSpec
from cofrob.zoo import (PRESETS, build, componentwise_comodule, direct_sum_coring, dual_numbers,
                        dual_of_square_zero_local, grouplike, matrix_coalgebra, standard_comodules)

from helpers import axioms_hold, coalgebras, fields


def test_direct_sum_coring_example():
    b = build("direct_sum_coring", {"base": "grouplike:2", "n": 2})
    assert b.coalgebra.dim == 4
    lam = b.extension
    assert lam.report.ok
    # the fold: sigma_i(d) -> d
    assert [lam.matrix.column(c) for c in range(4)] == [(1, 0), (0, 1), (1, 0), (0, 1)]


def test_matrix_coalgebra_preset():
    C = build("matrix_coalgebra", {"n": 2}).coalgebra
    assert C.dim == 4 and axioms_hold(C)


def test_square_zero_local_has_square_zero_radical():
    A = dualize_coalgebra(build("dual_of_square_zero_local", {"n": 2}).coalgebra)
    assert A.dim == 3
    rad = [1, 2]
    for i in rad:
        for j in rad:
            assert not any(A.mult.get((i, j, k)) for k in range(3))


def test_bad_parameters():
    with pytest.raises(InputError):
        build("direct_sum_coring", {"n": 0})
    with pytest.raises(InputError):
        build("grouplike", {})
    with pytest.raises(InputError):
        build("no_such_preset")
    with pytest.raises(InputError):
        build("dual_numbers", field=FieldSpec.parse("F6"))


@pytest.mark.parametrize("name", sorted(PRESETS))
@pytest.mark.parametrize("field", ["Q", "F5"])
def test_every_bundle_validates(name, field):
    params = {"grouplike": {"n": 3}, "matrix_coalgebra": {"n": 2}, "dual_of_square_zero_local": {"n": 2},
              "direct_sum_coring": {"n": 2, "base": "dual_numbers"},
              "trivial_extension": {"base": "matrix_coalgebra:2"}}.get(name, {})
    b = build(name, params, FieldSpec.parse(field))
    for C in b.coalgebras.values():
        assert C.report.ok and axioms_hold(C)
    for lam in b.morphisms.values():
        assert lam.report.ok
    for M in b.comodules.values():
        assert M.report.ok


@given(st.sampled_from([grouplike(2), dual_numbers(), matrix_coalgebra(2), dual_of_square_zero_local(2)]),
       st.integers(1, 3), st.data())
def test_componentwise_comodule_corestricts_to_direct_sum(D, n, data):
    ring = direct_sum_coring(D, n)
    pool = standard_comodules(D, 4)
    mods = [data.draw(st.sampled_from(pool)) for _ in range(n)]
    M = componentwise_comodule(ring, mods)
    assert M.report.ok
    assert corestrict(M, ring.extension).coaction == direct_sum(*mods).coaction


@given(coalgebras(max_dim=4))
def test_standard_comodules_are_valid_and_small(C):
    for M in standard_comodules(C):
        assert M.report.ok and M.dim <= 4 and M.side == "right"


@given(st.integers(1, 4), fields)
def test_sized_presets_validate(n, field):
    assert validate_coalgebra(grouplike(n, field)).ok
    assert validate_coalgebra(direct_sum_coring(dual_numbers(field), n).coalgebra).ok
    assert validate_coalgebra(dual_of_square_zero_local(n, field)).ok
