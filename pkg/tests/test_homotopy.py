"""
Тесты гомотопической категории: гомотопии, минимизация, изоморфизмы, End_K.
"""

import pytest

from homforge.complexes import ChainMap, MatrixOverA, cone, direct_sum, shift, stalk, two_term
from homforge.errors import InfeasibleLiftError, MismatchError, UnsupportedBackendError, ZeroComplexError
from homforge.homotopy import (
    EndAlgebra,
    are_homotopic,
    Homotopy,
    decompose,
    end_algebra,
    extend_null_homotopy,
    factor_through,
    hom_space_K,
    homotopy_inverse,
    is_homotopy_isomorphism,
    is_indecomposable,
    is_null_homotopic,
    is_retraction,
    iso_in_K,
    minimize,
    mu_hom,
    rank,
    width,
)


@pytest.fixture
def cone_of_identity(stalk_kx2):
    return cone(ChainMap.identity(stalk_kx2))


def test_identity_of_contractible_cone_is_null(cone_of_identity):
    verdict = is_null_homotopic(ChainMap.identity(cone_of_identity))
    assert verdict.null
    assert verdict.homotopy.boundary() == ChainMap.identity(cone_of_identity)


def test_identity_of_stalk_is_not_null(stalk_kx2):
    verdict = is_null_homotopic(ChainMap.identity(stalk_kx2))
    assert not verdict.null
    assert verdict.certificate


def test_minimize_contractible_cone(cone_of_identity):
    model = minimize(cone_of_identity)
    assert model.minimal.is_zero()
    assert model.cancellations == 1
    with pytest.raises(ZeroComplexError):
        width(cone_of_identity)


def test_minimize_drops_contractible_summand(cone_x, cone_of_identity):
    model = minimize(direct_sum(cone_x, cone_of_identity))
    assert model.minimal.ranks() == cone_x.ranks()
    assert model.cancellations == 1
    assert model.projection.compose(model.inclusion) == ChainMap.identity(model.minimal)
    assert rank(direct_sum(cone_x, cone_of_identity)) == 2


def test_width_of_koszul(koszul_xy):
    assert width(koszul_xy) == 2
    assert width(stalk(koszul_xy.algebra)) == 0


def test_mu_hom_koszul(koszul_xy):
    assert mu_hom(koszul_xy, 2) == 1
    for j in (3, 4, 5):
        assert mu_hom(koszul_xy, j) == 0


def test_mu_hom_two_term(cone_x):
    assert mu_hom(cone_x, 1) == 1


def test_mu_hom_needs_artinian(kx_graded):
    with pytest.raises(UnsupportedBackendError):
        mu_hom(stalk(kx_graded, degrees=[0]), 0)


def test_cone_of_zero_map_splits(stalk_kx2):
    split = cone(ChainMap.zero(stalk_kx2, stalk_kx2))
    verdict = iso_in_K(split, direct_sum(shift(stalk_kx2, 1), stalk_kx2), seed=0)
    assert verdict.isomorphic
    assert verdict.to_json()["verdict"] == "isomorphic"


def test_non_isomorphic_by_ranks(stalk_kx2, cone_x):
    verdict = iso_in_K(stalk_kx2, cone_x, seed=0)
    assert verdict.verdict == "not-isomorphic"
    assert verdict.separator["invariant"] == "ranks"


def test_iso_survives_contractible_summand(cone_x, cone_of_identity):
    verdict = iso_in_K(direct_sum(cone_x, cone_of_identity), cone_x, seed=3)
    assert verdict.isomorphic
    assert are_homotopic(verdict.backward.compose(verdict.forward),
                         ChainMap.identity(direct_sum(cone_x, cone_of_identity)))


def test_iso_rejects_different_algebras(stalk_kx2, kx3):
    with pytest.raises(MismatchError):
        iso_in_K(stalk_kx2, stalk(kx3))


def test_stalk_is_indecomposable(stalk_kx2):
    verdict = is_indecomposable(stalk_kx2)
    assert verdict.indecomposable
    assert verdict.end_dimension == 2
    assert verdict.radical_dimension == 1


def test_sum_decomposes(stalk_kx2):
    total = direct_sum(stalk_kx2, stalk_kx2)
    assert is_indecomposable(total).verdict == "decomposable"
    summands = decompose(total)
    assert len(summands) == 2
    assert all(s.ranks() == {0: 1} for s in summands)


def test_end_algebra_of_stalk(stalk_kx2):
    E = EndAlgebra(stalk_kx2)
    assert E.dim == 2
    assert E.is_local() is True
    assert E.is_idempotent(E.identity)


def test_retraction(stalk_kx2, kx2):
    assert is_retraction(ChainMap.identity(stalk_kx2)).found
    multiply_x = ChainMap.identity(stalk_kx2).scale(kx2.variable("x"))
    assert not is_retraction(multiply_x).found


def test_factor_through_identity(stalk_kx2, kx2):
    g = ChainMap.identity(stalk_kx2).scale(kx2.variable("x"))
    verdict = factor_through(g, ChainMap.identity(stalk_kx2))
    assert verdict.found
    assert are_homotopic(verdict.map, g)


def test_factor_through_mismatch(stalk_kx2, cone_x):
    with pytest.raises(MismatchError):
        factor_through(ChainMap.identity(stalk_kx2), ChainMap.identity(cone_x))


def test_homotopy_inverse(cone_x, kx2):
    inverse = homotopy_inverse(ChainMap.identity(cone_x))
    assert are_homotopic(inverse, ChainMap.identity(cone_x))
    not_invertible = ChainMap.identity(stalk(kx2)).scale(kx2.variable("x"))
    with pytest.raises(MismatchError):
        homotopy_inverse(not_invertible)


def test_hom_space_dimension(stalk_kx2, cone_x):
    assert hom_space_K(stalk_kx2, stalk_kx2).dimension == 2
    assert hom_space_K(cone_x, cone_x, 1).generators() == 1


def test_homotopy_isomorphism(stalk_kx2, cone_of_identity, kx2):
    assert is_homotopy_isomorphism(ChainMap.identity(stalk_kx2))
    assert not is_homotopy_isomorphism(ChainMap.identity(stalk_kx2).scale(kx2.variable("x")))
    padded = direct_sum(stalk_kx2, cone_of_identity)
    assert is_homotopy_isomorphism(ChainMap.identity(padded))


def test_split_idempotent(stalk_kx2):
    E = end_algebra(direct_sum(stalk_kx2, stalk_kx2))
    e = E.find_idempotent()
    assert e is not None
    Y, inclusion, projection = E.split_idempotent(e)
    assert Y.ranks() == {0: 1}
    assert projection.compose(inclusion) == ChainMap.identity(Y)


def test_extend_full_homotopy_is_unchanged(cone_x, kx2):
    g = ChainMap.identity(cone_x).scale(kx2.variable("x"))
    s = Homotopy(cone_x, cone_x, {0: MatrixOverA.identity(kx2, 1)})
    extended = extend_null_homotopy(g, s, min_degree=-1)
    assert extended.components == s.components
    assert extended.boundary() == g


def test_extend_homotopy_one_step(cone_x, kx2):
    g = ChainMap.identity(cone_x).scale(kx2.variable("x"))
    s = Homotopy(cone_x, cone_x, {0: MatrixOverA.identity(kx2, 1)})
    extended = extend_null_homotopy(g, s, min_degree=0)
    assert extended.component(0) == MatrixOverA.identity(kx2, 1)
    assert extended.component(-1).is_zero()
    assert extended.boundary() == g


def test_extend_homotopy_infeasible(stalk_kx2):
    g = ChainMap.identity(stalk_kx2)
    with pytest.raises(InfeasibleLiftError) as error:
        extend_null_homotopy(g, Homotopy(stalk_kx2, stalk_kx2), min_degree=1)
    assert error.value.degree == 0


def test_radical_does_not_depend_on_characteristic(ring_over, field_json):
    A = ring_over("kxy2.json", field_json)
    X = direct_sum(direct_sum(stalk(A), two_term(A, "x")), stalk(A))
    E = end_algebra(X)
    assert E.dim == 28
    assert len(E.radical) == 23
    assert E.is_nilpotent_ideal(E.radical)
    assert is_indecomposable(X).verdict == "decomposable"


@pytest.mark.parametrize("name", ["kx2.json", "kx3.json", "kxy2.json"])
def test_radical_is_nilpotent(ring_over, field_json, name):
    A = ring_over(name, field_json)
    for X in (stalk(A), two_term(A, "x"), direct_sum(stalk(A), shift(stalk(A), 1))):
        E = end_algebra(X)
        assert E.is_nilpotent_ideal(E.radical)
        assert not E.is_nilpotent_ideal([E.identity])


def test_stalk_over_finite_fields(ring_over, field_json):
    A = ring_over("kx2.json", field_json)
    verdict = is_indecomposable(stalk(A))
    assert verdict.indecomposable
    assert (verdict.end_dimension, verdict.radical_dimension) == (2, 1)
    assert is_indecomposable(two_term(A, "x")).indecomposable
    assert hom_space_K(stalk(A), two_term(A, "x")).dimension == 1


def test_iso_is_reflexive(ring_over, field_json):
    A = ring_over("kx2.json", field_json)
    for X in (stalk(A), two_term(A, "x"), direct_sum(stalk(A), shift(stalk(A), 1))):
        assert iso_in_K(X, X, seed=0).isomorphic


def test_iso_is_symmetric(stalk_kx2, cone_x):
    split = cone(ChainMap.zero(stalk_kx2, stalk_kx2))
    pairs = [
        (split, direct_sum(shift(stalk_kx2, 1), stalk_kx2)),
        (stalk_kx2, cone_x),
        (cone_x, shift(cone_x, 1)),
    ]
    for X, Y in pairs:
        assert iso_in_K(X, Y, seed=0).verdict == iso_in_K(Y, X, seed=0).verdict
