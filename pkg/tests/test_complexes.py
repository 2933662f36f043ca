import os

import pytest

from homforge.complexes import (
    ChainMap,
    Complex,
    MatrixOverA,
    Triangle,
    cohomology,
    cohomology_dims,
    cone,
    cone_inclusion,
    cone_scale_map,
    cone_triangle,
    direct_sum,
    double_dual_iso,
    dual,
    dual_map,
    euler_characteristic_check,
    gorenstein_free_form,
    hom_complex,
    long_exact_sequence_check,
    map_sum,
    matlis_dual,
    rotate,
    rotate_back,
    shift,
    shift_map,
    stalk,
    sum_inclusions,
    sum_projections,
    triangle_on_map,
    two_term,
)
from homforge.errors import DifferentialError, InputError, MismatchError, ShapeError, UnsupportedBackendError
from homforge.homotopy import hom_space_K
from homforge.loaders import InputLoader


def _times(algebra, text, U=None, V=None):
    U = U or stalk(algebra)
    V = V or stalk(algebra)
    return ChainMap(U, V, {0: MatrixOverA.from_rows(algebra, [[text]])})


def test_koszul_fixture_validates(fixtures_dir):
    loader = InputLoader()
    C = loader.complex(os.path.join(fixtures_dir, "koszul_xy.json"))
    assert C.validate().ok
    assert C.is_minimal()
    assert C.ranks() == {-2: 1, -1: 2, 0: 1}
    assert len(loader.digests) == 2


def test_ring_override(fixtures_dir):
    loader = InputLoader(os.path.join(fixtures_dir, "kx3.json"))
    C = loader.complex(os.path.join(fixtures_dir, "stalkA.json"))
    assert C.algebra.dim == 3


def test_differential_square_checked(kx3):
    data = {"terms": {"-1": {"rank": 1}, "0": {"rank": 1}, "1": {"rank": 1}},
            "differentials": {"-1": [["x"]], "0": [["x"]]}}
    with pytest.raises(DifferentialError) as info:
        Complex.from_json(data, kx3)
    assert info.value.index == -1


def test_malformed_complex_reports_location(kx2):
    with pytest.raises(InputError) as info:
        Complex.from_json({"terms": {"zero": {"rank": 1}}}, kx2)
    assert info.value.location == "terms[zero]"


def test_graded_complex_needs_homogeneous_entries(kx_graded):
    data = {"terms": {"-1": {"rank": 1, "degrees": [2]}, "0": {"rank": 1, "degrees": [0]}},
            "differentials": {"-1": [["x"]]}}
    with pytest.raises(InputError):
        Complex.from_json(data, kx_graded)
    data["terms"]["-1"]["degrees"] = [1]
    assert Complex.from_json(data, kx_graded).validate().ok


def test_shift_sign(cone_x, kx2):
    shifted = shift(cone_x, 1)
    assert shifted.d(-2).entry(0, 0) == -kx2.variable(0)
    assert shift(cone_x, 2).d(-3).entry(0, 0) == kx2.variable(0)
    assert shift(cone_x, 0) is cone_x


def test_cone_differential(kx2):
    f = _times(kx2, "x")
    C = cone(f)
    assert C.ranks() == {-1: 1, 0: 1}
    assert C.d(-1).entry(0, 0) == -kx2.variable(0)


def test_rotation_signs(kx2):
    f = _times(kx2, "x")
    t = triangle_on_map(f)
    rotated = rotate(t)
    assert rotated.v == -shift_map(f, 1)
    back = rotate_back(rotated)
    assert back.u == f
    assert back.w == t.w


def test_cone_triangle(kx2):
    f = _times(kx2, "x")
    t = cone_triangle(f)
    assert t.first == f.target
    assert t.second == cone(f)
    assert t.third == shift(f.source, 1)
    assert t.v == -shift_map(f, 1)


def test_triangle_shape_checked(kx2):
    f = _times(kx2, "x")
    with pytest.raises(ShapeError):
        Triangle(f, f, f)


def test_cohomology_of_small_complexes(stalk_kx2, cone_x):
    assert cohomology(stalk_kx2, 0).dimension == 2
    assert cohomology(stalk_kx2, 0).generators == 1
    assert cohomology_dims(cone_x) == {-1: 1, 0: 1}
    assert euler_characteristic_check(cone_x)


def test_graded_cohomology_by_degree(kx_graded):
    C = two_term(kx_graded, "x^3")
    group = cohomology(C, 0)
    assert group.dimension == 3
    assert group.by_degree == {0: 1, 1: 1, 2: 1}


def test_hom_complex_matches_hom_space(cone_x, stalk_kx2):
    for U in (cone_x, stalk_kx2):
        for V in (cone_x, stalk_kx2):
            assert cohomology(hom_complex(U, V), 0).dimension == hom_space_K(U, V).dimension


def test_long_exact_sequence(kx3):
    f = _times(kx3, "x")
    assert long_exact_sequence_check(triangle_on_map(f))["ok"]
    g = ChainMap(two_term(kx3, "x^2"), stalk(kx3), {0: MatrixOverA.from_rows(kx3, [["x"]])})
    assert long_exact_sequence_check(triangle_on_map(g))["ok"]


def test_cone_scale_map(kx3):
    f = ChainMap.identity(stalk(kx3))
    result = cone_scale_map(f, kx3.variable(0))
    assert result.ok


def test_direct_sum_inclusions(kx2, cone_x):
    A = stalk(kx2)
    i1, i2 = sum_inclusions(A, cone_x)
    p1, p2 = sum_projections(A, cone_x)
    assert p1.compose(i1) == ChainMap.identity(A)
    assert p2.compose(i2) == ChainMap.identity(cone_x)
    assert p1.compose(i2).is_zero()
    assert direct_sum(A, cone_x).ranks() == {-1: 1, 0: 2}


def test_map_sum_of_identities(kx2, cone_x):
    A = stalk(kx2)
    f = map_sum(ChainMap.identity(A), ChainMap.identity(cone_x))
    assert f.is_chain_map()
    assert f == ChainMap.identity(direct_sum(A, cone_x))


def test_chain_map_must_commute(kx2, cone_x):
    loader = InputLoader()
    data = {"source": cone_x.to_json(), "target": stalk(kx2).to_json(), "components": {"0": [["1"]]}}
    with pytest.raises(InputError):
        loader.chain_map(data)


def test_compose_checks_endpoints(kx2, cone_x):
    f = _times(kx2, "x")
    with pytest.raises(MismatchError):
        f.compose(ChainMap.identity(cone_x))


def test_double_duals(koszul_xy, cone_x):
    for C in (koszul_xy, cone_x):
        assert dual(dual(C)).ranks() == C.ranks()
        assert double_dual_iso(C).is_chain_map()
        assert double_dual_iso(C, matlis_dual).is_chain_map()


def test_dual_map_is_chain_map(kx2):
    f = ChainMap(two_term(kx2, "x"), stalk(kx2), {0: MatrixOverA.from_rows(kx2, [["x"]])})
    assert dual_map(f).is_chain_map()


def test_matlis_free_form_over_gorenstein(kxy2):
    E = matlis_dual(stalk(kxy2))
    assert E.kind == "injective"
    assert gorenstein_free_form(E).kind == "free"
    assert matlis_dual(stalk(kxy2), free_form=True) == stalk(kxy2)


def test_matlis_requires_artinian(kx_graded):
    with pytest.raises(UnsupportedBackendError):
        matlis_dual(stalk(kx_graded))


def test_json_round_trip(koszul_xy):
    assert Complex.from_json(koszul_xy.to_json(), koszul_xy.algebra) == koszul_xy


def test_cone_inclusion_is_chain_map(kx3):
    assert cone_inclusion(_times(kx3, "x^2")).is_chain_map()
