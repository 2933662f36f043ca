"""
Тесты функтора Серра, AR-треугольников, теста Мияты и семейств конусов.
"""

import pytest

from homforge.complexes import (
    ChainMap,
    cone,
    direct_sum,
    rotate,
    rotate_back,
    shift,
    stalk,
    triangle_on_map,
    two_term,
    zero_complex,
)
from homforge import serre_ar
from homforge.errors import InternalInconsistencyError, ShapeError, UnsupportedBackendError, ZeroComplexError
from homforge.homotopy import is_null_homotopic
from homforge.loaders import InputLoader, fixture_path
from homforge.serre_ar import (
    LEFT,
    RIGHT,
    ar_dual,
    ar_triangle_ending_at,
    ar_uniqueness_check,
    cone_power_family,
    finite_length_certificate,
    miyata_random_suite,
    miyata_split_test,
    rotate_right_to_left,
    s_set_samples,
    serre_functor,
    serre_pairing_check,
    serre_width_check,
    standard_triangle_from_projective_cover,
    triangle_dominates,
    verify_right_ar,
)


def test_serre_of_free_stalk(stalk_kx2):
    image = serre_functor(stalk_kx2)
    assert image.output.ranks() == {0: 1}
    assert not image.to_json()["audit"]["truncated"]


@pytest.mark.parametrize("left", ["stalk", "cone_x"])
@pytest.mark.parametrize("right", ["stalk", "cone_x"])
def test_serre_pairing(kx2, left, right):
    family = {"stalk": stalk(kx2), "cone_x": two_term(kx2, "x")}
    report = serre_pairing_check(family[left], family[right], seed=1)
    assert report["ok"]
    assert report["dim_hom_xy"] == report["dim_hom_yfx"]


def test_serre_width(koszul_xy):
    report = serre_width_check(koszul_xy)
    assert report["ok"]
    assert report["width"] == 2


def test_serre_needs_artinian(kx_graded):
    with pytest.raises(UnsupportedBackendError):
        serre_functor(stalk(kx_graded))


@pytest.mark.parametrize("ring, power", [("kx2", 1), ("kx3", 2)])
def test_ar_triangle_at_stalk(request, ring, power):
    A = request.getfixturevalue(ring)
    t = ar_triangle_ending_at(stalk(A))
    assert t.side == RIGHT
    assert t.end.ranks() == {0: 1}
    assert len(t.connecting.components) == 1
    entry = next(iter(t.connecting.components.values())).entry(0, 0)
    assert list(entry.terms) == [(power,)]
    report = verify_right_ar(t, seed=0, samples=4)
    assert report["ok"]
    assert report["axiom_1"]["ok"] and report["axiom_2"]["ok"] and report["axiom_3"]["ok"]


def test_ar_rejects_decomposable(stalk_kx2):
    with pytest.raises(ShapeError):
        ar_triangle_ending_at(direct_sum(stalk_kx2, stalk_kx2))


def test_ar_rejects_zero(stalk_kx2):
    with pytest.raises(ZeroComplexError):
        ar_triangle_ending_at(cone(ChainMap.identity(stalk_kx2)))


def test_rotate_right_to_left(stalk_kx2):
    t = ar_triangle_ending_at(stalk_kx2)
    left = rotate_right_to_left(t)
    assert left.side == LEFT
    assert left.start == t.start
    assert not is_null_homotopic(left.connecting).null
    with pytest.raises(ShapeError):
        rotate_right_to_left(left)


def test_ar_dual_switches_side(stalk_kx2):
    t = ar_triangle_ending_at(stalk_kx2)
    dualized = ar_dual(t)
    assert dualized.side == LEFT
    assert dualized.certificates["connecting_nonzero"]
    assert ar_dual(dualized).side == RIGHT


def test_ar_uniqueness(kx3):
    assert ar_uniqueness_check(stalk(kx3), seed=2)["ok"]


def test_domination_of_rotated_ar(stalk_kx2):
    s = rotate_back(ar_triangle_ending_at(stalk_kx2).triangle)
    verdict = triangle_dominates(s, s)
    assert verdict.dominates
    assert verdict.gamma is not None


def test_domination_needs_common_start(stalk_kx2, cone_x):
    s = rotate_back(ar_triangle_ending_at(stalk_kx2).triangle)
    with pytest.raises(ShapeError):
        triangle_dominates(s, standard_triangle_from_projective_cover(cone_x))


def test_projective_cover(cone_x):
    t = standard_triangle_from_projective_cover(cone_x)
    assert t.first == shift(cone_x, -1)
    assert t.v.target == cone_x
    assert t.third.ranks() == {-1: 1, 0: 2, 1: 1}
    assert sum(t.third.ranks().values()) == 4
    assert not is_null_homotopic(t.u).null
    with pytest.raises(ZeroComplexError):
        standard_triangle_from_projective_cover(zero_complex(cone_x.algebra))


def test_s_set_samples(stalk_kx2):
    report = s_set_samples(stalk_kx2, seed=0)
    assert report["ok"]
    assert report["samples"][0]["sample"] == "projective-cover"


def test_miyata_split(stalk_kx2):
    t = rotate(triangle_on_map(ChainMap.zero(stalk_kx2, stalk_kx2)))
    verdict = miyata_split_test(t, seed=0)
    assert verdict.verdict == "split"
    assert verdict.xi is not None


def test_miyata_hypothesis_not_met():
    t = InputLoader().triangle(fixture_path("cone_x.json"))
    verdict = miyata_split_test(t, seed=0)
    assert verdict.verdict == "hypothesis-not-met"
    assert not verdict.v_null


def test_miyata_random_suite(kx2):
    report = miyata_random_suite([kx2], seed=5, count=6)
    assert report["inconsistencies"] == 0
    assert sum(report["tally"].values()) == 6


def test_graded_cone_family(kx_graded):
    family = cone_power_family(ChainMap.identity(stalk(kx_graded)), kx_graded.variable("x"), 4, seed=0)
    assert family.h0_dimensions == [1, 2, 3, 4]
    assert family.pairwise_non_isomorphic()
    assert family.stable_from is None


def test_artinian_cone_family_collapses(kx2):
    family = cone_power_family(ChainMap.identity(stalk(kx2)), kx2.variable("x"), 3, seed=0)
    assert family.stable_from == 2
    assert family.verdicts[(2, 3)] == "isomorphic"
    assert not family.pairwise_non_isomorphic()


def test_finite_length(kx2, kx_graded):
    assert finite_length_certificate(stalk(kx2))["verdict"] == "certified"
    assert finite_length_certificate(stalk(kx_graded))["verdict"] == "refuted-within-window"
    assert finite_length_certificate(two_term(kx_graded, "x"))["verdict"] == "certified-within-window"


def test_miyata_suite_counts_inconsistencies(kx2, monkeypatch):
    def broken(t, seed=None):
        raise InternalInconsistencyError("сбой", state={"seed": seed})

    monkeypatch.setattr(serre_ar, "miyata_split_test", broken)
    report = miyata_random_suite([kx2], seed=0, count=3)
    assert report["inconsistencies"] == 3
    assert sum(report["tally"].values()) == 0
    assert [item["index"] for item in report["failures"]] == [0, 1, 2]


@pytest.mark.parametrize("name, power", [("kx2.json", 1), ("kx3.json", 2)])
def test_ar_triangle_over_fields(ring_over, field_json, name, power):
    A = ring_over(name, field_json)
    t = ar_triangle_ending_at(stalk(A))
    entry = next(iter(t.connecting.components.values())).entry(0, 0)
    assert list(entry.terms) == [(power,)]
    assert verify_right_ar(t, seed=0, samples=4)["ok"]


def test_serre_pairing_over_fields(ring_over, field_json):
    A = ring_over("kx2.json", field_json)
    report = serre_pairing_check(two_term(A, "x"), stalk(A), seed=1)
    assert report["ok"]
    assert report["dim_hom_xy"] == report["dim_hom_yfx"]
