"""
Тесты резольвент: Кошуль, минимальные резольвенты модулей, p и i для комплексов.
"""

import pytest

from homforge.complexes import INJECTIVE, MatrixOverA, cohomology_dims, stalk, two_term
from homforge.errors import InputError, UnsupportedBackendError
from homforge.loaders import InputLoader, fixture_path
from homforge.resolutions import (
    ModulePresentation,
    betti_numbers,
    inj_resolution_via_matlis,
    koszul,
    koszul_on_maximal_ideal,
    minimal_resolution,
    proj_resolution_of_complex,
)


def test_koszul_matches_fixture(kxy2, koszul_xy):
    loaded = InputLoader().complex(fixture_path("koszul_xy.json"))
    assert loaded.to_json()["differentials"] == koszul_xy.to_json()["differentials"]
    assert koszul(kxy2, ["x", "y"]).ranks() == {-2: 1, -1: 2, 0: 1}


def test_koszul_on_one_element(kx2):
    assert koszul(kx2, ["x"]).to_json()["differentials"] == two_term(kx2, "x").to_json()["differentials"]


def test_koszul_homology_is_exterior(koszul_xy):
    assert cohomology_dims(koszul_xy) == {-2: 1, -1: 2, 0: 1}


def test_koszul_empty_list(kx2):
    with pytest.raises(InputError):
        koszul(kx2, [])


def test_koszul_graded_degrees(kxy_graded):
    K = koszul_on_maximal_ideal(kxy_graded)
    assert K.term(-2).degrees == (2,)
    assert sorted(K.term(-1).degrees) == [1, 1]


def test_residue_field_resolution_kx2(kx2):
    resolution = minimal_resolution(ModulePresentation.residue_field(kx2), 8)
    assert resolution.betti == [1] * 9
    assert resolution.minimal


def test_residue_field_resolution_kxy2(kxy2):
    assert betti_numbers(ModulePresentation.residue_field(kxy2), 5) == [1, 2, 3, 4, 5, 6]


def test_free_module_resolution(kx2):
    M = ModulePresentation.free(kx2)
    assert M.length() == 2
    assert betti_numbers(M, 3) == [1, 0, 0, 0]


def test_negative_bound(kx2):
    with pytest.raises(InputError):
        minimal_resolution(ModulePresentation.residue_field(kx2), -1)


def test_module_fixture():
    M = InputLoader().module(fixture_path("residue_kxy2.json"))
    assert M.generators == 1
    assert M.length() == 1
    assert M.as_complex().ranks() == {-1: 2, 0: 1}


def test_module_rows_must_match_generators(kx2):
    with pytest.raises(InputError):
        ModulePresentation.from_json({"generators": 2, "relations": [["x"]]}, kx2)
    with pytest.raises(InputError):
        ModulePresentation.from_json({"relations": []}, kx2)


def test_graded_residue_resolution(kx_graded):
    # k[x] регулярно: резольвента k обрывается на длине 1
    resolution = minimal_resolution(ModulePresentation.residue_field(kx_graded), 4)
    assert resolution.betti == [1, 1, 0, 0, 0]
    assert resolution.certified_up_to == kx_graded.window


def test_projective_resolution_of_free_complex(cone_x):
    resolution = proj_resolution_of_complex(cone_x, 4)
    assert resolution.is_chain_map()
    assert resolution.cohomology_agrees()
    assert not resolution.truncated
    assert resolution.complex.ranks() == {-1: 1, 0: 1}


def test_injective_resolution_of_stalk(stalk_kx2):
    result = inj_resolution_via_matlis(stalk_kx2, 4)
    assert result.kind == INJECTIVE
    assert result.ranks() == {0: 1}


def test_injective_resolution_needs_artinian(kx_graded):
    with pytest.raises(UnsupportedBackendError):
        inj_resolution_via_matlis(stalk(kx_graded))


@pytest.mark.parametrize("generators, rows", [
    (1, [["x", "y"]]),
    (1, [["x", "y", "x + y", "x*y"]]),
    (2, [["0", "x", "y", "0"], ["1", "0", "0", "x"]]),
    (2, [["x", "y", "1", "0"], ["0", "0", "-1", "y"]]),
])
def test_betti_independent_of_presentation(kxy2, generators, rows):
    M = ModulePresentation(kxy2, generators, MatrixOverA.from_rows(kxy2, rows))
    assert M.length() == 1
    assert betti_numbers(M, 3) == [1, 2, 3, 4]


def test_residue_betti_over_fields(ring_over, field_json):
    A = ring_over("kxy2.json", field_json)
    assert betti_numbers(ModulePresentation.residue_field(A), 4) == [1, 2, 3, 4, 5]
