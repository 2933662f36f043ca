"""
Тесты DG-алгебр Тейта и хороших фильтраций.
"""

import pytest

from homforge.errors import InputError, NotACycleError, UnsupportedBackendError
from homforge.resolutions import ModulePresentation, minimal_resolution
from homforge.tate import (
    DIVIDED,
    EXTERIOR,
    DGAlgebra,
    Filtration,
    adjoin_variable,
    divided_power_coefficient,
    good_filtration_extend,
    koszul_dg,
    koszul_filtration,
    tate_filtration,
    tate_resolve,
    verify_adjoin_homology,
    verify_good_filtration,
)


@pytest.fixture
def koszul_x(kx2):
    return koszul_dg(kx2, [kx2.variable("x")], window=6)


def test_divided_power_coefficient():
    assert divided_power_coefficient(1, 1) == 2
    assert divided_power_coefficient(2, 3) == 10
    assert divided_power_coefficient(0, 4) == 1


def test_koszul_dg_ranks(koszul_x):
    assert koszul_x.length == 1
    assert koszul_x.variables[0].kind == EXTERIOR
    assert koszul_x.ranks() == [1, 1, 0, 0, 0, 0, 0]
    assert koszul_x.cohomology_dimension(-1) == 1


def test_tate_betti_kx2(kx2):
    tate = tate_resolve(kx2, 8)
    assert tate.betti == [1] * 9
    assert tate.acyclic()
    assert [v.kind for v in tate.dg.variables] == [EXTERIOR, DIVIDED]


def test_tate_betti_agrees_with_minimal_resolution(kxy2):
    tate = tate_resolve(kxy2, 6)
    minimal = minimal_resolution(ModulePresentation.residue_field(kxy2), 6).betti
    assert tate.betti == minimal == [1, 2, 3, 4, 5, 6, 7]
    assert tate.to_json()["betti"] == minimal


def test_divided_square(kx2):
    Y = tate_resolve(kx2, 4).dg
    s = (0, 1)
    assert Y.multiply_words(s, s) == (2, (0, 2))


def test_exterior_square_vanishes(koszul_x):
    assert koszul_x.multiply_words((1,), (1,)) is None


def test_dg_axioms(kxy2):
    report = tate_resolve(kxy2, 4).dg.verify_axioms()
    assert report["skew"] and report["leibniz"] and report["d_squared"]
    assert report["witness"] is None


def test_adjoin_rejects_zero(koszul_x):
    with pytest.raises(InputError):
        adjoin_variable(koszul_x, {})


def test_adjoin_rejects_non_cycle(koszul_x, kx2):
    with pytest.raises(NotACycleError):
        adjoin_variable(koszul_x, {(1,): kx2.one()})


def test_adjoin_kills_class(koszul_x, kx2):
    t = {(1,): kx2.variable("x")}
    Z = adjoin_variable(koszul_x, t)
    assert Z.variables[-1].kind == DIVIDED
    assert Z.variables[-1].degree == -2
    report = verify_adjoin_homology(koszul_x, Z, t)
    assert report.ok
    assert (report.before, report.after, report.killed) == (1, 0, 1)


def test_adjoin_method(koszul_x, kx2):
    Z = koszul_x.adjoin({(1,): kx2.variable("x")}, name="S")
    assert Z.length == 2
    assert Z.variables[-1].name == "S"
    assert Z.cohomology_dimension(-1) == 0


def test_negative_window(kx2):
    with pytest.raises(InputError):
        DGAlgebra(kx2, (), -1)


def test_tate_needs_artinian(kx_graded):
    with pytest.raises(UnsupportedBackendError):
        tate_resolve(kx_graded, 3)


def test_koszul_filtration_is_good(koszul_x):
    report = verify_good_filtration(koszul_filtration(koszul_x))
    assert report.ok
    assert report.parameter == 0
    assert verify_good_filtration(koszul_filtration(koszul_x, whole=True)).ok


def test_even_extension(koszul_x, kx2):
    extended = good_filtration_extend(koszul_filtration(koszul_x), {(1,): kx2.variable("x")})
    assert extended.parameter == 1
    assert verify_good_filtration(extended).ok


def test_odd_extension(koszul_x, kx2):
    x = kx2.variable("x")
    even = good_filtration_extend(koszul_filtration(koszul_x), {(1,): x})
    cycle = {(0, 1): x}
    r = even.element_level(cycle)
    odd = good_filtration_extend(even, cycle)
    assert odd.dg.variables[-1].kind == EXTERIOR
    assert odd.parameter == r + 2 * even.parameter
    assert verify_good_filtration(odd).ok


def test_extension_checks_level(koszul_x, kx2):
    with pytest.raises(InputError):
        good_filtration_extend(koszul_filtration(koszul_x), {(1,): kx2.variable("x")}, r=0)


def test_broken_filtration_has_witness(koszul_x, kx2):
    Z = good_filtration_extend(koszul_filtration(koszul_x), {(1,): kx2.variable("x")}).dg
    broken = Filtration(Z, [frozenset({(0, 0), (0, 1)}), frozenset(Z.all_words)], 1)
    report = verify_good_filtration(broken)
    assert not report.ok
    assert not report.axioms["1"]["ok"]
    assert report.axioms["1"]["witness"]["piece"] == 0


def test_tate_filtration(kx2):
    F = tate_filtration(kx2, 5)
    assert F.parameter == 1
    report = verify_good_filtration(F)
    assert report.ok
    assert report.to_json()["exhaustion"] == "window-relative"


@pytest.mark.parametrize("name, bound, expected", [
    ("kx2.json", 6, [1] * 7),
    ("kx3.json", 5, [1] * 6),
    ("kxy2.json", 5, [1, 2, 3, 4, 5, 6]),
])
def test_tate_betti_over_fields(ring_over, field_json, name, bound, expected):
    A = ring_over(name, field_json)
    tate = tate_resolve(A, bound)
    assert tate.acyclic()
    assert tate.betti == expected
    assert minimal_resolution(ModulePresentation.residue_field(A), bound).betti == expected


def test_dg_axioms_over_fields(ring_over, field_json):
    report = tate_resolve(ring_over("kxy2.json", field_json), 4).dg.verify_axioms()
    assert report["skew"] and report["leibniz"] and report["d_squared"]
