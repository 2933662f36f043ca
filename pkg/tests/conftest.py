"""
Общие фикстуры: кольца из homforge/fixtures и стандартные комплексы.
"""

import pytest

from homforge.algebra import LocalAlgebra
from homforge.complexes import stalk, two_term
from homforge.loaders import FIXTURES_DIR, fixture_path, load_fixture_ring
from homforge.utils import read_json
from homforge.resolutions import koszul_on_maximal_ideal


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def kx2():
    return load_fixture_ring("kx2.json")


@pytest.fixture
def kx3():
    return load_fixture_ring("kx3.json")


@pytest.fixture
def kxy2():
    return load_fixture_ring("kxy2.json")


@pytest.fixture
def kx_graded():
    return load_fixture_ring("kx_graded.json")


@pytest.fixture
def kxy_graded():
    return load_fixture_ring("kxy.json")


@pytest.fixture
def stalk_kx2(kx2):
    return stalk(kx2)


@pytest.fixture
def cone_x(kx2):
    """[A →x A] над k[x]/(x²) в индексах −1, 0."""
    return two_term(kx2, "x")


@pytest.fixture
def koszul_xy(kxy2):
    return koszul_on_maximal_ideal(kxy2)


FIELDS = ["Q", {"Fp": 2}, {"Fp": 3}]
FIELD_IDS = ["Q", "GF2", "GF3"]


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def field_json(request):
    return request.param


@pytest.fixture
def ring_over():
    """Кольцо из homforge/fixtures с заменой поля вычетов."""
    def build(name: str, field) -> LocalAlgebra:
        data = dict(read_json(fixture_path(name)))
        data["field"] = field
        return LocalAlgebra.from_json(data)
    return build
