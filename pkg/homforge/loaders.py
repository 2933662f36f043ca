"""
Загрузка входных данных: кольца, комплексы, отображения, треугольники, модули.

Вложенные объекты могут задаваться inline или путем к JSON-файлу
(относительно файла, в котором встретилась ссылка).
"""

import logging
import os
from typing import Any, Optional

from homforge.algebra import LocalAlgebra
from homforge.complexes import ChainMap, Complex, Triangle, cone_triangle
from homforge.errors import InputError
from homforge.resolutions import ModulePresentation
from homforge.utils import file_digest, read_json

logger = logging.getLogger(__name__)

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


class InputLoader:
    """
    Читает входные файлы и запоминает их SHA-256 для отчета.

    Args:
        ring: Путь к кольцу, перекрывающему поле "ring" во всех комплексах
    """

    def __init__(self, ring: Optional[str] = None):
        self.digests: dict[str, str] = {}
        self._rings: dict[str, LocalAlgebra] = {}
        self._override = self.ring(ring) if ring else None

    def read(self, path: str) -> tuple[Any, str]:
        path = os.path.normpath(path)
        data = read_json(path)
        self.digests[path] = file_digest(path)
        logger.debug(f"Прочитан входной файл: {path}")
        return data, os.path.dirname(path)

    def _resolve(self, value: Any, base_dir: Optional[str], what: str) -> tuple[Any, Optional[str]]:
        if isinstance(value, str):
            path = value
            if base_dir and not os.path.isabs(path):
                path = os.path.join(base_dir, path)
            return self.read(path)
        if isinstance(value, dict):
            return value, base_dir
        raise InputError(f"Ожидался объект JSON или путь к файлу, получено {type(value).__name__}",
                         location=what)

    def ring(self, value: Any, base_dir: Optional[str] = None) -> LocalAlgebra:
        if isinstance(value, str):
            key = os.path.normpath(os.path.join(base_dir, value) if base_dir and not os.path.isabs(value)
                                   else value)
            if key not in self._rings:
                data, _ = self.read(key)
                self._rings[key] = LocalAlgebra.from_json(data)
            return self._rings[key]
        data, _ = self._resolve(value, base_dir, "ring")
        return LocalAlgebra.from_json(data)

    def _algebra_for(self, data: dict, base_dir: Optional[str], algebra: Optional[LocalAlgebra],
                     what: str) -> LocalAlgebra:
        if algebra is not None:
            return algebra
        if self._override is not None:
            return self._override
        if "ring" not in data:
            raise InputError("Не указано кольцо: нужно поле 'ring' или флаг --ring", location=what)
        return self.ring(data["ring"], base_dir)

    def complex(self, value: Any, base_dir: Optional[str] = None,
                algebra: Optional[LocalAlgebra] = None, check: bool = True) -> Complex:
        """check=False пропускает проверку ∂∘∂ = 0 (для команды validate)."""
        data, here = self._resolve(value, base_dir, "complex")
        return Complex.from_json(data, self._algebra_for(data, here, algebra, "complex"), check=check)

    def chain_map(self, value: Any, base_dir: Optional[str] = None,
                  algebra: Optional[LocalAlgebra] = None) -> ChainMap:
        """Формат: {"source": ..., "target": ..., "degree": d, "components": {"i": матрица}}."""
        data, here = self._resolve(value, base_dir, "map")
        for key in ("source", "target"):
            if key not in data:
                raise InputError(f"Отображение должно содержать поле '{key}'", location="map")
        source = self.complex(data["source"], here, algebra)
        target = self.complex(data["target"], here, source.algebra)
        return ChainMap.from_json(data, source, target)

    def triangle(self, value: Any, base_dir: Optional[str] = None) -> Triangle:
        """
        Формат: {"cone": отображение}: треугольник конуса,
        или {"u": ..., "w": ..., "v": ...}: заявленный треугольник.
        """
        data, here = self._resolve(value, base_dir, "triangle")
        if "cone" in data:
            return cone_triangle(self.chain_map(data["cone"], here))
        missing = [key for key in ("u", "w", "v") if key not in data]
        if missing:
            raise InputError(f"Треугольник должен содержать 'cone' или 'u', 'w', 'v' (нет {missing})",
                             location="triangle")
        u = self.chain_map(data["u"], here)
        w = self.chain_map(data["w"], here, u.algebra)
        v = self.chain_map(data["v"], here, u.algebra)
        return Triangle(u, w, v, data.get("provenance", "claimed"))

    def module(self, value: Any, base_dir: Optional[str] = None) -> ModulePresentation:
        data, here = self._resolve(value, base_dir, "module")
        return ModulePresentation.from_json(data, self._algebra_for(data, here, None, "module"))

    def family(self, value: Any, base_dir: Optional[str] = None,
               algebra: Optional[LocalAlgebra] = None) -> list[Complex]:
        data, here = self._resolve(value, base_dir, "family")
        items = data.get("complexes") if isinstance(data, dict) else None
        if not isinstance(items, list):
            raise InputError("Семейство должно содержать список 'complexes'", location="family")
        return [self.complex(item, here, algebra) for item in items]


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES_DIR, name)


def load_fixture_ring(name: str) -> LocalAlgebra:
    return LocalAlgebra.from_json(read_json(fixture_path(name)))
