"""
Ограниченные коцепные комплексы свободных A-модулей (и степеней E на артиновом бэкенде).

Соглашения:
    - когомологическая индексация, матрицы действуют на столбцы, g∘f = g·f;
    - сдвиг: X[m]ⁱ = X^{i+m}, дифференциал (−1)^m ∂^{i+m};
    - конус: cone(f)ⁿ = U^{n+1} ⊕ Vⁿ, ∂(u, v) = (−∂u, ∂v − f(u));
    - градуированная матрица: элемент (i, j) имеет степень
      deg(образующая источника j) − deg(образующая цели i) + внутренняя степень отображения.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

from homforge import linalg
from homforge.algebra import LocalAlgebra, MatlisModule, Monomial, RingElem, divides
from homforge.errors import (
    DifferentialError,
    InputError,
    MismatchError,
    ShapeError,
    UnsupportedBackendError,
)

logger = logging.getLogger(__name__)

FREE = "free"
INJECTIVE = "injective"


@dataclass(frozen=True)
class FreeModule:
    """
    Член комплекса: A^rank (kind="free") или E^rank (kind="injective").
    """
    rank: int
    degrees: Optional[tuple[int, ...]] = None
    kind: str = FREE

    def __post_init__(self):
        if self.rank < 0:
            raise InputError(f"Отрицательный ранг: {self.rank}")
        if self.degrees is not None and len(self.degrees) != self.rank:
            raise InputError(f"Число степеней {len(self.degrees)} не совпадает с рангом {self.rank}")
        if self.kind not in (FREE, INJECTIVE):
            raise InputError(f"Неизвестный тип члена: {self.kind}")

    def degree(self, generator: int) -> int:
        return self.degrees[generator] if self.degrees is not None else 0

    def twisted(self, delta: int) -> "FreeModule":
        if self.degrees is None or delta == 0:
            return self
        return FreeModule(self.rank, tuple(g + delta for g in self.degrees), self.kind)

    def with_kind(self, kind: str) -> "FreeModule":
        return FreeModule(self.rank, self.degrees, kind)


def zero_module(algebra: LocalAlgebra, kind: str = FREE) -> FreeModule:
    return FreeModule(0, () if algebra.is_graded else None, kind)


def direct_sum_modules(first: FreeModule, second: FreeModule) -> FreeModule:
    if first.degrees is None or second.degrees is None:
        degrees = None
    else:
        degrees = first.degrees + second.degrees
    return FreeModule(first.rank + second.rank, degrees, first.kind)


class MatrixOverA:
    """
    Разреженная матрица над A: (строка, столбец) → ненулевой RingElem.
    """

    __slots__ = ("algebra", "rows", "cols", "entries")

    def __init__(self, algebra: LocalAlgebra, rows: int, cols: int, entries: Optional[dict] = None):
        self.algebra = algebra
        self.rows = rows
        self.cols = cols
        self.entries = {key: a for key, a in (entries or {}).items() if not a.is_zero()}

    @classmethod
    def zero(cls, algebra: LocalAlgebra, rows: int, cols: int) -> "MatrixOverA":
        return cls(algebra, rows, cols)

    @classmethod
    def identity(cls, algebra: LocalAlgebra, n: int, scalar: Optional[RingElem] = None) -> "MatrixOverA":
        value = algebra.one() if scalar is None else scalar
        return cls(algebra, n, n, {(i, i): value for i in range(n)})

    @classmethod
    def from_rows(cls, algebra: LocalAlgebra, rows: Sequence[Sequence], cols: Optional[int] = None) -> "MatrixOverA":
        n_cols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != n_cols:
                raise InputError(f"Строка {i} матрицы имеет длину {len(row)}, ожидалось {n_cols}")
            for j, value in enumerate(row):
                element = value if isinstance(value, RingElem) else algebra.parse(value)
                entries[(i, j)] = element
        return cls(algebra, len(rows), n_cols, entries)

    def entry(self, i: int, j: int) -> RingElem:
        return self.entries.get((i, j)) or self.algebra.zero()

    def __matmul__(self, other: "MatrixOverA") -> "MatrixOverA":
        if self.cols != other.rows:
            raise MismatchError(f"Несогласованные размеры {self.rows}×{self.cols} и {other.rows}×{other.cols}")
        by_row: dict[int, list] = {}
        for (k, j), b in other.entries.items():
            by_row.setdefault(k, []).append((j, b))
        result: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                product = a * b
                if product.is_zero():
                    continue
                key = (i, j)
                result[key] = result[key] + product if key in result else product
        return MatrixOverA(self.algebra, self.rows, other.cols, result)

    def __add__(self, other: "MatrixOverA") -> "MatrixOverA":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MismatchError("Сложение матриц разного размера")
        result = dict(self.entries)
        for key, b in other.entries.items():
            result[key] = result[key] + b if key in result else b
        return MatrixOverA(self.algebra, self.rows, self.cols, result)

    def __neg__(self) -> "MatrixOverA":
        return MatrixOverA(self.algebra, self.rows, self.cols, {k: -a for k, a in self.entries.items()})

    def __sub__(self, other: "MatrixOverA") -> "MatrixOverA":
        return self + (-other)

    def scale(self, factor: Union[RingElem, int]) -> "MatrixOverA":
        if isinstance(factor, int):
            factor = self.algebra.scalar(factor)
        return MatrixOverA(self.algebra, self.rows, self.cols,
                           {k: factor * a for k, a in self.entries.items()})

    def transpose(self) -> "MatrixOverA":
        return MatrixOverA(self.algebra, self.cols, self.rows,
                           {(j, i): a for (i, j), a in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixOverA)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def column(self, j: int) -> list[tuple[int, RingElem]]:
        return sorted((i, a) for (i, jj), a in self.entries.items() if jj == j)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MatrixOverA":
        row_pos = {r: k for k, r in enumerate(rows)}
        col_pos = {c: k for k, c in enumerate(cols)}
        entries = {
            (row_pos[i], col_pos[j]): a
            for (i, j), a in self.entries.items()
            if i in row_pos and j in col_pos
        }
        return MatrixOverA(self.algebra, len(rows), len(cols), entries)

    @classmethod
    def block(cls, algebra: LocalAlgebra, blocks: Sequence[Sequence["MatrixOverA"]],
              row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "MatrixOverA":
        entries = {}
        row_offset = 0
        for bi, row in enumerate(blocks):
            col_offset = 0
            for bj, piece in enumerate(row):
                if piece is not None:
                    if (piece.rows, piece.cols) != (row_sizes[bi], col_sizes[bj]):
                        raise MismatchError("Блок имеет неверный размер")
                    for (i, j), a in piece.entries.items():
                        entries[(i + row_offset, j + col_offset)] = a
                col_offset += col_sizes[bj]
            row_offset += row_sizes[bi]
        return cls(algebra, sum(row_sizes), sum(col_sizes), entries)

    def mod_maximal(self):
        """Редукция по модулю 𝔪: матрица свободных членов над k."""
        dok = {key: a.constant_term() for key, a in self.entries.items()}
        return linalg.from_dok(dok, self.rows, self.cols, self.algebra.K)

    def is_minimal(self) -> bool:
        return all(a.in_maximal_ideal() for a in self.entries.values())

    def inverse(self) -> Optional["MatrixOverA"]:
        """
        Обратная матрица над локальным кольцом (метод Гаусса–Жордана с обратимыми ведущими).

        Returns:
            Optional[MatrixOverA]: Обратная матрица или None, если матрица необратима
        """
        n = self.rows
        if n != self.cols:
            return None
        algebra = self.algebra
        left = [[self.entry(i, j) for j in range(n)] for i in range(n)]
        right = [[algebra.one() if i == j else algebra.zero() for j in range(n)] for i in range(n)]
        for c in range(n):
            pivot = next((r for r in range(c, n) if left[r][c].is_unit()), None)
            if pivot is None:
                return None
            left[c], left[pivot] = left[pivot], left[c]
            right[c], right[pivot] = right[pivot], right[c]
            inv = left[c][c].inverse()
            left[c] = [inv * a for a in left[c]]
            right[c] = [inv * a for a in right[c]]
            for r in range(n):
                if r != c and not left[r][c].is_zero():
                    factor = left[r][c]
                    left[r] = [a - factor * b for a, b in zip(left[r], left[c])]
                    right[r] = [a - factor * b for a, b in zip(right[r], right[c])]
        return MatrixOverA.from_rows(algebra, right, n)

    def to_json(self) -> list[list[str]]:
        return [[self.entry(i, j).format() for j in range(self.cols)] for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"MatrixOverA({self.to_json()})"


# --- k-разложение членов ---

@lru_cache(maxsize=None)
def kcoords(algebra: LocalAlgebra, module: FreeModule, d: Optional[int] = None) -> tuple:
    """
    k-координаты члена: пары (образующая, моном).

    Артинов случай (d = None): все мономы базиса; градуированный: мономы степени d − deg(образующей).
    Для E-членов моном b означает двойственный базисный вектор b*.
    """
    if module.kind == INJECTIVE:
        algebra.require_artinian("E-члены")
    coords = []
    for g in range(module.rank):
        if d is None:
            monomials = algebra.basis
        else:
            monomials = algebra.monomials_of_degree(d - module.degree(g))
        coords.extend((g, m) for m in monomials)
    return tuple(coords)


@lru_cache(maxsize=None)
def _positions(algebra: LocalAlgebra, module: FreeModule, d: Optional[int]) -> dict:
    return {coord: k for k, coord in enumerate(kcoords(algebra, module, d))}


def kdim(algebra: LocalAlgebra, module: FreeModule, d: Optional[int] = None) -> int:
    return len(kcoords(algebra, module, d))


def expand(matrix: MatrixOverA, source: FreeModule, target: FreeModule,
           d: Optional[int] = None, map_degree: int = 0):
    """
    k-линейная матрица A-матрицы: из kcoords(source, d) в kcoords(target, d + map_degree).

    Для свободных членов элемент действует умножением, для E-членов
    контрагредиентно (a·b* = Σ c_m (b/m)*).
    """
    algebra = matrix.algebra
    K = algebra.K
    target_degree = None if d is None else d + map_degree
    src = kcoords(algebra, source, d)
    positions = _positions(algebra, target, target_degree)
    by_column: dict[int, list] = {}
    for (i, j), a in matrix.entries.items():
        by_column.setdefault(j, []).append((i, a))
    dok: dict = {}
    injective = source.kind == INJECTIVE
    for col, (j, b) in enumerate(src):
        for i, a in by_column.get(j, ()):
            for m, c in a.terms.items():
                if injective:
                    if not divides(m, b):
                        continue
                    image = tuple(x - y for x, y in zip(b, m))
                else:
                    image = algebra.multiply_monomials(m, b)
                    if image is None:
                        continue
                row = positions.get((i, image))
                if row is None:
                    raise InputError(
                        f"Неоднородный элемент матрицы в позиции ({i}, {j}): {a}"
                    )
                key = (row, col)
                dok[key] = dok.get(key, K.zero) + c
    return linalg.from_dok(dok, len(positions), len(src), K)


def scalar_action(algebra: LocalAlgebra, module: FreeModule, a: RingElem, d: Optional[int] = None):
    """k-матрица умножения на a ∈ A на члене (градуированно: из степени d в d + deg a)."""
    degree = 0 if d is None or a.is_zero() else a.degree
    return expand(MatrixOverA.identity(algebra, module.rank, a), module, module, d, degree)


def vector_to_column(algebra: LocalAlgebra, module: FreeModule, vector: Sequence,
                     d: Optional[int] = None) -> list[RingElem]:
    """Переводит k-вектор свободного члена в столбец элементов A."""
    column = [algebra.zero() for _ in range(module.rank)]
    for (g, m), c in zip(kcoords(algebra, module, d), vector):
        if not algebra.K.is_zero(c):
            column[g] = column[g] + algebra.monomial(m, c)
    return column


def column_to_vector(algebra: LocalAlgebra, module: FreeModule, column: Sequence[RingElem],
                     d: Optional[int] = None) -> list:
    positions = _positions(algebra, module, d)
    vector = [algebra.K.zero] * len(positions)
    for g, a in enumerate(column):
        for m, c in a.terms.items():
            vector[positions[(g, m)]] = c
    return vector


# --- комплексы ---

@dataclass
class ValidationReport:
    ok: bool
    index: Optional[int] = None
    entry: Optional[tuple[int, int]] = None
    value: Optional[str] = None

    def to_json(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {"ok": False, "index": self.index, "entry": list(self.entry), "value": self.value}


class Complex:
    """
    Ограниченный коцепной комплекс: члены FreeModule, дифференциалы ∂ⁱ: Xⁱ → X^{i+1}.

    Args:
        algebra: Базовая алгебра
        terms: Индекс → член (нулевые члены отбрасываются)
        differentials: Индекс i → матрица ∂ⁱ
        kind: "free" или "injective"
        check: Проверять ∂∘∂ = 0 при построении
    """

    def __init__(self, algebra: LocalAlgebra, terms: dict, differentials: Optional[dict] = None,
                 kind: str = FREE, check: bool = True):
        if kind == INJECTIVE:
            algebra.require_artinian("комплексы E-модулей")
        self.algebra = algebra
        self.kind = kind
        self.terms: dict[int, FreeModule] = {}
        for i, module in terms.items():
            if isinstance(module, int):
                module = FreeModule(module, (0,) * module if algebra.is_graded else None, kind)
            if module.kind != kind:
                module = module.with_kind(kind)
            if algebra.is_graded and module.degrees is None:
                raise InputError(f"Градуированный бэкенд требует степени образующих (член {i})")
            if algebra.is_artinian and module.degrees is not None:
                module = FreeModule(module.rank, None, kind)
            if module.rank:
                self.terms[int(i)] = module
        self.differentials: dict[int, MatrixOverA] = {}
        for i, matrix in (differentials or {}).items():
            i = int(i)
            expected = (self.rank(i + 1), self.rank(i))
            if (matrix.rows, matrix.cols) != expected:
                raise InputError(
                    f"Дифференциал {i} имеет размер {matrix.rows}×{matrix.cols}, ожидалось {expected[0]}×{expected[1]}"
                )
            if not matrix.is_zero():
                self.differentials[i] = matrix
        if algebra.is_graded:
            self._check_homogeneous()
        if check:
            report = self.validate()
            if not report.ok:
                raise DifferentialError(
                    f"∂∘∂ ≠ 0 в индексе {report.index}, элемент {report.entry}",
                    index=report.index, entry=report.entry,
                )

    def _check_homogeneous(self) -> None:
        for i, matrix in self.differentials.items():
            src, tgt = self.term(i), self.term(i + 1)
            for (r, c), a in matrix.entries.items():
                if not a.is_homogeneous() or a.degree != src.degree(c) - tgt.degree(r):
                    raise InputError(
                        f"Элемент ({r}, {c}) дифференциала {i} неоднороден или имеет неверную степень: {a}"
                    )

    # --- доступ ---

    def term(self, i: int) -> FreeModule:
        return self.terms.get(i) or zero_module(self.algebra, self.kind)

    def rank(self, i: int) -> int:
        module = self.terms.get(i)
        return module.rank if module else 0

    def d(self, i: int) -> MatrixOverA:
        matrix = self.differentials.get(i)
        if matrix is None:
            return MatrixOverA.zero(self.algebra, self.rank(i + 1), self.rank(i))
        return matrix

    @property
    def indices(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> Optional[tuple[int, int]]:
        if not self.terms:
            return None
        return (min(self.terms), max(self.terms))

    @property
    def lo(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def hi(self) -> int:
        return max(self.terms) if self.terms else 0

    def ranks(self) -> dict[int, int]:
        return {i: self.terms[i].rank for i in self.indices}

    @property
    def total_rank(self) -> int:
        return sum(m.rank for m in self.terms.values())

    def is_minimal(self) -> bool:
        return all(m.is_minimal() for m in self.differentials.values())

    def kdim(self, i: int, d: Optional[int] = None) -> int:
        return kdim(self.algebra, self.term(i), d)

    def expand_d(self, i: int, d: Optional[int] = None):
        return expand(self.d(i), self.term(i), self.term(i + 1), d)

    def degree_range(self) -> tuple[int, int]:
        """Диапазон внутренних степеней для градуированных вычислений до окна D."""
        degrees = [g for m in self.terms.values() for g in (m.degrees or ())]
        low = min(degrees) if degrees else 0
        return low, self.algebra.window

    def validate(self) -> ValidationReport:
        """
        Проверяет ∂^{i+1}∘∂ⁱ = 0 для всех i.

        Returns:
            ValidationReport: ok или первый индекс и элемент нарушения
        """
        for i in sorted(self.differentials):
            composite = self.d(i + 1) @ self.d(i)
            if not composite.is_zero():
                entry = min(composite.entries)
                value = composite.entries[entry].format()
                logger.debug(f"Нарушение ∂∘∂ = 0 в индексе {i}, элемент {entry}: {value}")
                return ValidationReport(False, i, entry, value)
        return ValidationReport(True)

    # --- сравнение и сериализация ---

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Complex)
            and self.algebra == other.algebra
            and self.kind == other.kind
            and self.terms == other.terms
            and self.differentials == other.differentials
        )

    def __hash__(self) -> int:
        return hash((self.kind, tuple(sorted(self.ranks().items()))))

    def to_json(self) -> dict:
        data = {"ring": self.algebra.to_json()}
        if self.kind != FREE:
            data["kind"] = self.kind
        data["support"] = list(self.support) if self.support else []
        terms = {}
        for i in self.indices:
            entry = {"rank": self.terms[i].rank}
            if self.terms[i].degrees is not None:
                entry["degrees"] = list(self.terms[i].degrees)
            terms[str(i)] = entry
        data["terms"] = terms
        data["differentials"] = {str(i): self.differentials[i].to_json() for i in sorted(self.differentials)}
        return data

    @classmethod
    def from_json(cls, data: dict, algebra: LocalAlgebra, check: bool = True) -> "Complex":
        """
        Строит комплекс из JSON-описания.

        Raises:
            InputError: При некорректной структуре, размерах или записи элементов
        """
        if not isinstance(data, dict) or "terms" not in data:
            raise InputError("Описание комплекса должно содержать 'terms'", location="complex")
        kind = data.get("kind", FREE)
        terms = {}
        for key, term_data in data["terms"].items():
            location = f"terms[{key}]"
            try:
                index = int(key)
            except ValueError:
                raise InputError(f"Индекс члена не является целым: {key!r}", location=location)
            if not isinstance(term_data, dict) or not isinstance(term_data.get("rank"), int):
                raise InputError("Член должен иметь целый 'rank'", location=location)
            degrees = term_data.get("degrees")
            if algebra.is_graded and degrees is None:
                raise InputError("Градуированный бэкенд требует 'degrees'", location=location)
            terms[index] = FreeModule(term_data["rank"], tuple(degrees) if degrees is not None else None, kind)
        support = data.get("support")
        if support:
            lo, hi = support
            outside = [i for i, m in terms.items() if m.rank and not lo <= i <= hi]
            if outside:
                raise InputError(f"Члены {outside} вне носителя [{lo}, {hi}]", location="support")
        differentials = {}
        for key, rows in data.get("differentials", {}).items():
            location = f"differentials[{key}]"
            try:
                index = int(key)
                source = terms.get(index)
                target = terms.get(index + 1)
                n_cols = source.rank if source else 0
                matrix = MatrixOverA.from_rows(algebra, rows, n_cols) if rows else \
                    MatrixOverA.zero(algebra, target.rank if target else 0, n_cols)
            except InputError as e:
                raise InputError(str(e), location=location)
            except ValueError:
                raise InputError(f"Индекс дифференциала не является целым: {key!r}", location=location)
            differentials[index] = matrix
        try:
            return cls(algebra, terms, differentials, kind=kind, check=check)
        except DifferentialError:
            raise
        except InputError as e:
            raise InputError(str(e), location="complex")

    def describe(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for i in self.indices:
            symbol = "A" if self.kind == FREE else "E"
            rank = self.terms[i].rank
            pieces.append(f"{symbol}^{rank}@{i}" if rank > 1 else f"{symbol}@{i}")
        return "[" + " → ".join(pieces) + "]"

    def __repr__(self) -> str:
        return f"Complex({self.describe()})"


def stalk(algebra: LocalAlgebra, index: int = 0, rank: int = 1, kind: str = FREE,
          degrees: Optional[Sequence[int]] = None) -> Complex:
    """Комплекс, сосредоточенный в одном индексе."""
    if degrees is None and algebra.is_graded:
        degrees = (0,) * rank
    module = FreeModule(rank, tuple(degrees) if degrees is not None else None, kind)
    return Complex(algebra, {index: module}, {}, kind=kind)


def zero_complex(algebra: LocalAlgebra, kind: str = FREE) -> Complex:
    return Complex(algebra, {}, {}, kind=kind)


def two_term(algebra: LocalAlgebra, entry: Union[str, RingElem], lo: int = -1) -> Complex:
    """Комплекс [A →a A] в степенях lo, lo+1."""
    a = entry if isinstance(entry, RingElem) else algebra.parse(entry)
    degrees = None
    if algebra.is_graded:
        degrees = (a.degree or 0,)
    source = FreeModule(1, degrees)
    target = FreeModule(1, (0,) if algebra.is_graded else None)
    return Complex(algebra, {lo: source, lo + 1: target},
                   {lo: MatrixOverA(algebra, 1, 1, {(0, 0): a})})


def _require_same_algebra(*complexes: Complex) -> None:
    first = complexes[0]
    for other in complexes[1:]:
        if other.algebra != first.algebra:
            raise MismatchError("Комплексы заданы над разными алгебрами")
        if other.kind != first.kind:
            raise MismatchError("Комплексы имеют разный тип членов")


def shift(C: Complex, m: int) -> Complex:
    """X[m]ⁱ = X^{i+m}, дифференциал (−1)^m ∂^{i+m}."""
    if m == 0:
        return C
    sign = -1 if m % 2 else 1
    terms = {i - m: module for i, module in C.terms.items()}
    diffs = {i - m: matrix.scale(sign) for i, matrix in C.differentials.items()}
    return Complex(C.algebra, terms, diffs, kind=C.kind, check=False)


def direct_sum(U: Complex, V: Complex) -> Complex:
    _require_same_algebra(U, V)
    indices = set(U.terms) | set(V.terms)
    terms = {i: direct_sum_modules(U.term(i), V.term(i)) for i in indices}
    diffs = {}
    for i in indices:
        diffs[i] = MatrixOverA.block(
            U.algebra,
            [[U.d(i), None], [None, V.d(i)]],
            [U.rank(i + 1), V.rank(i + 1)],
            [U.rank(i), V.rank(i)],
        )
    return Complex(U.algebra, terms, diffs, kind=U.kind, check=False)


# --- цепные отображения ---

class ChainMap:
    """
    Цепное отображение f: U → V внутренней степени degree (градуированный бэкенд).
    """

    def __init__(self, source: Complex, target: Complex, components: Optional[dict] = None,
                 degree: int = 0):
        if source.algebra != target.algebra:
            raise MismatchError("Источник и цель заданы над разными алгебрами")
        self.source = source
        self.target = target
        self.degree = degree
        self.algebra = source.algebra
        self.components: dict[int, MatrixOverA] = {}
        for i, matrix in (components or {}).items():
            expected = (target.rank(i), source.rank(i))
            if (matrix.rows, matrix.cols) != expected:
                raise MismatchError(
                    f"Компонента {i} имеет размер {matrix.rows}×{matrix.cols}, ожидалось {expected[0]}×{expected[1]}"
                )
            if not matrix.is_zero():
                self.components[int(i)] = matrix

    @classmethod
    def identity(cls, C: Complex) -> "ChainMap":
        return cls(C, C, {i: MatrixOverA.identity(C.algebra, m.rank) for i, m in C.terms.items()})

    @classmethod
    def zero(cls, U: Complex, V: Complex, degree: int = 0) -> "ChainMap":
        return cls(U, V, {}, degree)

    def component(self, i: int) -> MatrixOverA:
        matrix = self.components.get(i)
        if matrix is None:
            return MatrixOverA.zero(self.algebra, self.target.rank(i), self.source.rank(i))
        return matrix

    def is_zero(self) -> bool:
        return not self.components

    def failure(self) -> Optional[int]:
        """Первый индекс, где ∂f ≠ f∂, или None."""
        indices = set(self.source.terms) | set(self.target.terms)
        for i in sorted(indices | {i - 1 for i in indices}):
            left = self.target.d(i) @ self.component(i)
            right = self.component(i + 1) @ self.source.d(i)
            if left != right:
                return i
        return None

    def is_chain_map(self) -> bool:
        return self.failure() is None

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        if other.target != self.source:
            raise MismatchError("Композиция: цель первого отображения не совпадает с источником второго")
        indices = set(other.components) & set(self.components)
        return ChainMap(other.source, self.target,
                        {i: self.components[i] @ other.components[i] for i in indices},
                        self.degree + other.degree)

    def _check_parallel(self, other: "ChainMap") -> None:
        if self.source != other.source or self.target != other.target:
            raise MismatchError("Отображения имеют разные источники или цели")

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._check_parallel(other)
        indices = set(self.components) | set(other.components)
        return ChainMap(self.source, self.target,
                        {i: self.component(i) + other.component(i) for i in indices}, self.degree)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {i: -m for i, m in self.components.items()}, self.degree)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def scale(self, a: Union[RingElem, int]) -> "ChainMap":
        if isinstance(a, int):
            a = self.algebra.scalar(a)
        extra = 0 if a.is_zero() or self.algebra.is_artinian else a.degree
        return ChainMap(self.source, self.target,
                        {i: m.scale(a) for i, m in self.components.items()}, self.degree + extra)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ChainMap)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.components.items()))

    def is_isomorphism_mod_maximal(self) -> bool:
        """Все компоненты квадратны и обратимы по модулю 𝔪."""
        indices = set(self.source.terms) | set(self.target.terms)
        for i in indices:
            if self.source.rank(i) != self.target.rank(i):
                return False
            if not linalg.is_invertible(self.component(i).mod_maximal()):
                return False
        return True

    def expand(self, i: int, d: Optional[int] = None):
        return expand(self.component(i), self.source.term(i), self.target.term(i), d, self.degree)

    def to_json(self) -> dict:
        data = {"components": {str(i): self.components[i].to_json() for i in sorted(self.components)}}
        if self.algebra.is_graded:
            data["degree"] = self.degree
        return data

    @classmethod
    def from_json(cls, data: dict, source: Complex, target: Complex) -> "ChainMap":
        components = {}
        for key, rows in data.get("components", {}).items():
            try:
                index = int(key)
                components[index] = MatrixOverA.from_rows(source.algebra, rows, source.rank(index)) \
                    if rows else MatrixOverA.zero(source.algebra, target.rank(index), source.rank(index))
            except (InputError, ValueError) as e:
                raise InputError(str(e), location=f"components[{key}]")
        f = cls(source, target, components, int(data.get("degree", 0)))
        failure = f.failure()
        if failure is not None:
            raise InputError(f"Отображение не коммутирует с дифференциалами в индексе {failure}",
                             location="components")
        return f

    def __repr__(self) -> str:
        return f"ChainMap({self.source.describe()} → {self.target.describe()})"


def shift_map(f: ChainMap, m: int) -> ChainMap:
    """f[m]ⁱ = f^{i+m} (без знака)."""
    if m == 0:
        return f
    return ChainMap(shift(f.source, m), shift(f.target, m),
                    {i - m: matrix for i, matrix in f.components.items()}, f.degree)


def sum_inclusions(U: Complex, V: Complex) -> tuple[ChainMap, ChainMap]:
    S = direct_sum(U, V)
    algebra = U.algebra
    first, second = {}, {}
    for i in S.terms:
        first[i] = MatrixOverA.block(algebra, [[MatrixOverA.identity(algebra, U.rank(i))],
                                               [MatrixOverA.zero(algebra, V.rank(i), U.rank(i))]],
                                     [U.rank(i), V.rank(i)], [U.rank(i)])
        second[i] = MatrixOverA.block(algebra, [[MatrixOverA.zero(algebra, U.rank(i), V.rank(i))],
                                                [MatrixOverA.identity(algebra, V.rank(i))]],
                                      [U.rank(i), V.rank(i)], [V.rank(i)])
    return ChainMap(U, S, first), ChainMap(V, S, second)


def sum_projections(U: Complex, V: Complex) -> tuple[ChainMap, ChainMap]:
    first, second = sum_inclusions(U, V)
    S = first.target
    return (
        ChainMap(S, U, {i: m.transpose() for i, m in first.components.items()}),
        ChainMap(S, V, {i: m.transpose() for i, m in second.components.items()}),
    )


def map_sum(f: ChainMap, g: ChainMap) -> ChainMap:
    """f ⊕ g: U ⊕ U' → V ⊕ V'."""
    S = direct_sum(f.source, g.source)
    T = direct_sum(f.target, g.target)
    algebra = f.algebra
    components = {}
    for i in set(S.terms) | set(T.terms):
        components[i] = MatrixOverA.block(
            algebra, [[f.component(i), None], [None, g.component(i)]],
            [f.target.rank(i), g.target.rank(i)], [f.source.rank(i), g.source.rank(i)],
        )
    return ChainMap(S, T, components, f.degree)


# --- конус и треугольники ---

def cone(f: ChainMap) -> Complex:
    """
    cone(f)ⁿ = U^{n+1} ⊕ Vⁿ, ∂(u, v) = (−∂u, ∂v − f(u)).

    Для градуированного отображения степени δ U-часть подкручивается на δ.
    """
    U, V = f.source, f.target
    _require_same_algebra(U, V)
    algebra = U.algebra
    indices = {i - 1 for i in U.terms} | set(V.terms)
    terms = {n: direct_sum_modules(U.term(n + 1).twisted(f.degree), V.term(n)) for n in indices}
    diffs = {}
    for n in indices:
        diffs[n] = MatrixOverA.block(
            algebra,
            [[-U.d(n + 1), None], [-f.component(n + 1), V.d(n)]],
            [U.rank(n + 2), V.rank(n + 1)],
            [U.rank(n + 1), V.rank(n)],
        )
    return Complex(algebra, terms, diffs, kind=U.kind, check=False)


class Triangle:
    """
    Треугольник U →u W →w V →v U[1].

    provenance: "strict-cone" для построенных из конуса, иначе "claimed".
    """

    def __init__(self, u: ChainMap, w: ChainMap, v: ChainMap, provenance: str = "claimed"):
        if u.target != w.source:
            raise ShapeError("Цель u не совпадает с источником w")
        if w.target != v.source:
            raise ShapeError("Цель w не совпадает с источником v")
        if v.target != shift(u.source, 1):
            raise ShapeError("Цель v не равна первой вершине со сдвигом [1]")
        self.u = u
        self.w = w
        self.v = v
        self.provenance = provenance

    @property
    def first(self) -> Complex:
        return self.u.source

    @property
    def second(self) -> Complex:
        return self.u.target

    @property
    def third(self) -> Complex:
        return self.w.target

    def to_json(self) -> dict:
        return {
            "provenance": self.provenance,
            "vertices": [self.first.to_json(), self.second.to_json(), self.third.to_json()],
            "u": self.u.to_json(),
            "w": self.w.to_json(),
            "v": self.v.to_json(),
        }


def cone_inclusion(f: ChainMap) -> ChainMap:
    """ι: V → cone(f), v ↦ (0, v)."""
    U, V = f.source, f.target
    C = cone(f)
    algebra = U.algebra
    components = {}
    for n in V.terms:
        components[n] = MatrixOverA.block(
            algebra, [[MatrixOverA.zero(algebra, U.rank(n + 1), V.rank(n))],
                      [MatrixOverA.identity(algebra, V.rank(n))]],
            [U.rank(n + 1), V.rank(n)], [V.rank(n)],
        )
    return ChainMap(V, C, components)


def cone_projection(f: ChainMap) -> ChainMap:
    """π: cone(f) → U[1], (u, v) ↦ −u."""
    U, V = f.source, f.target
    C = cone(f)
    algebra = U.algebra
    components = {}
    for n in C.terms:
        components[n] = MatrixOverA.block(
            algebra, [[-MatrixOverA.identity(algebra, U.rank(n + 1)),
                       MatrixOverA.zero(algebra, U.rank(n + 1), V.rank(n))]],
            [U.rank(n + 1)], [U.rank(n + 1), V.rank(n)],
        )
    return ChainMap(C, shift(U, 1), components, -f.degree)


def triangle_on_map(f: ChainMap) -> Triangle:
    """Стандартный треугольник U →f V →ι cone(f) →π U[1]."""
    return Triangle(f, cone_inclusion(f), cone_projection(f), provenance="strict-cone")


def rotate(t: Triangle) -> Triangle:
    """(u, w, v) ↦ (w, v, −u[1])."""
    return Triangle(t.w, t.v, -shift_map(t.u, 1), provenance=t.provenance)


def rotate_back(t: Triangle) -> Triangle:
    """(u, w, v) ↦ (−v[−1], u, w)."""
    return Triangle(-shift_map(t.v, -1), t.u, t.w, provenance=t.provenance)


def cone_triangle(f: ChainMap) -> Triangle:
    """
    Точная последовательность 0 → V → cone(f) → U[1] → 0 как треугольник
    V →ι cone(f) →π U[1] →(−f[1]) V[1].
    """
    return rotate(triangle_on_map(f))


@dataclass
class ConeScaleResult:
    psi: ChainMap
    left_square: bool
    right_square: bool

    @property
    def ok(self) -> bool:
        return self.left_square and self.right_square and self.psi.is_chain_map()


def cone_scale_map(f: ChainMap, r: RingElem) -> ConeScaleResult:
    """
    ψ: cone(f) → cone(r·f), ψ(u, v) = (u, r·v), с проверкой обоих квадратов диаграммы.
    """
    U, V = f.source, f.target
    algebra = f.algebra
    rf = f.scale(r)
    source, target = cone(f), cone(rf)
    components = {}
    for n in source.terms:
        components[n] = MatrixOverA.block(
            algebra, [[MatrixOverA.identity(algebra, U.rank(n + 1)), None],
                      [None, MatrixOverA.identity(algebra, V.rank(n), r)]],
            [U.rank(n + 1), V.rank(n)], [U.rank(n + 1), V.rank(n)],
        )
    extra = 0 if r.is_zero() or algebra.is_artinian else r.degree
    psi = ChainMap(source, target, components, extra)
    r_on_v = ChainMap.identity(V).scale(r)
    left = psi.compose(cone_inclusion(f)) == cone_inclusion(rf).compose(r_on_v)
    right = cone_projection(rf).compose(psi) == cone_projection(f)
    if not (left and right):
        logger.error("Диаграмма масштабирования конуса не коммутирует")
    return ConeScaleResult(psi, left, right)


# --- комплекс гомоморфизмов ---

class HomComplex(Complex):
    """
    Hom_A(U, V): член n = ⊕ᵢ Hom(Uⁱ, V^{i+n}), ∂(f) = ∂_V∘f − (−1)ⁿ f∘∂_U.

    Образующие члена n занумерованы блоками (i, r, c): элемент (r, c) компоненты fᵢ.
    """

    def __init__(self, U: Complex, V: Complex):
        _require_same_algebra(U, V)
        if U.kind != FREE:
            raise UnsupportedBackendError("Комплекс Hom строится только для свободных комплексов")
        algebra = U.algebra
        self.source = U
        self.target = V
        self.blocks: dict[int, list[tuple[int, int, int]]] = {}
        self.block_index: dict[int, dict[tuple[int, int, int], int]] = {}
        shifts = {j - i for i in U.terms for j in V.terms}
        terms = {}
        for n in sorted(shifts):
            blocks = []
            degrees = []
            for i in sorted(U.terms):
                if V.rank(i + n) == 0:
                    continue
                for r in range(V.rank(i + n)):
                    for c in range(U.rank(i)):
                        blocks.append((i, r, c))
                        degrees.append(V.term(i + n).degree(r) - U.term(i).degree(c))
            self.blocks[n] = blocks
            self.block_index[n] = {b: k for k, b in enumerate(blocks)}
            terms[n] = FreeModule(len(blocks), tuple(degrees) if algebra.is_graded else None)
        diffs = {}
        for n in sorted(shifts):
            if n + 1 not in self.blocks:
                continue
            sign = -1 if n % 2 else 1
            entries: dict = {}
            targets = self.block_index[n + 1]
            for col, (i, r, c) in enumerate(self.blocks[n]):
                dv = V.d(i + n)
                for (rr, cc), a in dv.entries.items():
                    if cc == r:
                        row = targets.get((i, rr, c))
                        if row is not None:
                            key = (row, col)
                            entries[key] = entries[key] + a if key in entries else a
                du = U.d(i - 1)
                for (rr, cc), a in du.entries.items():
                    if rr == c:
                        row = targets.get((i - 1, r, cc))
                        if row is not None:
                            value = a if sign < 0 else -a
                            key = (row, col)
                            entries[key] = entries[key] + value if key in entries else value
            diffs[n] = MatrixOverA(algebra, len(targets), len(self.blocks[n]), entries)
        super().__init__(algebra, terms, diffs, kind=FREE, check=False)

    def components_to_vector(self, components: dict, n: int, d: Optional[int] = None) -> list:
        """k-вектор элемента степени n, заданного компонентами fᵢ: Uⁱ → V^{i+n}."""
        algebra = self.algebra
        positions = _positions(algebra, self.term(n), d)
        vector = [algebra.K.zero] * len(positions)
        index = self.block_index.get(n, {})
        for i, matrix in components.items():
            for (r, c), a in matrix.entries.items():
                g = index.get((i, r, c))
                if g is None:
                    raise MismatchError(f"Компонента {i} не лежит в члене {n} комплекса Hom")
                for m, coefficient in a.terms.items():
                    pos = positions.get((g, m))
                    if pos is None:
                        raise InputError(f"Элемент ({r}, {c}) компоненты {i} имеет неверную степень")
                    vector[pos] += coefficient
        return vector

    def vector_to_components(self, vector: Sequence, n: int, d: Optional[int] = None) -> dict:
        algebra = self.algebra
        entries: dict[int, dict] = {}
        for (g, m), c in zip(kcoords(algebra, self.term(n), d), vector):
            if algebra.K.is_zero(c):
                continue
            i, r, cc = self.blocks[n][g]
            block = entries.setdefault(i, {})
            value = algebra.monomial(m, c)
            block[(r, cc)] = block[(r, cc)] + value if (r, cc) in block else value
        return {
            i: MatrixOverA(algebra, self.target.rank(i + n), self.source.rank(i), block)
            for i, block in entries.items()
        }


def hom_complex(U: Complex, V: Complex) -> HomComplex:
    return HomComplex(U, V)


# --- двойственности ---

def _transpose_dual(C: Complex, kind: str, negate_degrees: bool) -> Complex:
    terms = {}
    for i, module in C.terms.items():
        degrees = module.degrees
        if degrees is not None and negate_degrees:
            degrees = tuple(-g for g in degrees)
        terms[-i] = FreeModule(module.rank, degrees, kind)
    diffs = {}
    for i, matrix in C.differentials.items():
        n = -i - 1
        sign = -1 if (n + 1) % 2 else 1
        diffs[n] = matrix.transpose().scale(sign)
    return Complex(C.algebra, terms, diffs, kind=kind, check=False)


def dual(U: Complex) -> Complex:
    """
    U* = Hom_A(U, A): (U*)ⁿ = A^{rank U^{−n}}, dⁿ = (−1)^{n+1}(∂^{−n−1})ᵀ.
    """
    if U.kind != FREE:
        raise UnsupportedBackendError("Двойственность D определена для свободных комплексов")
    return _transpose_dual(U, FREE, negate_degrees=True)


def matlis_dual(C: Complex, free_form: bool = False) -> Complex:
    """
    Почленное k-двойственное с контрагредиентным действием: A ↔ E.

    Args:
        C: Комплекс над артиновой алгеброй
        free_form: Для горенштейновой A вернуть изоморфный свободный комплекс (E ≅ A)

    Raises:
        UnsupportedBackendError: Градуированный бэкенд или free_form для негоренштейновой A
    """
    C.algebra.require_artinian("matlis_dual")
    kind = INJECTIVE if C.kind == FREE else FREE
    result = _transpose_dual(C, kind, negate_degrees=False)
    if free_form and kind == INJECTIVE:
        return gorenstein_free_form(result)
    return result


def gorenstein_free_form(C: Complex) -> Complex:
    """
    Над горенштейновой A: E ≅ A через a ↦ a·e, поэтому E-комплекс изоморфен
    свободному комплексу с теми же матрицами.
    """
    if C.kind != INJECTIVE:
        return C
    module = MatlisModule(C.algebra)
    if module.free_generator() is None:
        raise UnsupportedBackendError(f"Алгебра {C.algebra} не горенштейнова: E ≇ A")
    return Complex(C.algebra, {i: m.with_kind(FREE) for i, m in C.terms.items()},
                   dict(C.differentials), kind=FREE, check=False)


def double_dual_iso(C: Complex, duality: Callable[[Complex], Complex] = dual) -> ChainMap:
    """
    Канонический изоморфизм C → D(D(C)) с компонентами (−1)ⁿ·id.
    """
    twice = duality(duality(C))
    components = {
        n: MatrixOverA.identity(C.algebra, module.rank, C.algebra.scalar(-1 if n % 2 else 1))
        for n, module in C.terms.items()
    }
    return ChainMap(C, twice, components)


def dual_map(f: ChainMap) -> ChainMap:
    """D(f): D(V) → D(U), D(f)ⁿ = (f^{−n})ᵀ."""
    return ChainMap(dual(f.target), dual(f.source),
                    {-i: m.transpose() for i, m in f.components.items()}, -f.degree)


# --- когомологии ---

@dataclass
class CohomologySpace:
    """Циклы, границы и представители когомологий в одной степени (k-векторы)."""
    dim_ambient: int
    cycles: list
    boundaries: list
    representatives: list

    @property
    def dimension(self) -> int:
        return len(self.representatives)


def cohomology_space(C: Complex, i: int, d: Optional[int] = None) -> CohomologySpace:
    algebra = C.algebra
    K = algebra.K
    ambient = C.kdim(i, d)
    cycles = linalg.kernel(C.expand_d(i, d)) if ambient else []
    boundaries = linalg.image_basis(C.expand_d(i - 1, d)) if ambient and C.kdim(i - 1, d) else []
    picked = linalg.extend_basis(boundaries, cycles, ambient, K)
    return CohomologySpace(ambient, cycles, boundaries, [cycles[k] for k in picked])


@dataclass
class CohomologyGroup:
    """
    Hⁱ(C): размерность над k; на артиновом бэкенде это k-представление A-модуля,
    на градуированном размерности по внутренним степеням до окна.
    """
    index: int
    dimension: int
    generators: Optional[int] = None
    action: dict = field(default_factory=dict)
    by_degree: Optional[dict[int, int]] = None
    certified_up_to: Optional[int] = None

    def to_json(self, formatter=None) -> dict:
        data = {"index": self.index, "dimension": self.dimension}
        if self.generators is not None:
            data["generators"] = self.generators
        if self.by_degree is not None:
            data["by_degree"] = {str(d): n for d, n in sorted(self.by_degree.items())}
            data["certified_up_to"] = self.certified_up_to
        if formatter is not None and self.action:
            data["action"] = {name: linalg.to_json(m, formatter) for name, m in self.action.items()}
        return data


def cohomology(C: Complex, i: int) -> CohomologyGroup:
    """
    Hⁱ(C) точной линейной алгеброй над k.
    """
    algebra = C.algebra
    K = algebra.K
    if algebra.is_graded:
        low, high = C.degree_range()
        by_degree = {}
        for d in range(low, high + 1):
            space = cohomology_space(C, i, d)
            if space.dimension:
                by_degree[d] = space.dimension
        return CohomologyGroup(i, sum(by_degree.values()), by_degree=by_degree, certified_up_to=high)
    space = cohomology_space(C, i)
    if not space.dimension:
        return CohomologyGroup(i, 0, generators=0)
    basis = space.boundaries + space.representatives
    offset = len(space.boundaries)
    action = {}
    images = []
    for k, name in enumerate(algebra.variables):
        x = algebra.variable(k)
        if x.is_zero():
            continue
        matrix = scalar_action(algebra, C.term(i), x)
        columns = []
        for h in space.representatives:
            image = linalg.matvec(matrix, h)
            coords = linalg.coordinates(basis, image, space.dim_ambient, K)
            columns.append(coords[offset:])
        action[name] = linalg.from_columns(columns, space.dimension, K)
        images.extend(columns)
    radical = linalg.span_dimension(images, space.dimension, K) if images else 0
    return CohomologyGroup(i, space.dimension, generators=space.dimension - radical, action=action)


def cohomology_dims(C: Complex) -> dict[int, int]:
    indices = set(C.terms)
    return {i: cohomology(C, i).dimension for i in sorted(indices)}


def euler_characteristic_check(C: Complex) -> bool:
    """Σ(−1)ⁱ dim Hⁱ = Σ(−1)ⁱ rank(Cⁱ)·dim_k A (артинов бэкенд)."""
    C.algebra.require_artinian("euler_characteristic_check")
    homology = sum((-1) ** (i % 2) * n for i, n in cohomology_dims(C).items())
    chains = sum((-1) ** (i % 2) * C.kdim(i) for i in C.terms)
    return homology == chains


def _induced_exact(g: ChainMap, h: ChainMap, i: int) -> bool:
    """Точность Hⁱ(X) →g Hⁱ(Y) →h Hⁱ(Z) в средней позиции."""
    algebra = g.algebra
    K = algebra.K
    X, Y, Z = g.source, g.target, h.target
    space_y = cohomology_space(Y, i)
    space_x = cohomology_space(X, i)
    space_z = cohomology_space(Z, i)
    dim_y = space_y.dim_ambient
    if dim_y == 0:
        return True
    G = g.expand(i)
    H = h.expand(i)
    image = [linalg.matvec(G, z) for z in space_x.cycles] + space_y.boundaries
    dim_image = linalg.span_dimension(image, dim_y, K)
    preimage = list(space_y.boundaries)
    if space_y.cycles:
        mapped = [linalg.matvec(H, z) for z in space_y.cycles]
        system = linalg.from_columns(mapped + space_z.boundaries, space_z.dim_ambient, K)
        for combo in linalg.kernel(system):
            z = [K.zero] * dim_y
            for coefficient, cycle in zip(combo, space_y.cycles):
                if not K.is_zero(coefficient):
                    z = [a + coefficient * b for a, b in zip(z, cycle)]
            preimage.append(z)
    dim_preimage = linalg.span_dimension(preimage, dim_y, K)
    together = linalg.span_dimension(image + preimage, dim_y, K)
    return dim_image == dim_preimage == together


def long_exact_sequence_check(t: Triangle) -> dict:
    """
    Проверяет точность длинной последовательности когомологий треугольника
    во второй, третьей и первой[1] вершинах для всех индексов носителя.
    """
    t.first.algebra.require_artinian("long_exact_sequence_check")
    positions = {}
    indices = set()
    for C in (t.first, t.second, t.third):
        indices |= set(C.terms) | {i - 1 for i in C.terms}
    next_u = -shift_map(t.u, 1)
    for i in sorted(indices):
        positions[i] = {
            "second": _induced_exact(t.u, t.w, i),
            "third": _induced_exact(t.w, t.v, i),
            "first_shifted": _induced_exact(t.v, next_u, i),
        }
    ok = all(all(entry.values()) for entry in positions.values())
    if not ok:
        logger.error("Длинная точная последовательность когомологий нарушена")
    return {"ok": ok, "positions": positions}
