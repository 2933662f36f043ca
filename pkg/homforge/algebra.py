"""
Точная арифметика: поле вычетов, локальные мономиальные алгебры, модуль Матлиса.

Алгебра A = k[x₁..xₙ]/I с мономиальным идеалом I. Бэкенд "artinian"
требует чистую степень каждой переменной среди соотношений (dim_k A < ∞);
бэкенд "graded" хранит окно степеней D и считает однородные компоненты до D.
"""

import itertools
import logging
import math
import random
from typing import Iterator, Optional, Sequence, Union

from sympy import Poly, Symbol
from sympy.ntheory import isprime
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import GF, QQ
from sympy.polys.polyerrors import CoercionFailed, GeneratorsNeeded, PolynomialError

from homforge import linalg
from homforge.errors import (
    InputError,
    InternalInconsistencyError,
    UnknownVariableError,
    UnsupportedBackendError,
)
from homforge.utils import validate_name, validate_polynomial_text

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


class Field:
    """
    Поле вычетов k: рациональные числа или GF(p).
    """

    def __init__(self, characteristic: int = 0):
        if characteristic < 0:
            raise InputError(f"Отрицательная характеристика: {characteristic}")
        if characteristic and not isprime(characteristic):
            raise InputError(f"Порядок поля {characteristic} не является простым числом")
        self.characteristic = characteristic
        self.domain = GF(characteristic) if characteristic else QQ

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __call__(self, value: int):
        return self.domain(value)

    def fraction(self, numerator: int, denominator: int):
        if denominator == 0 or (self.characteristic and denominator % self.characteristic == 0):
            raise InputError(f"Знаменатель {denominator} необратим в поле {self}")
        if self.characteristic:
            return self.domain(numerator) / self.domain(denominator)
        return self.domain(numerator, denominator)

    def is_zero(self, value) -> bool:
        return self.domain.is_zero(value)

    def format(self, value) -> str:
        if self.characteristic:
            return str(int(value) % self.characteristic)
        return str(self.domain.to_sympy(value))

    def random_element(self, rng: random.Random, spread: int = 3):
        if self.characteristic:
            return self.domain(rng.randrange(self.characteristic))
        return self.domain(rng.randint(-spread, spread))

    def random_nonzero(self, rng: random.Random, spread: int = 3):
        while True:
            value = self.random_element(rng, spread)
            if not self.is_zero(value):
                return value

    def elements(self) -> list:
        """Все элементы конечного поля."""
        if not self.characteristic:
            raise UnsupportedBackendError("Перебор элементов возможен только для GF(p)")
        return [self.domain(i) for i in range(self.characteristic)]

    def to_json(self):
        return {"Fp": self.characteristic} if self.characteristic else "Q"

    @classmethod
    def from_json(cls, data) -> "Field":
        if data == "Q":
            return cls(0)
        if isinstance(data, dict) and set(data) == {"Fp"} and isinstance(data["Fp"], int):
            return cls(data["Fp"])
        raise InputError(f"Неизвестное поле: {data!r}", location="field")

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __repr__(self) -> str:
        return f"GF({self.characteristic})" if self.characteristic else "QQ"


def divides(m: Monomial, n: Monomial) -> bool:
    return all(a <= b for a, b in zip(m, n))


def _print_key(m: Monomial):
    return (sum(m), m)


class LocalAlgebra:
    """
    Локальная алгебра k[x₁..xₙ]/I с мономиальным идеалом I.

    Args:
        field: Поле вычетов
        variables: Имена переменных в объявленном порядке
        relations: Образующие идеала I как векторы показателей
        graded_window: None для артинова бэкенда, иначе окно степеней D
    """

    def __init__(
        self,
        field: Field,
        variables: Sequence[str],
        relations: Sequence[Monomial],
        graded_window: Optional[int] = None,
    ):
        variables = tuple(variables)
        for name in variables:
            if not validate_name(name):
                raise InputError(f"Недопустимое имя переменной: {name!r}", location="vars")
        if len(set(variables)) != len(variables):
            raise InputError("Имена переменных повторяются", location="vars")
        n = len(variables)
        cleaned = []
        for relation in relations:
            relation = tuple(int(e) for e in relation)
            if len(relation) != n or any(e < 0 for e in relation):
                raise InputError(f"Некорректное соотношение: {relation}", location="relations")
            if sum(relation) == 0:
                raise InputError("Соотношение 1 = 0 задает нулевое кольцо", location="relations")
            cleaned.append(relation)
        # Оставляем только минимальные образующие идеала
        minimal = []
        for relation in sorted(set(cleaned), key=_print_key):
            if not any(divides(other, relation) for other in minimal):
                minimal.append(relation)
        if graded_window is not None and graded_window < 0:
            raise InputError(f"Отрицательное окно степеней: {graded_window}", location="backend")

        self.field = field
        self.variables = variables
        self.relations = tuple(minimal)
        self.window = graded_window
        self._degree_cache: dict[int, tuple[Monomial, ...]] = {}

        if self.is_artinian:
            bounds = []
            for i in range(n):
                powers = [r[i] for r in self.relations
                          if r[i] > 0 and all(e == 0 for j, e in enumerate(r) if j != i)]
                if not powers:
                    raise InputError(
                        f"Артинов бэкенд требует чистую степень переменной {variables[i]}",
                        location="relations",
                    )
                bounds.append(min(powers))
            candidates = itertools.product(*(range(b) for b in bounds))
            basis = [m for m in candidates if self.is_standard(m)]
            basis.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
            self._basis = tuple(basis)
            self._index = {m: i for i, m in enumerate(self._basis)}
            logger.debug(f"Артинова алгебра {self}: dim_k = {len(self._basis)}")

    # --- структура ---

    @property
    def is_artinian(self) -> bool:
        return self.window is None

    @property
    def is_graded(self) -> bool:
        return self.window is not None

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def K(self):
        return self.field.domain

    def require_artinian(self, operation: str) -> None:
        if not self.is_artinian:
            raise UnsupportedBackendError(f"Операция '{operation}' требует артинов бэкенд")

    @property
    def basis(self) -> tuple[Monomial, ...]:
        self.require_artinian("basis")
        return self._basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, m: Monomial) -> int:
        return self._index[m]

    def is_standard(self, m: Monomial) -> bool:
        return not any(divides(r, m) for r in self.relations)

    def monomials_of_degree(self, d: int) -> tuple[Monomial, ...]:
        """Стандартные мономы степени d в порядке базиса."""
        if d < 0:
            return ()
        if d not in self._degree_cache:
            if self.is_artinian:
                result = tuple(m for m in self._basis if sum(m) == d)
            else:
                result = tuple(
                    sorted(
                        (m for m in _compositions(d, self.nvars) if self.is_standard(m)),
                        key=lambda m: tuple(-e for e in m),
                    )
                )
            self._degree_cache[d] = result
        return self._degree_cache[d]

    def degree_basis(self, d: Optional[int]) -> tuple[Monomial, ...]:
        """Артинов случай (d = None): весь базис; градуированный: мономы степени d."""
        if d is None:
            return self.basis
        return self.monomials_of_degree(d)

    def multiply_monomials(self, m: Monomial, n: Monomial) -> Optional[Monomial]:
        product = tuple(a + b for a, b in zip(m, n))
        return product if self.is_standard(product) else None

    # --- элементы ---

    def element(self, terms: dict) -> "RingElem":
        K = self.K
        clean = {}
        for m, c in terms.items():
            if not K.is_zero(c) and self.is_standard(m):
                clean[m] = c
        return RingElem(self, clean)

    def zero(self) -> "RingElem":
        return RingElem(self, {})

    def one(self) -> "RingElem":
        return self.scalar(self.K.one)

    def scalar(self, c) -> "RingElem":
        if isinstance(c, int):
            c = self.K(c)
        return self.element({(0,) * self.nvars: c})

    def monomial(self, m: Monomial, coefficient=None) -> "RingElem":
        c = self.K.one if coefficient is None else coefficient
        return self.element({tuple(m): c})

    def variable(self, name: Union[str, int]) -> "RingElem":
        i = self.variables.index(name) if isinstance(name, str) else name
        m = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.monomial(m)

    def maximal_ideal_generators(self) -> list["RingElem"]:
        """Минимальная система образующих 𝔪: переменные, не равные нулю в A."""
        return [g for g in (self.variable(i) for i in range(self.nvars)) if not g.is_zero()]

    def vector(self, a: "RingElem") -> list:
        """Координаты элемента в мономиальном базисе (артинов бэкенд)."""
        v = [self.K.zero] * self.dim
        for m, c in a.terms.items():
            v[self._index[m]] = c
        return v

    def from_vector(self, v: Sequence) -> "RingElem":
        return self.element({self._basis[i]: c for i, c in enumerate(v)})

    def multiplication_matrix(self, a: "RingElem"):
        """Матрица умножения на a в мономиальном базисе (столбцы = образы базиса)."""
        dok = {}
        for j, b in enumerate(self.basis):
            for m, c in (a * self.monomial(b)).terms.items():
                dok[(self._index[m], j)] = c
        return linalg.from_dok(dok, self.dim, self.dim, self.K)

    def random_element(self, rng: random.Random, degree: Optional[int] = None) -> "RingElem":
        monomials = self.degree_basis(degree)
        return self.element({m: self.field.random_element(rng) for m in monomials})

    # --- разбор ---

    def parse(self, text: Union[str, int]) -> "RingElem":
        """
        Разбирает строку многочлена и приводит к нормальной форме.

        Args:
            text: Строка вида "3*x^2*y - 1/2" или целое число

        Returns:
            RingElem: Элемент в нормальной форме

        Raises:
            InputError: Синтаксическая ошибка или не многочлен
            UnknownVariableError: Неизвестное имя переменной
        """
        if isinstance(text, int):
            return self.scalar(text)
        if not isinstance(text, str) or not validate_polynomial_text(text):
            raise InputError(f"Некорректная запись многочлена: {text!r}")
        symbols = {name: Symbol(name) for name in self.variables}
        try:
            expr = parse_expr(text, local_dict=symbols, transformations=_TRANSFORMATIONS)
        except (SyntaxError, TypeError, ValueError, AttributeError) as e:
            raise InputError(f"Не удалось разобрать многочлен {text!r}: {e}")
        unknown = {str(s) for s in expr.free_symbols} - set(self.variables)
        if unknown:
            raise UnknownVariableError(
                f"Неизвестные переменные в {text!r}: {', '.join(sorted(unknown))}"
            )
        if not self.variables:
            if not expr.is_Rational:
                raise InputError(f"Ожидалось рациональное число: {text!r}")
            return self.scalar(self.field.fraction(int(expr.p), int(expr.q)))
        try:
            poly = Poly(expr, *(symbols[name] for name in self.variables), domain=QQ)
        except (PolynomialError, GeneratorsNeeded, CoercionFailed) as e:
            raise InputError(f"Выражение не является многочленом: {text!r} ({e})")
        terms: dict = {}
        for m, coefficient in poly.terms():
            c = self.field.fraction(int(coefficient.p), int(coefficient.q))
            terms[tuple(m)] = terms.get(tuple(m), self.K.zero) + c
        return self.element(terms)

    def normal_form(self, text: Union[str, int]) -> "RingElem":
        return self.parse(text)

    # --- цоколь и горенштейновость ---

    def socle(self) -> list["RingElem"]:
        """
        k-базис цоколя (0 : 𝔪) = {a : 𝔪a = 0}.

        Raises:
            UnsupportedBackendError: Для градуированного бэкенда
        """
        self.require_artinian("socle")
        generators = self.maximal_ideal_generators()
        if not generators:
            return [self.one()]
        stacked = linalg.vstack(
            [self.multiplication_matrix(g) for g in generators], self.dim, self.K
        )
        return [self.from_vector(v) for v in linalg.kernel(stacked)]

    def is_gorenstein_artinian(self) -> bool:
        return len(self.socle()) == 1

    # --- сериализация ---

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "vars": list(self.variables),
            "relations": [self.format_monomial(r) for r in self.relations],
            "backend": "artinian" if self.is_artinian else {"graded": self.window},
        }

    @classmethod
    def from_json(cls, data: dict) -> "LocalAlgebra":
        """
        Строит алгебру из JSON-описания кольца.

        Raises:
            InputError: При отсутствии полей или немономиальных соотношениях
        """
        if not isinstance(data, dict):
            raise InputError("Описание кольца должно быть объектом JSON", location="ring")
        for key in ("field", "vars"):
            if key not in data:
                raise InputError(f"Отсутствует поле '{key}'", location="ring")
        field = Field.from_json(data["field"])
        variables = data["vars"]
        if not isinstance(variables, list):
            raise InputError("Поле 'vars' должно быть списком", location="ring.vars")
        backend = data.get("backend", "artinian")
        if backend == "artinian":
            window = None
        elif isinstance(backend, dict) and isinstance(backend.get("graded"), int):
            window = backend["graded"]
        else:
            raise InputError(f"Неизвестный бэкенд: {backend!r}", location="ring.backend")
        # Временная алгебра без соотношений для разбора мономов
        probe = cls(field, variables, [], graded_window=0)
        relations = []
        for k, text in enumerate(data.get("relations", [])):
            relation = probe.parse(text)
            if len(relation.terms) != 1:
                raise InputError(
                    f"Соотношение {text!r} не является мономом", location=f"ring.relations[{k}]"
                )
            relations.append(next(iter(relation.terms)))
        return cls(field, variables, relations, graded_window=window)

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LocalAlgebra)
            and other.field == self.field
            and other.variables == self.variables
            and other.relations == self.relations
            and other.window == self.window
        )

    def __hash__(self) -> int:
        return hash((self.field, self.variables, self.relations, self.window))

    def __repr__(self) -> str:
        ring = f"{self.field!r}[{','.join(self.variables)}]"
        if self.relations:
            ring += "/(" + ",".join(self.format_monomial(r) for r in self.relations) + ")"
        if self.is_graded:
            ring += f" (graded, D={self.window})"
        return ring


def _compositions(total: int, parts: int) -> Iterator[Monomial]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class RingElem:
    """
    Элемент A: разреженное отображение моном → коэффициент в нормальной форме.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LocalAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            return other
        if isinstance(other, int):
            return self.algebra.scalar(other)
        return self.algebra.scalar(other)

    def __add__(self, other) -> "RingElem":
        other = self._coerce(other)
        K = self.algebra.K
        terms = dict(self.terms)
        for m, c in other.terms.items():
            value = terms.get(m, K.zero) + c
            if K.is_zero(value):
                terms.pop(m, None)
            else:
                terms[m] = value
        return RingElem(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> "RingElem":
        return RingElem(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "RingElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RingElem":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RingElem":
        other = self._coerce(other)
        algebra = self.algebra
        K = algebra.K
        terms: dict = {}
        for m, c in self.terms.items():
            for n, d in other.terms.items():
                product = algebra.multiply_monomials(m, n)
                if product is None:
                    continue
                value = terms.get(product, K.zero) + c * d
                if K.is_zero(value):
                    terms.pop(product, None)
                else:
                    terms[product] = value
        return RingElem(algebra, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RingElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.algebra.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, c) -> "RingElem":
        K = self.algebra.K
        if K.is_zero(c):
            return self.algebra.zero()
        return RingElem(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.algebra.scalar(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset((m, int(c) if self.algebra.field.characteristic else c)
                              for m, c in self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial):
        return self.terms.get(m, self.algebra.K.zero)

    def constant_term(self):
        return self.coefficient((0,) * self.algebra.nvars)

    def is_unit(self) -> bool:
        return not self.algebra.K.is_zero(self.constant_term())

    def in_maximal_ideal(self) -> bool:
        return not self.is_unit()

    def inverse(self) -> "RingElem":
        """
        Обратный элемент через геометрическую прогрессию.

        Для градуированного бэкенда ряд обрезается на степени окна D
        (точно для констант).

        Raises:
            ZeroDivisionError: Если элемент необратим
        """
        if not self.is_unit():
            raise ZeroDivisionError(f"Элемент {self} не является обратимым")
        algebra = self.algebra
        c_inv = algebra.K.one / self.constant_term()
        nilpotent = algebra.one() - self.scale(c_inv)
        result = algebra.one()
        power = algebra.one()
        step = 0
        while True:
            power = power * nilpotent
            step += 1
            if algebra.is_graded:
                power = power.truncate(algebra.window)
            if power.is_zero():
                break
            result = result + power
        return result.scale(c_inv)

    def truncate(self, degree: int) -> "RingElem":
        return RingElem(self.algebra, {m: c for m, c in self.terms.items() if sum(m) <= degree})

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Степень однородного элемента (None для нуля)."""
        degrees = {sum(m) for m in self.terms}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise InputError(f"Элемент {self} неоднороден")
        return degrees.pop()

    def format(self) -> str:
        if not self.terms:
            return "0"
        algebra = self.algebra
        field = algebra.field
        pieces = []
        for m in sorted(self.terms, key=_print_key, reverse=True):
            c = field.format(self.terms[m])
            if sum(m) == 0:
                piece = c
            else:
                mono = algebra.format_monomial(m)
                if c == "1":
                    piece = mono
                elif c == "-1":
                    piece = f"-{mono}"
                else:
                    piece = f"{c}*{mono}"
            pieces.append(piece)
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RingElem({self.format()!r})"


class MatlisModule:
    """
    Инъективная оболочка E поля вычетов: k-двойственное к A с контрагредиентным действием.

    Базис: двойственный базис b* к мономиальному базису A.
    Действие: x·b* = (b/x)*, если x делит b, иначе 0.
    """

    def __init__(self, algebra: LocalAlgebra):
        algebra.require_artinian("matlis_module")
        self.algebra = algebra
        self.dim = algebra.dim
        self.action = {
            i: self.monomial_action(next(iter(algebra.variable(i).terms)))
            for i in range(algebra.nvars)
            if not algebra.variable(i).is_zero()
        }

    def monomial_action(self, m: Monomial):
        """Матрица действия монома m на E в двойственном базисе."""
        algebra = self.algebra
        dok = {}
        for j, b in enumerate(algebra.basis):
            if divides(m, b):
                quotient = tuple(x - y for x, y in zip(b, m))
                dok[(algebra.index(quotient), j)] = algebra.K.one
        return linalg.from_dok(dok, self.dim, self.dim, algebra.K)

    def action_matrix(self, a: RingElem):
        algebra = self.algebra
        dok: dict = {}
        K = algebra.K
        for m, c in a.terms.items():
            for (i, j), value in self.monomial_action(m).to_dok().items():
                dok[(i, j)] = dok.get((i, j), K.zero) + c * value
        return linalg.from_dok(dok, self.dim, self.dim, K)

    def act(self, a: RingElem, vector: Sequence) -> list:
        return linalg.matvec(self.action_matrix(a), list(vector))

    def maximal_submodule(self) -> list[list]:
        """Базис 𝔪E."""
        images = []
        for matrix in self.action.values():
            images.extend(linalg.columns(matrix))
        if not images:
            return []
        return linalg.image_basis(linalg.from_columns(images, self.dim, self.algebra.K))

    def commutant_dimension(self) -> int:
        """dim_k Hom_A(E, E): размерность коммутанта матриц действия."""
        K = self.algebra.K
        n = self.dim
        if not self.action:
            return n * n
        rows = []
        # Неизвестная T как вектор длины n², индекс (r, c) → r*n + c
        for matrix in self.action.values():
            dok = matrix.to_dok()
            for r in range(n):
                for c in range(n):
                    row = {}
                    # (T M)[r][c] = Σ_k T[r][k] M[k][c]
                    for (k, cc), value in dok.items():
                        if cc == c:
                            row[r * n + k] = row.get(r * n + k, K.zero) + value
                    # (M T)[r][c] = Σ_k M[r][k] T[k][c]
                    for (rr, k), value in dok.items():
                        if rr == r:
                            row[k * n + c] = row.get(k * n + c, K.zero) - value
                    rows.append(row)
        dok = {(i, j): v for i, row in enumerate(rows) for j, v in row.items()}
        system = linalg.from_dok(dok, len(rows), n * n, K)
        return n * n - linalg.rank(system)

    def verify_double_dual(self) -> bool:
        """
        Проверяет, что контрагредиентное действие, примененное дважды,
        воспроизводит таблицу умножения A, и что Hom_A(E, E) ≅ A по размерности.
        """
        algebra = self.algebra
        for i, matrix in self.action.items():
            multiplication = algebra.multiplication_matrix(algebra.variable(i))
            if matrix != multiplication.transpose():
                logger.error(f"Действие переменной {algebra.variables[i]} на E не контрагредиентно")
                return False
        return self.commutant_dimension() == self.dim

    def free_generator(self) -> Optional[list]:
        """
        Для горенштейновой A возвращает e ∈ E \\ 𝔪E с биекцией a ↦ a·e, иначе None.
        """
        algebra = self.algebra
        K = algebra.K
        standard = [[K.one if i == j else K.zero for i in range(self.dim)] for j in range(self.dim)]
        picked = linalg.extend_basis(self.maximal_submodule(), standard, self.dim, K)
        if len(picked) != 1:
            return None
        e = standard[picked[0]]
        images = [self.act(algebra.monomial(b), e) for b in algebra.basis]
        if linalg.span_dimension(images, self.dim, K) != self.dim:
            return None
        return e


def matlis_module(algebra: LocalAlgebra) -> MatlisModule:
    """
    Строит модуль Матлиса E и проверяет Hom_A(E, E) ≅ A.

    Raises:
        UnsupportedBackendError: Для градуированного бэкенда
    """
    module = MatlisModule(algebra)
    if not module.verify_double_dual():
        raise InternalInconsistencyError(
            "Двойственность Матлиса не воспроизводит таблицу умножения",
            state={"algebra": repr(algebra)},
        )
    logger.info(f"Модуль Матлиса над {algebra}: dim_k E = {module.dim}")
    return module


def is_unit(a: RingElem) -> bool:
    return a.is_unit()


def socle(algebra: LocalAlgebra) -> list[RingElem]:
    return algebra.socle()


def is_gorenstein_artinian(algebra: LocalAlgebra) -> bool:
    return algebra.is_gorenstein_artinian()


def normal_form(text: Union[str, int], algebra: LocalAlgebra) -> RingElem:
    return algebra.normal_form(text)


def binomial(algebra: LocalAlgebra, n: int, k: int) -> RingElem:
    return algebra.scalar(math.comb(n, k))
