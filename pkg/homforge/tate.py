"""
DG-алгебры Тейта: присоединение переменных (убийство циклов) и хорошие фильтрации.

Базис DG-алгебры составляют слова: кортеж показателей по переменным в порядке присоединения.
Внешняя переменная (нечетная степень ρ) входит с показателем 0 или 1,
разделенная степень (четная ρ) входит индексом j ≥ 0, слово S^(j) имеет степень j·ρ.
Все вычисления ведутся в окне степеней [−window, 0].
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Optional, Sequence

from homforge import config, linalg
from homforge.algebra import LocalAlgebra, RingElem
from homforge.complexes import (
    Complex,
    MatrixOverA,
    cohomology_dims,
    cohomology_space,
    column_to_vector,
    scalar_action,
    vector_to_column,
)
from homforge.errors import InputError, NotACycleError

logger = logging.getLogger(__name__)

EXTERIOR = "exterior"
DIVIDED = "divided"

Word = tuple
Element = dict


@dataclass(frozen=True)
class DGVariable:
    """
    Присоединенная переменная: d(T) = t (внешняя) или d(S^(j)) = t·S^(j−1) (разделенные степени).
    """
    name: str
    kind: str
    degree: int
    cycle: tuple  # пары (слово предыдущей стадии, RingElem)

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 != 0

    def to_json(self, dg: "DGAlgebra") -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "degree": self.degree,
            "cycle": dg.format_element(dict(self.cycle)),
        }


def divided_power_coefficient(i: int, j: int) -> int:
    """S^(i)·S^(j) = C(i+j, i)·S^(i+j)."""
    return comb(i + j, i)


class DGAlgebra:
    """
    Неположительная DG-алгебра A⟨T₁, …, Tₘ⟩, материализованная в степенях ≥ −window.

    Args:
        algebra: Артинова базовая алгебра
        variables: Переменные в порядке присоединения
        window: Окно степеней
    """

    def __init__(self, algebra: LocalAlgebra, variables: Sequence[DGVariable] = (),
                 window: Optional[int] = None):
        algebra.require_artinian("DG-алгебры Тейта")
        self.algebra = algebra
        self.variables = tuple(variables)
        self.window = config.DEFAULT_WINDOW if window is None else window
        if self.window < 0:
            raise InputError(f"Отрицательное окно: {self.window}")
        self._d_cache: dict[Word, Element] = {}

    # --- слова ---

    @property
    def length(self) -> int:
        return len(self.variables)

    def word_degree(self, w: Word) -> int:
        return sum(e * v.degree for e, v in zip(w, self.variables))

    @cached_property
    def _words_by_degree(self) -> dict[int, list[Word]]:
        result: dict[int, list[Word]] = {n: [] for n in range(-self.window, 1)}

        def extend(prefix: tuple, degree: int) -> None:
            k = len(prefix)
            if k == self.length:
                result[degree].append(prefix)
                return
            var = self.variables[k]
            limit = 1 if var.kind == EXTERIOR else self.window // -var.degree
            for e in range(limit + 1):
                value = degree + e * var.degree
                if value < -self.window:
                    break
                extend(prefix + (e,), value)

        extend((), 0)
        return {n: sorted(words, reverse=True) for n, words in result.items()}

    def words(self, n: int) -> list[Word]:
        return self._words_by_degree.get(n, [])

    @property
    def all_words(self) -> list[Word]:
        return [w for n in range(0, -self.window - 1, -1) for w in self.words(n)]

    def ranks(self) -> list[int]:
        """Ранги членов в степенях 0, −1, …, −window."""
        return [len(self.words(-n)) for n in range(self.window + 1)]

    def unit_word(self) -> Word:
        return (0,) * self.length

    def pad(self, x: Element) -> Element:
        """Вложение элемента предыдущей стадии (дополнение слов нулями)."""
        return {w + (0,) * (self.length - len(w)): a for w, a in x.items()}

    # --- умножение ---

    def multiply_words(self, u: Word, v: Word) -> Optional[tuple[int, Word]]:
        """
        u·v = ±C·w: знак от перестановки нечетных множителей, C есть произведение биномиальных коэффициентов.
        """
        coefficient = 1
        product = []
        for a, b, var in zip(u, v, self.variables):
            if var.kind == EXTERIOR:
                if a and b:
                    return None
                product.append(a + b)
            else:
                coefficient *= divided_power_coefficient(a, b)
                product.append(a + b)
        swaps = 0
        odd = [var.is_odd for var in self.variables]
        for i in range(self.length):
            if not (odd[i] and v[i]):
                continue
            for j in range(i + 1, self.length):
                if odd[j] and u[j]:
                    swaps += 1
        if swaps % 2:
            coefficient = -coefficient
        return coefficient, tuple(product)

    def multiply(self, x: Element, y: Element) -> Element:
        result: Element = {}
        for u, a in x.items():
            for v, b in y.items():
                found = self.multiply_words(u, v)
                if found is None:
                    continue
                coefficient, w = found
                if self.word_degree(w) < -self.window:
                    continue
                _add_into(result, w, a * b * self.algebra.scalar(coefficient))
        return {w: a for w, a in result.items() if not a.is_zero()}

    def word(self, w: Word) -> Element:
        return {tuple(w): self.algebra.one()}

    # --- дифференциал ---

    def d_word(self, w: Word) -> Element:
        """Дифференциал слова по правилу Лейбница: d(f·r) = d(f)·r + (−1)^|f| f·d(r)."""
        cached = self._d_cache.get(w)
        if cached is not None:
            return cached
        k = next((i for i, e in enumerate(w) if e), None)
        if k is None:
            result: Element = {}
        else:
            var = self.variables[k]
            e = w[k]
            head = tuple(e if i == k else 0 for i in range(self.length))
            rest = tuple(0 if i == k else x for i, x in enumerate(w))
            t = self.pad(dict(var.cycle))
            if var.kind == EXTERIOR:
                d_head = t
            else:
                lower = tuple(e - 1 if i == k else 0 for i in range(self.length))
                d_head = self.multiply(t, self.word(lower))
            result = self.multiply(d_head, self.word(rest))
            sign = -1 if (e * var.degree) % 2 else 1
            for v, a in self.multiply(self.word(head), self.d_word(rest)).items():
                _add_into(result, v, a if sign > 0 else -a)
            result = {v: a for v, a in result.items() if not a.is_zero()}
        self._d_cache[w] = result
        return result

    def d(self, x: Element) -> Element:
        result: Element = {}
        for w, a in x.items():
            for v, b in self.d_word(w).items():
                _add_into(result, v, a * b)
        return {v: a for v, a in result.items() if not a.is_zero()}

    def element_degree(self, x: Element) -> Optional[int]:
        degrees = {self.word_degree(w) for w in x}
        if len(degrees) > 1:
            raise InputError("Элемент DG-алгебры неоднороден")
        return degrees.pop() if degrees else None

    # --- комплекс и когомологии ---

    @cached_property
    def complex(self) -> Complex:
        """Подлежащий комплекс свободных A-модулей в окне."""
        return self.subcomplex(None)

    def subcomplex(self, words: Optional[frozenset]) -> Complex:
        """Подкомплекс на подмножестве слов (None означает все слова)."""
        algebra = self.algebra
        chosen = {n: [w for w in self.words(n) if words is None or w in words]
                  for n in range(-self.window, 1)}
        terms = {n: len(ws) for n, ws in chosen.items() if ws}
        diffs = {}
        for n in range(-self.window, 0):
            if not chosen[n] or not chosen[n + 1]:
                continue
            index = {w: i for i, w in enumerate(chosen[n + 1])}
            entries = {}
            for col, w in enumerate(chosen[n]):
                for v, a in self.d_word(w).items():
                    if v in index:
                        entries[(index[v], col)] = a
            diffs[n] = MatrixOverA(algebra, len(chosen[n + 1]), len(chosen[n]), entries)
        return Complex(algebra, terms, diffs)

    def to_vector(self, x: Element, n: int) -> list:
        index = {w: i for i, w in enumerate(self.words(n))}
        column = [self.algebra.zero() for _ in index]
        for w, a in x.items():
            column[index[w]] = column[index[w]] + a
        return column_to_vector(self.algebra, self.complex.term(n), column)

    def from_vector(self, vector: Sequence, n: int) -> Element:
        column = vector_to_column(self.algebra, self.complex.term(n), vector)
        return {w: a for w, a in zip(self.words(n), column) if not a.is_zero()}

    def cohomology_dimension(self, n: int) -> int:
        if n <= -self.window:
            raise InputError(f"Степень {n} вне окна {self.window}")
        return cohomology_space(self.complex, n).dimension

    def cohomology_representatives(self, n: int) -> list[Element]:
        """Циклы-представители k-базиса Hⁿ (детерминированный выбор ведущих)."""
        space = cohomology_space(self.complex, n)
        return [self.from_vector(v, n) for v in space.representatives]

    def is_boundary(self, x: Element) -> bool:
        n = self.element_degree(x)
        if n is None:
            return True
        if not self.complex.rank(n - 1):
            return False
        K = self.algebra.K
        images = linalg.image_basis(self.complex.expand_d(n - 1))
        return linalg.in_span(images, self.to_vector(x, n), self.complex.kdim(n), K)

    def class_span_dimension(self, x: Element) -> int:
        """dim_k образа A·x в когомологиях."""
        n = self.element_degree(x)
        if n is None:
            return 0
        algebra = self.algebra
        K = algebra.K
        space = cohomology_space(self.complex, n)
        module = self.complex.term(n)
        vector = self.to_vector(x, n)
        multiples = [linalg.matvec(scalar_action(algebra, module, algebra.monomial(m)), vector)
                     for m in algebra.basis]
        total = linalg.span_dimension(space.boundaries + multiples, space.dim_ambient, K)
        return total - len(space.boundaries)

    # --- проверки аксиом ---

    def verify_axioms(self) -> dict:
        """
        Косокоммутативность, правило Лейбница и d² = 0 на всех материализованных словах.

        Returns:
            dict: {"skew": bool, "leibniz": bool, "d_squared": bool, "witness": ...}
        """
        words = self.all_words
        report = {"skew": True, "leibniz": True, "d_squared": True, "witness": None,
                  "window": self.window}
        for w in words:
            if self.d(self.d_word(w)):
                report["d_squared"] = False
                report["witness"] = {"axiom": "d_squared", "word": self.format_word(w)}
                break
        for u in words:
            du = self.d_word(u)
            deg_u = self.word_degree(u)
            for v in words:
                deg_v = self.word_degree(v)
                if deg_u + deg_v < -self.window:
                    continue
                x, y = self.word(u), self.word(v)
                uv, vu = self.multiply(x, y), self.multiply(y, x)
                sign = -1 if (deg_u * deg_v) % 2 else 1
                if report["skew"] and uv != {w: a if sign > 0 else -a for w, a in vu.items()}:
                    report["skew"] = False
                    report["witness"] = {"axiom": "skew", "words": [self.format_word(u), self.format_word(v)]}
                if report["skew"] and u == v and deg_u % 2 and uv:
                    report["skew"] = False
                    report["witness"] = {"axiom": "square", "word": self.format_word(u)}
                if report["leibniz"]:
                    left = self.d(uv)
                    right = self.multiply(du, y)
                    for w, a in self.multiply(x, self.d_word(v)).items():
                        _add_into(right, w, a if deg_u % 2 == 0 else -a)
                    right = {w: a for w, a in right.items() if not a.is_zero()}
                    if left != right:
                        report["leibniz"] = False
                        report["witness"] = {"axiom": "leibniz",
                                             "words": [self.format_word(u), self.format_word(v)]}
        report["ok"] = report["skew"] and report["leibniz"] and report["d_squared"]
        return report

    # --- присоединение ---

    def adjoin(self, t: Element, name: Optional[str] = None) -> "DGAlgebra":
        return adjoin_variable(self, t, name=name)

    # --- форматирование ---

    def format_word(self, w: Word) -> str:
        parts = []
        for e, var in zip(w, self.variables):
            if not e:
                continue
            if var.kind == EXTERIOR:
                parts.append(var.name)
            else:
                parts.append(var.name if e == 1 else f"{var.name}^({e})")
        return "*".join(parts) or "1"

    def format_element(self, x: Element) -> dict:
        return {self.format_word(w): a.format() for w, a in sorted(x.items(), reverse=True)}

    def to_json(self) -> dict:
        return {
            "ring": self.algebra.to_json(),
            "window": self.window,
            "variables": [v.to_json(self) for v in self.variables],
            "ranks": self.ranks(),
        }

    def __repr__(self) -> str:
        return f"DGAlgebra({self.algebra}, переменных {self.length}, окно {self.window})"


def _add_into(target: Element, w: Word, a: RingElem) -> None:
    target[w] = target[w] + a if w in target else a


def _next_name(dg: DGAlgebra, kind: str) -> str:
    prefix = "T" if kind == EXTERIOR else "S"
    count = sum(1 for v in dg.variables if v.kind == kind)
    return f"{prefix}{count + 1}"


def adjoin_variable(X: DGAlgebra, t: Element, window: Optional[int] = None,
                    name: Optional[str] = None) -> DGAlgebra:
    """
    Присоединяет переменную, убивающую цикл t степени ρ+1.

    ρ нечетно: внешняя переменная T с d(T) = t; ρ четно: разделенные степени
    S^(j) с d(S^(j)) = t·S^(j−1).

    Raises:
        InputError: t = 0 или неоднороден
        NotACycleError: d(t) ≠ 0
    """
    t = {tuple(w): a for w, a in t.items() if not a.is_zero()}
    q = X.element_degree(t)
    if q is None:
        raise InputError("Убиваемый цикл равен нулю")
    if X.d(t):
        logger.error(f"Элемент степени {q} не является циклом")
        raise NotACycleError(f"Элемент степени {q} не является циклом: d(t) ≠ 0")
    rho = q - 1
    kind = EXTERIOR if rho % 2 else DIVIDED
    if q < 0 and X.is_boundary(t):
        logger.warning(f"Убиваемый цикл степени {q} является границей: присоединение бесполезно")
    variable = DGVariable(name or _next_name(X, kind), kind, rho, tuple(sorted(t.items())))
    Z = DGAlgebra(X.algebra, X.variables + (variable,), X.window if window is None else window)
    logger.info(f"Присоединена переменная {variable.name} ({kind}) степени {rho}")
    return Z


def koszul_dg(algebra: LocalAlgebra, elements: Sequence, window: Optional[int] = None) -> DGAlgebra:
    """Комплекс Кошуля как DG-алгебра: внешние переменные степени −1 с d(Tᵢ) = aᵢ."""
    X = DGAlgebra(algebra, (), window)
    for a in elements:
        a = a if isinstance(a, RingElem) else algebra.parse(a)
        X = adjoin_variable(X, {X.unit_word(): a})
    return X


# --- проверка изменения когомологий ---

@dataclass
class AdjunctionReport:
    rho: int
    window: int
    unchanged: dict = field(default_factory=dict)
    before: int = 0
    after: int = 0
    killed: int = 0
    ok: bool = True

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "window": self.window,
            "unchanged": {str(q): list(v) for q, v in sorted(self.unchanged.items())},
            "top": {"before": self.before, "after": self.after, "killed": self.killed},
            "ok": self.ok,
        }


def verify_adjoin_homology(X: DGAlgebra, Z: DGAlgebra, t: Element) -> AdjunctionReport:
    """
    Hᑫ(X⟨T⟩) = Hᑫ(X) при ρ+1 < q ≤ 0 и H^{ρ+1}(X⟨T⟩) = H^{ρ+1}(X)/At (в окне).
    """
    q0 = X.element_degree(t)
    rho = q0 - 1
    window = min(X.window, Z.window)
    report = AdjunctionReport(rho, window)
    for q in range(q0 + 1, 1):
        if q <= -window:
            continue
        pair = (X.cohomology_dimension(q), Z.cohomology_dimension(q))
        report.unchanged[q] = pair
        if pair[0] != pair[1]:
            report.ok = False
    if q0 > -window:
        report.before = X.cohomology_dimension(q0)
        report.after = Z.cohomology_dimension(q0)
        report.killed = X.class_span_dimension(t)
        if report.after != report.before - report.killed:
            report.ok = False
    if not report.ok:
        logger.warning(f"Когомологии после присоединения степени {rho} не согласуются")
    return report


# --- резольвента Тейта ---

@dataclass
class TateResolution:
    dg: DGAlgebra
    bound: int
    stages: list = field(default_factory=list)
    filtration: Optional["Filtration"] = None

    @property
    def betti(self) -> list[int]:
        return self.dg.ranks()[: self.bound + 1]

    def acyclic(self) -> bool:
        return all(self.dg.cohomology_dimension(q) == 0 for q in range(-self.bound + 1, 0))

    def to_json(self) -> dict:
        data = {
            "bound": self.bound,
            "betti": self.betti,
            "stages": self.stages,
            "dg": self.dg.to_json(),
        }
        if self.filtration is not None:
            data["filtration"] = self.filtration.to_json()
        return data


def tate_resolve(algebra: LocalAlgebra, bound: Optional[int] = None,
                 with_filtration: bool = False) -> TateResolution:
    """
    Резольвента k убийством циклов: Y₁ есть Кошуль на образующих 𝔪,
    на стадии i убивается k-базис H^{−i+1}(Y_{i−1}).

    Args:
        algebra: Артинова алгебра
        bound: Гомологическая граница (окно материализации)
        with_filtration: Переносить хорошую фильтрацию через все присоединения
    """
    algebra.require_artinian("tate_resolve")
    bound = config.DEFAULT_BOUND if bound is None else bound
    Y = koszul_dg(algebra, algebra.maximal_ideal_generators(), bound)
    stages = [{"stage": 1, "degree": -1, "variables": Y.length}]
    filtration = koszul_filtration(Y) if with_filtration else None
    for i in range(2, bound + 1):
        q = -i + 1
        cycles = Y.cohomology_representatives(q)
        if not cycles:
            continue
        for t in cycles:
            if filtration is not None:
                filtration = good_filtration_extend(filtration, Y.pad(t))
                Y = filtration.dg
            else:
                Y = adjoin_variable(Y, Y.pad(t))
        stages.append({"stage": i, "degree": -i, "variables": len(cycles)})
        logger.info(f"Стадия {i} резольвенты Тейта: убито {len(cycles)} классов в степени {q}")
    result = TateResolution(Y, bound, stages, filtration)
    logger.info(f"Резольвента Тейта до степени {bound}: ранги {result.betti}")
    return result


def tate_filtration(algebra: LocalAlgebra, bound: Optional[int] = None) -> "Filtration":
    """Хорошая фильтрация резольвенты Тейта, перенесенная через все присоединения."""
    return tate_resolve(algebra, bound, with_filtration=True).filtration


# --- хорошие фильтрации ---

@dataclass
class Filtration:
    """
    F(0) ⊆ F(1) ⊆ … как подмножества слов; levels[i] = F(i), при i ≥ len(levels) − 1
    фильтрация стабилизируется.
    """
    dg: DGAlgebra
    levels: list
    parameter: int

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def piece(self, i: int) -> frozenset:
        if i < 0:
            return frozenset()
        return self.levels[min(i, self.top)]

    def level_of(self, w: Word) -> Optional[int]:
        for i, level in enumerate(self.levels):
            if w in level:
                return i
        return None

    def element_level(self, x: Element) -> Optional[int]:
        levels = [self.level_of(w) for w in x]
        if any(level is None for level in levels):
            return None
        return max(levels, default=0)

    def to_json(self) -> dict:
        dg = self.dg
        pieces = {}
        for i, level in enumerate(self.levels):
            by_degree: dict[str, list] = {}
            for w in sorted(level, reverse=True):
                by_degree.setdefault(str(dg.word_degree(w)), []).append(dg.format_word(w))
            pieces[str(i)] = by_degree
        return {"parameter": self.parameter, "window": dg.window, "stable_from": self.top,
                "pieces": pieces}


def koszul_filtration(X: DGAlgebra, whole: bool = False) -> Filtration:
    """
    Тривиальные хорошие фильтрации алгебры Кошуля с параметром 0:
    F(0) = часть степени 0, F(i) = X при i ≥ 1 (или F(i) = X для всех i).
    """
    everything = frozenset(X.all_words)
    if whole:
        return Filtration(X, [everything], 0)
    return Filtration(X, [frozenset(X.words(0)), everything], 0)


def good_filtration_extend(F: Filtration, t: Element, r: Optional[int] = None,
                           name: Optional[str] = None) -> Filtration:
    """
    Хорошая фильтрация G на Z = X⟨T⟩ по фильтрации F параметра c и циклу t ∈ F(r):

        ρ нечетно: G(i)ⁿ = F(i+r+c)ⁿ ⊕ F(i)^{n−ρ}T, параметр r + 2c;
        ρ четно:   G(i)ⁿ = ⊕_{λ=0..i} F((i−λ)(r+c))^{n−λρ} T^(λ), параметр 1.

    Raises:
        InputError: t не лежит в F(r)
    """
    X = F.dg
    level = F.element_level(t)
    if level is None:
        raise InputError("Цикл не лежит ни в одном члене фильтрации")
    if r is None:
        r = level
    elif level > r:
        logger.error(f"Цикл лежит в F({level}), а не в заявленном F({r})")
        raise InputError(f"Цикл не лежит в заявленном члене F({r})")
    c = F.parameter
    Z = adjoin_variable(X, t, name=name)
    var = Z.variables[-1]
    words = Z.all_words
    levels = []
    if var.kind == EXTERIOR:
        top = F.top
        for i in range(top + 1):
            low, high = F.piece(i + r + c), F.piece(i)
            levels.append(frozenset(
                w for w in words if (w[-1] == 0 and w[:-1] in low) or (w[-1] == 1 and w[:-1] in high)
            ))
        parameter = r + 2 * c
    else:
        reach = Z.window // -var.degree
        top = F.top + reach
        for i in range(top + 1):
            levels.append(frozenset(
                w for w in words if w[-1] <= i and w[:-1] in F.piece((i - w[-1]) * (r + c))
            ))
        parameter = 1
    logger.info(f"Фильтрация продолжена через {var.name}: r = {r}, параметр {parameter}")
    return Filtration(Z, levels, parameter)


@dataclass
class FiltrationReport:
    """Проверка пяти аксиом хорошей фильтрации в окне."""
    window: int
    parameter: int
    axioms: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(item["ok"] for item in self.axioms.values())

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "parameter": self.parameter,
            "exhaustion": "window-relative",
            "ok": self.ok,
            "axioms": self.axioms,
        }


def verify_good_filtration(F: Filtration) -> FiltrationReport:
    """
    Аксиомы: (1) подкомплексы-слагаемые, (2) вложенность и исчерпание, (3) слагаемые
    друг друга, (4) мультипликативность с параметром c, (5) конечная длина H*(F(i)), i ≥ 1.
    """
    dg = F.dg
    report = FiltrationReport(dg.window, F.parameter)
    fmt = dg.format_word

    closure = {"ok": True}
    for i, level in enumerate(F.levels):
        for w in sorted(level, reverse=True):
            escaped = [v for v in dg.d_word(w) if v not in level]
            if escaped:
                closure = {"ok": False, "witness": {"piece": i, "word": fmt(w), "image": fmt(escaped[0])}}
                break
        if not closure["ok"]:
            break
    report.axioms["1"] = closure

    nesting = {"ok": True}
    for i in range(F.top):
        missing = F.levels[i] - F.levels[i + 1]
        if missing:
            nesting = {"ok": False, "witness": {"piece": i, "word": fmt(min(missing))}}
            break
    absent = frozenset(dg.all_words) - F.piece(F.top)
    if nesting["ok"] and absent:
        nesting = {"ok": False, "witness": {"exhaustion": fmt(max(absent))}}
    report.axioms["2"] = nesting
    # Члены являются подмножествами слов, поэтому слагаемые друг друга автоматически
    report.axioms["3"] = {"ok": nesting["ok"]}

    multiplicative = {"ok": True}
    entry = {w: F.level_of(w) for w in dg.all_words}
    for u, i in entry.items():
        if i is None:
            continue
        for v, j in entry.items():
            if j is None or dg.word_degree(u) + dg.word_degree(v) < -dg.window:
                continue
            found = dg.multiply_words(u, v)
            if found is None or not dg.algebra.scalar(found[0]) or dg.word_degree(found[1]) < -dg.window:
                continue
            if found[1] not in F.piece(i + j + F.parameter):
                multiplicative = {"ok": False, "witness": {"words": [fmt(u), fmt(v)], "pieces": [i, j]}}
                break
        if not multiplicative["ok"]:
            break
    report.axioms["4"] = multiplicative

    lengths = {"ok": closure["ok"], "lengths": {}}
    if closure["ok"]:
        for i in range(1, F.top + 1):
            sub = dg.subcomplex(F.levels[i])
            dims = {q: n for q, n in cohomology_dims(sub).items() if q > -dg.window}
            lengths["lengths"][str(i)] = sum(dims.values())
    report.axioms["5"] = lengths
    if not report.ok:
        logger.warning(f"Фильтрация не является хорошей: {report.to_json()['axioms']}")
    return report
