"""
Комплексы Кошуля, минимальные свободные резольвенты, числа Бетти
и функторы резольвент p (проективная) и i (инъективная, через двойственность Матлиса).

Резольвенты всегда усечены явной границей: бесконечные объекты не хранятся.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union

from homforge import config, linalg
from homforge.algebra import LocalAlgebra, RingElem
from homforge.complexes import (
    FREE,
    Complex,
    FreeModule,
    MatrixOverA,
    cohomology_dims,
    column_to_vector,
    expand,
    kdim,
    matlis_dual,
    scalar_action,
    vector_to_column,
)
from homforge.errors import InputError, InternalInconsistencyError, UnsupportedBackendError
from homforge.homotopy import minimize

logger = logging.getLogger(__name__)


# --- комплекс Кошуля ---

def koszul(algebra: LocalAlgebra, elements: Sequence[Union[str, RingElem]]) -> Complex:
    """
    Комплекс Кошуля K(a₁, …, aₙ) в степенях [−n, 0].

    Образующие члена −k: подмножества S мощности k в лексикографическом порядке,
    ∂(e_S) = Σⱼ (−1)ʲ a_{sⱼ} e_{S∖sⱼ}.

    Args:
        algebra: Базовая алгебра
        elements: Элементы или строки многочленов

    Returns:
        Complex: Комплекс Кошуля (∂∘∂ = 0 проверяется при построении)

    Raises:
        InputError: Пустой список или неоднородный элемент на градуированном бэкенде
    """
    if not elements:
        logger.error("Комплекс Кошуля на пустом списке элементов")
        raise InputError("Список элементов комплекса Кошуля пуст")
    elems = [a if isinstance(a, RingElem) else algebra.parse(a) for a in elements]
    graded = algebra.is_graded
    if graded:
        for a in elems:
            if not a.is_zero() and not a.is_homogeneous():
                raise InputError(f"Элемент {a} неоднороден")
    n = len(elems)
    subsets = {k: list(combinations(range(n), k)) for k in range(n + 1)}

    def weight(S: tuple) -> int:
        return sum(elems[s].degree or 0 for s in S)

    terms = {
        -k: FreeModule(len(subsets[k]), tuple(weight(S) for S in subsets[k]) if graded else None)
        for k in range(n + 1)
    }
    diffs = {}
    for k in range(1, n + 1):
        index = {S: i for i, S in enumerate(subsets[k - 1])}
        entries = {}
        for col, S in enumerate(subsets[k]):
            for j, s in enumerate(S):
                a = elems[s]
                if a.is_zero():
                    continue
                entries[(index[S[:j] + S[j + 1:]], col)] = a if j % 2 == 0 else -a
        diffs[-k] = MatrixOverA(algebra, len(subsets[k - 1]), len(subsets[k]), entries)
    C = Complex(algebra, terms, diffs)
    logger.info(f"Комплекс Кошуля на {n} элементах: ранги {C.ranks()}")
    return C


def koszul_on_maximal_ideal(algebra: LocalAlgebra) -> Complex:
    generators = algebra.maximal_ideal_generators()
    if not generators:
        return Complex(algebra, {0: 1})
    return koszul(algebra, generators)


# --- представления модулей ---

@dataclass
class ModulePresentation:
    """
    Модуль M = coker(relations): строки отвечают образующим, столбцы соотношениям.
    """
    algebra: LocalAlgebra
    generators: int
    relations: MatrixOverA
    degrees: Optional[tuple] = None

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise InputError(
                f"Матрица соотношений имеет {self.relations.rows} строк, ожидалось {self.generators}",
                location="relations",
            )
        if self.algebra.is_artinian:
            self.degrees = None
        elif self.degrees is None:
            self.degrees = (0,) * self.generators
        else:
            self.degrees = tuple(self.degrees)
            if len(self.degrees) != self.generators:
                raise InputError("Число степеней не совпадает с числом образующих", location="degrees")

    @property
    def relation_degrees(self) -> Optional[tuple]:
        """Степени соотношений (градуированный бэкенд): deg образующей + deg элемента."""
        if self.degrees is None:
            return None
        result = []
        for j in range(self.relations.cols):
            column = self.relations.column(j)
            found = {self.degrees[r] + (a.degree or 0) for r, a in column}
            if len(found) > 1 or any(not a.is_homogeneous() for _, a in column):
                raise InputError(f"Соотношение {j} неоднородно", location="relations")
            result.append(found.pop() if found else 0)
        return tuple(result)

    def as_complex(self) -> Complex:
        """Двучлен [A^r → A^g] в степенях −1, 0 с H⁰ = M."""
        terms = {
            0: FreeModule(self.generators, self.degrees),
            -1: FreeModule(self.relations.cols, self.relation_degrees),
        }
        return Complex(self.algebra, terms, {-1: self.relations})

    def length(self) -> int:
        """dim_k M (артинов бэкенд)."""
        self.algebra.require_artinian("ModulePresentation.length")
        C = self.as_complex()
        ambient = C.kdim(0)
        if not C.rank(-1):
            return ambient
        return ambient - linalg.rank(C.expand_d(-1))

    @classmethod
    def residue_field(cls, algebra: LocalAlgebra) -> "ModulePresentation":
        """k = A/𝔪: одна образующая, соотношения задаются переменными."""
        generators = algebra.maximal_ideal_generators()
        entries = {(0, j): x for j, x in enumerate(generators)}
        return cls(algebra, 1, MatrixOverA(algebra, 1, len(generators), entries))

    @classmethod
    def free(cls, algebra: LocalAlgebra, rank: int = 1) -> "ModulePresentation":
        return cls(algebra, rank, MatrixOverA.zero(algebra, rank, 0))

    @classmethod
    def from_json(cls, data: dict, algebra: LocalAlgebra) -> "ModulePresentation":
        """
        Формат: {"generators": n, "degrees": [...], "relations": [[...], ...]}
        (строки матрицы соответствуют образующим).
        """
        if not isinstance(data, dict) or "generators" not in data:
            raise InputError("Описание модуля должно содержать поле 'generators'", location="module")
        generators = data["generators"]
        if not isinstance(generators, int) or generators < 0:
            raise InputError(f"Некорректное число образующих: {generators!r}", location="generators")
        rows = data.get("relations") or []
        if rows and len(rows) != generators:
            raise InputError(f"Матрица соотношений имеет {len(rows)} строк, ожидалось {generators}",
                             location="relations")
        if rows and rows[0]:
            relations = MatrixOverA.from_rows(algebra, rows)
        else:
            relations = MatrixOverA.zero(algebra, generators, 0)
        return cls(algebra, generators, relations, data.get("degrees"))

    def to_json(self) -> dict:
        data: dict = {"ring": self.algebra.to_json(), "generators": self.generators}
        if self.degrees is not None:
            data["degrees"] = list(self.degrees)
        data["relations"] = self.relations.to_json()
        return data


# --- минимальные образующие подмодулей ---

def _degrees_for(algebra: LocalAlgebra, modules: Sequence[FreeModule]) -> list:
    """Внутренние степени для вычислений: [None] на артиновом бэкенде."""
    if algebra.is_artinian:
        return [None]
    low = min((g for m in modules for g in (m.degrees or ())), default=0)
    return list(range(low, algebra.window + 1))


def _maximal_ideal_images(algebra: LocalAlgebra, modules: Sequence[FreeModule],
                          spaces: dict, d: Optional[int]) -> list:
    """Образ 𝔪·S в степени d, где S задан k-базисами spaces[степень] в ⊕ modules."""
    images = []
    for x in algebra.maximal_ideal_generators():
        source = None if d is None else d - x.degree
        if source not in spaces or not spaces[source]:
            continue
        action = linalg.block_diag([scalar_action(algebra, m, x, source) for m in modules], algebra.K)
        images.extend(linalg.matvec(action, v) for v in spaces[source])
    return images


def _minimal_generators(algebra: LocalAlgebra, modules: Sequence[FreeModule], spaces: dict,
                        extra: Optional[dict] = None) -> list[tuple]:
    """
    Векторы подмодуля S, независимые по модулю 𝔪S + extra (минимальные образующие).

    Returns:
        list[tuple]: Пары (степень, k-вектор)
    """
    K = algebra.K
    result = []
    for d in sorted(spaces, key=lambda v: -1 if v is None else v):
        vectors = spaces[d]
        if not vectors:
            continue
        dim = sum(kdim(algebra, m, d) for m in modules)
        base = _maximal_ideal_images(algebra, modules, spaces, d)
        if extra and extra.get(d):
            base = base + extra[d]
        picked = linalg.extend_basis(base, vectors, dim, K)
        result.extend((d, vectors[k]) for k in picked)
    return result


def _kernel_spaces(matrix: MatrixOverA, source: FreeModule, target: FreeModule,
                   degrees: list) -> dict:
    spaces = {}
    for d in degrees:
        if not kdim(matrix.algebra, source, d):
            continue
        if target.rank:
            spaces[d] = linalg.kernel(expand(matrix, source, target, d))
        else:
            spaces[d] = linalg.columns(linalg.identity(kdim(matrix.algebra, source, d), matrix.algebra.K))
    return spaces


def _new_term(algebra: LocalAlgebra, target: FreeModule, generators: list[tuple]) -> tuple:
    """Свободный член на выбранных образующих и матрица отображения в target."""
    entries = {}
    for col, (d, vector) in enumerate(generators):
        for row, a in enumerate(vector_to_column(algebra, target, vector, d)):
            if not a.is_zero():
                entries[(row, col)] = a
    degrees = tuple(d for d, _ in generators) if algebra.is_graded else None
    module = FreeModule(len(generators), degrees)
    return module, MatrixOverA(algebra, target.rank, len(generators), entries)


# --- минимальная резольвента модуля ---

@dataclass
class ResolutionSlice:
    """
    Усеченная минимальная резольвента: носитель [−bound, 0], H⁰ = M.
    """
    complex: Complex
    presentation: ModulePresentation
    bound: int
    minimal: bool = True
    betti: list[int] = field(default_factory=list)
    certified_up_to: Optional[int] = None

    def to_json(self) -> dict:
        data = {
            "bound": self.bound,
            "minimal": self.minimal,
            "betti": self.betti,
            "complex": self.complex.to_json(),
        }
        if self.certified_up_to is not None:
            data["certified_up_to"] = self.certified_up_to
        return data


def minimal_resolution(M: ModulePresentation, bound: Optional[int] = None) -> ResolutionSlice:
    """
    Минимальная свободная резольвента до гомологической степени bound.

    Минимизирует представление, затем выбирает минимальные образующие
    подмодуля соотношений и последовательных сизигий.

    Raises:
        InputError: bound < 0
    """
    bound = config.DEFAULT_BOUND if bound is None else bound
    if bound < 0:
        logger.error(f"Отрицательная граница резольвенты: {bound}")
        raise InputError(f"Граница резольвенты должна быть неотрицательной: {bound}")
    algebra = M.algebra
    presentation = minimize(M.as_complex()).minimal
    top = presentation.term(0)
    terms = {0: top} if top.rank else {}
    diffs = {}
    if top.rank and bound >= 1 and presentation.rank(-1):
        source = presentation.term(-1)
        degrees = _degrees_for(algebra, [source, top])
        spaces = {}
        for d in degrees:
            if kdim(algebra, source, d) and kdim(algebra, top, d):
                spaces[d] = linalg.image_basis(expand(presentation.d(-1), source, top, d))
        chosen = _minimal_generators(algebra, [top], spaces)
        if chosen:
            terms[-1], diffs[-1] = _new_term(algebra, top, chosen)
    for n in range(1, bound):
        if -n not in terms:
            break
        source, target = terms[-n], terms[-n + 1]
        degrees = _degrees_for(algebra, [source])
        spaces = _kernel_spaces(diffs[-n], source, target, degrees)
        chosen = _minimal_generators(algebra, [source], spaces)
        if not chosen:
            break
        terms[-n - 1], diffs[-n - 1] = _new_term(algebra, source, chosen)
        logger.debug(f"Сизигии степени {n}: {len(chosen)} образующих")
    C = Complex(algebra, terms, diffs)
    betti = [C.rank(-n) for n in range(bound + 1)]
    logger.info(f"Минимальная резольвента до степени {bound}: числа Бетти {betti}")
    return ResolutionSlice(C, M, bound, C.is_minimal(), betti,
                           None if algebra.is_artinian else algebra.window)


def betti_numbers(M: ModulePresentation, bound: Optional[int] = None) -> list[int]:
    return minimal_resolution(M, bound).betti


# --- функтор p: проективная резольвента комплекса ---

@dataclass
class ProjectiveResolution:
    """
    Ограниченный сверху свободный комплекс P и квазиизоморфизм φ: P → C.

    φ хранится образами образующих: phi[n][j] есть k-вектор в Cⁿ.
    """
    source: Complex
    complex: Complex
    phi: dict
    bound: int
    truncated: bool = False

    def phi_matrix(self, n: int):
        """k-матрица φⁿ: kcoords(Pⁿ) → kcoords(Cⁿ)."""
        return _phi_images_matrix(self.source.algebra, self.source, self.complex.term(n),
                                  self.phi.get(n, []), n)

    def apply(self, n: int, column: Sequence[RingElem]) -> list:
        """φⁿ на столбце элементов A (элемент Pⁿ) как k-вектор Cⁿ."""
        algebra = self.source.algebra
        vector = column_to_vector(algebra, self.complex.term(n), column)
        return linalg.matvec(self.phi_matrix(n), vector)

    def is_chain_map(self) -> bool:
        P, C = self.complex, self.source
        for n in set(P.terms) | {i - 1 for i in P.terms}:
            if not C.kdim(n + 1) or not P.kdim(n):
                continue
            left = linalg.zeros(C.kdim(n + 1), P.kdim(n), C.algebra.K)
            if P.rank(n + 1):
                left = self.phi_matrix(n + 1).matmul(P.expand_d(n))
            right = C.expand_d(n).matmul(self.phi_matrix(n)) if C.kdim(n) else \
                linalg.zeros(C.kdim(n + 1), P.kdim(n), C.algebra.K)
            if left != right:
                return False
        return True

    def cohomology_agrees(self) -> bool:
        """Hⁿ(P) и Hⁿ(C) совпадают по размерности выше границы усечения."""
        low = self.source.lo - self.bound + 1
        dims_p = {i: v for i, v in cohomology_dims(self.complex).items() if i >= low and v}
        dims_c = {i: v for i, v in cohomology_dims(self.source).items() if i >= low and v}
        return dims_p == dims_c

    def to_json(self) -> dict:
        algebra = self.source.algebra
        return {
            "bound": self.bound,
            "truncated": self.truncated,
            "complex": self.complex.to_json(),
            "phi": {
                str(n): [[algebra.field.format(c) for c in v] for v in images]
                for n, images in sorted(self.phi.items())
            },
        }


def _phi_images_matrix(algebra: LocalAlgebra, C: Complex, P_module: FreeModule, images: list, n: int):
    columns = []
    for g in range(P_module.rank):
        for m in algebra.basis:
            columns.append(linalg.matvec(scalar_action(algebra, C.term(n), algebra.monomial(m)), images[g]))
    return linalg.from_columns(columns, C.kdim(n), algebra.K)


def proj_resolution_of_complex(C: Complex, bound: Optional[int] = None) -> ProjectiveResolution:
    """
    Свободная резольвента P → C, усеченная на расстоянии bound ниже inf(носителя).

    Нисходящая конструкция: в степени n новыми образующими служат минимальные образующие
    модуля Zₙ = {(p, c) ∈ P^{n+1} ⊕ Cⁿ : ∂p = 0, ∂c = φ(p)} по модулю {0} ⊕ ∂C^{n−1};
    образующая g получает ∂g = p и φ(g) = c. Так конус φ становится точным.

    Returns:
        ProjectiveResolution: Минимальная резольвента и квазиизоморфизм φ
    """
    algebra = C.algebra
    algebra.require_artinian("proj_resolution_of_complex")
    K = algebra.K
    bound = config.DEFAULT_BOUND if bound is None else bound
    if C.is_zero():
        return ProjectiveResolution(C, Complex(algebra, {}), {}, bound)
    terms: dict[int, FreeModule] = {}
    diffs: dict[int, MatrixOverA] = {}
    phi: dict[int, list] = {}
    lowest = C.lo - bound
    truncated = False
    for n in range(C.hi, lowest - 2, -1):
        upper = terms.get(n + 1, FreeModule(0))
        c_mod, c_next = C.term(n), C.term(n + 1)
        dim_p, dim_c = kdim(algebra, upper), kdim(algebra, c_mod)
        if dim_p + dim_c == 0:
            continue
        # (p, c) ↦ (∂p, ∂c − φp)
        below = terms.get(n + 2, FreeModule(0))
        dim_below = kdim(algebra, below)
        d_p = expand(diffs[n + 1], upper, below) if n + 1 in diffs else linalg.zeros(dim_below, dim_p, K)
        dim_next = kdim(algebra, c_next)
        phi_next = _phi_images_matrix(algebra, C, upper, phi[n + 1], n + 1) if n + 1 in phi \
            else linalg.zeros(dim_next, dim_p, K)
        d_c = C.expand_d(n) if dim_c and dim_next else linalg.zeros(dim_next, dim_c, K)
        negative_phi = linalg.from_dok({k: -v for k, v in phi_next.to_dok().items()},
                                       dim_next, dim_p, K)
        top = linalg.hstack([d_p, linalg.zeros(dim_below, dim_c, K)], dim_below, K)
        bottom = linalg.hstack([negative_phi, d_c], dim_next, K)
        system = linalg.vstack([top, bottom], dim_p + dim_c, K)
        cycles = linalg.kernel(system)
        if n < lowest:
            # Ненулевые циклы ниже границы означают, что усечение отрезало резольвенту
            truncated = bool(cycles) and dim_c == 0
            break
        boundaries = []
        if dim_c and C.kdim(n - 1):
            boundaries = [[K.zero] * dim_p + v for v in linalg.image_basis(C.expand_d(n - 1))]
        modules = [upper, c_mod]
        chosen = _minimal_generators(algebra, modules, {None: cycles}, {None: boundaries})
        if not chosen:
            continue
        entries = {}
        images = []
        for col, (_, vector) in enumerate(chosen):
            p_part, c_part = vector[:dim_p], vector[dim_p:]
            for row, a in enumerate(vector_to_column(algebra, upper, p_part)):
                if not a.is_zero():
                    entries[(row, col)] = a
            images.append(c_part)
        terms[n] = FreeModule(len(chosen))
        phi[n] = images
        if upper.rank:
            diffs[n] = MatrixOverA(algebra, upper.rank, len(chosen), entries)
        logger.debug(f"Резольвента комплекса: степень {n}, {len(chosen)} образующих")
    P = Complex(algebra, terms, diffs)
    if truncated:
        logger.warning(f"Резольвента усечена на степени {lowest}: граница {bound} мала")
    resolution = ProjectiveResolution(C, P, phi, bound, truncated)
    if not resolution.is_chain_map():
        raise InternalInconsistencyError("φ: P → C не является цепным отображением",
                                         state={"complex": C.to_json()})
    return _minimized(resolution)


def _minimized(resolution: ProjectiveResolution) -> ProjectiveResolution:
    """Минимизирует P и переносит φ через включение минимальной модели."""
    model = minimize(resolution.complex)
    if not model.cancellations:
        return resolution
    algebra = resolution.source.algebra
    phi = {}
    for n, module in model.minimal.terms.items():
        inclusion = model.inclusion.component(n)
        images = []
        for j in range(module.rank):
            column = [inclusion.entry(r, j) for r in range(inclusion.rows)]
            images.append(resolution.apply(n, column))
        phi[n] = images
    logger.info(f"Резольвента минимизирована: {model.cancellations} сокращений")
    return ProjectiveResolution(resolution.source, model.minimal, phi, resolution.bound,
                                resolution.truncated)


def inj_resolution_via_matlis(C: Complex, bound: Optional[int] = None) -> Complex:
    """
    Инъективная резольвента i(C) = E(p(E(C))): каждый член есть конечная степень E.
    """
    C.algebra.require_artinian("inj_resolution_via_matlis")
    if C.kind != FREE:
        raise UnsupportedBackendError("Инъективная резольвента строится для свободных комплексов")
    resolution = proj_resolution_of_complex(matlis_dual(C), bound)
    return matlis_dual(resolution.complex)
