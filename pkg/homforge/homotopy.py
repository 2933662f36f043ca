"""
Вычисления в гомотопической категории K(A).

Все A-линейные задачи сводятся к точной линейной алгебре над k через
k-разложение членов (артинов бэкенд) или однородные компоненты (градуированный).
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from sympy import Poly, Symbol

from homforge import config, linalg
from homforge.algebra import LocalAlgebra
from homforge.complexes import (
    ChainMap,
    Complex,
    CohomologySpace,
    FreeModule,
    HomComplex,
    MatrixOverA,
    FREE,
    cohomology,
    cohomology_space,
    column_to_vector,
    expand,
    hom_complex,
    shift,
    vector_to_column,
)
from homforge.errors import (
    InfeasibleLiftError,
    InternalInconsistencyError,
    MismatchError,
    NotACycleError,
    UnsupportedBackendError,
    ZeroComplexError,
)

logger = logging.getLogger(__name__)


# --- гомотопии ---

@dataclass
class Homotopy:
    """Отображения sⁱ: Uⁱ → V^{i−1}."""
    source: Complex
    target: Complex
    components: dict = field(default_factory=dict)
    degree: int = 0

    def component(self, i: int) -> MatrixOverA:
        matrix = self.components.get(i)
        if matrix is None:
            return MatrixOverA.zero(self.source.algebra, self.target.rank(i - 1), self.source.rank(i))
        return matrix

    def boundary(self) -> ChainMap:
        """∂s + s∂."""
        U, V = self.source, self.target
        components = {}
        for i in set(U.terms) | set(V.terms):
            value = V.d(i - 1) @ self.component(i) + self.component(i + 1) @ U.d(i)
            components[i] = value
        return ChainMap(U, V, components, self.degree)

    def to_json(self) -> dict:
        return {"components": {str(i): self.components[i].to_json() for i in sorted(self.components)}}


@dataclass
class NullHomotopyVerdict:
    null: bool
    homotopy: Optional[Homotopy] = None
    certificate: Optional[list] = None

    def to_json(self, formatter) -> dict:
        if self.null:
            return {"null_homotopic": True, "homotopy": self.homotopy.to_json()}
        return {"null_homotopic": False, "certificate": [formatter(c) for c in self.certificate or []]}


def _graded_degree(algebra: LocalAlgebra, degree: int) -> Optional[int]:
    return degree if algebra.is_graded else None


def is_null_homotopic(f: ChainMap) -> NullHomotopyVerdict:
    """
    Решает k-линейную систему f = ∂s + s∂.

    Returns:
        NullHomotopyVerdict: Гомотопия-свидетель или сертификат несовместности
            (вектор y с y·D = 0 и y·f ≠ 0)
    """
    H = hom_complex(f.source, f.target)
    d = _graded_degree(f.algebra, f.degree)
    vector = H.components_to_vector(f.components, 0, d)
    K = f.algebra.K
    if linalg.is_zero_vector(vector, K):
        return NullHomotopyVerdict(True, Homotopy(f.source, f.target, {}, f.degree))
    system = expand(H.d(-1), H.term(-1), H.term(0), d)
    logger.debug(f"Система гомотопии: {system.shape[0]}×{system.shape[1]}")
    solution = linalg.solve(system, vector)
    if solution is None:
        return NullHomotopyVerdict(False, certificate=linalg.left_witness(system, vector))
    components = H.vector_to_components(solution, -1, d)
    homotopy = Homotopy(f.source, f.target, components, f.degree)
    if homotopy.boundary() != f:
        raise InternalInconsistencyError(
            "Найденная гомотопия не удовлетворяет f = ∂s + s∂",
            state={"map": f.to_json()},
        )
    return NullHomotopyVerdict(True, homotopy)


def are_homotopic(f: ChainMap, g: ChainMap) -> bool:
    return is_null_homotopic(f - g).null


# --- пространства морфизмов в K(A) ---

@dataclass
class HomSpace:
    """
    Hom_K(U, V[n]) = Hⁿ(Hom(U, V)) с базисом из представителей-цепных отображений.
    """
    source: Complex
    target: Complex
    shift: int
    hom: HomComplex
    space: CohomologySpace
    degree: Optional[int] = None

    @property
    def dimension(self) -> int:
        return self.space.dimension

    @property
    def shifted_target(self) -> Complex:
        return shift(self.target, self.shift)

    def element(self, coefficients: Sequence) -> ChainMap:
        K = self.source.algebra.K
        vector = [K.zero] * self.space.dim_ambient
        for c, rep in zip(coefficients, self.space.representatives):
            if not K.is_zero(c):
                vector = [a + c * b for a, b in zip(vector, rep)]
        components = self.hom.vector_to_components(vector, self.shift, self.degree)
        return ChainMap(self.source, self.shifted_target, components, self.degree or 0)

    @property
    def basis(self) -> list[ChainMap]:
        K = self.source.algebra.K
        result = []
        for k in range(self.dimension):
            coefficients = [K.one if j == k else K.zero for j in range(self.dimension)]
            result.append(self.element(coefficients))
        return result

    def vector(self, f: ChainMap) -> list:
        return self.hom.components_to_vector(f.components, self.shift, self.degree)

    def coordinates(self, f: ChainMap) -> list:
        """
        Координаты класса f в базисе.

        Raises:
            NotACycleError: f не является цепным отображением
        """
        space = self.space
        basis = space.boundaries + space.representatives
        coords = linalg.coordinates(basis, self.vector(f), space.dim_ambient, self.source.algebra.K)
        if coords is None:
            raise NotACycleError("Отображение не является циклом комплекса Hom")
        return coords[len(space.boundaries):]

    def random_element(self, rng: random.Random) -> ChainMap:
        field_ = self.source.algebra.field
        return self.element([field_.random_element(rng) for _ in range(self.dimension)])

    def generators(self) -> int:
        return cohomology(self.hom, self.shift).generators


def hom_space_K(U: Complex, V: Complex, n: int = 0, degree: Optional[int] = None) -> HomSpace:
    """
    k-базис Hom_K(U, V[n]).

    Args:
        U, V: Комплексы над одной алгеброй
        n: Сдвиг цели
        degree: Внутренняя степень отображений (градуированный бэкенд, по умолчанию 0)
    """
    H = hom_complex(U, V)
    d = None
    if U.algebra.is_graded:
        d = degree or 0
    space = cohomology_space(H, n, d)
    logger.debug(f"dim Hom_K({U.describe()}, {V.describe()}[{n}]) = {space.dimension}")
    return HomSpace(U, V, n, H, space, d)


def mu_hom(X: Complex, j: int) -> int:
    """Минимальное число образующих A-модуля Hom_K(X, X[j])."""
    X.algebra.require_artinian("mu_hom")
    return cohomology(hom_complex(X, X), j).generators


# --- минимизация ---

@dataclass
class MinimalModel:
    """
    Минимальная модель U и свидетели: p∘i = id_U, id_X − i∘p = ∂h + h∂.
    """
    original: Complex
    minimal: Complex
    projection: ChainMap
    inclusion: ChainMap
    homotopy: Homotopy
    cancellations: int = 0

    def to_json(self) -> dict:
        return {
            "minimal": self.minimal.to_json(),
            "cancellations": self.cancellations,
            "projection": self.projection.to_json(),
            "inclusion": self.inclusion.to_json(),
            "homotopy": self.homotopy.to_json(),
        }


def _find_unit_pivot(C: Complex) -> Optional[tuple[int, int, int]]:
    for n in sorted(C.differentials):
        units = [(c, r) for (r, c), a in C.differentials[n].entries.items() if a.is_unit()]
        if units:
            c, r = min(units)
            return n, r, c
    return None


def _select(module: FreeModule, keep: Sequence[int]) -> FreeModule:
    degrees = None if module.degrees is None else tuple(module.degrees[k] for k in keep)
    return FreeModule(len(keep), degrees, module.kind)


def _cancel(C: Complex, n: int, r: int, c: int):
    """
    Одно сокращение стягиваемой пары [A →a A] с обратимым a = ∂ⁿ[r][c].

    Returns:
        tuple: (новый комплекс, p1, i1, h1-компонента степени n+1)
    """
    algebra = C.algebra
    d = C.d(n)
    a_inv = d.entry(r, c).inverse()
    rest_cols = [j for j in range(C.rank(n)) if j != c]
    rest_rows = [i for i in range(C.rank(n + 1)) if i != r]
    beta = d.submatrix([r], rest_cols)
    gamma = d.submatrix(rest_rows, [c])
    delta = d.submatrix(rest_rows, rest_cols)

    terms = dict(C.terms)
    terms[n] = _select(C.term(n), rest_cols)
    terms[n + 1] = _select(C.term(n + 1), rest_rows)
    diffs = dict(C.differentials)
    diffs[n] = delta - (gamma @ beta).scale(a_inv)
    diffs[n - 1] = C.d(n - 1).submatrix(rest_cols, list(range(C.rank(n - 1))))
    diffs[n + 1] = C.d(n + 1).submatrix(list(range(C.rank(n + 2))), rest_rows)
    terms = {i: m for i, m in terms.items() if m.rank}
    diffs = {i: m for i, m in diffs.items() if i in terms and i + 1 in terms}
    reduced = Complex(algebra, terms, diffs, kind=C.kind, check=False)

    one = algebra.one()
    p_components, i_components = {}, {}
    for k, module in C.terms.items():
        if k not in (n, n + 1):
            p_components[k] = MatrixOverA.identity(algebra, module.rank)
            i_components[k] = MatrixOverA.identity(algebra, module.rank)
    p_components[n] = MatrixOverA(algebra, len(rest_cols), C.rank(n),
                                  {(k, j): one for k, j in enumerate(rest_cols)})
    p_next = {(k, i): one for k, i in enumerate(rest_rows)}
    for k, i in enumerate(rest_rows):
        value = -(gamma.entry(k, 0) * a_inv)
        if not value.is_zero():
            p_next[(k, r)] = value
    p_components[n + 1] = MatrixOverA(algebra, len(rest_rows), C.rank(n + 1), p_next)
    i_here = {(j, k): one for k, j in enumerate(rest_cols)}
    for k in range(len(rest_cols)):
        value = -(a_inv * beta.entry(0, k))
        if not value.is_zero():
            i_here[(c, k)] = value
    i_components[n] = MatrixOverA(algebra, C.rank(n), len(rest_cols), i_here)
    i_components[n + 1] = MatrixOverA(algebra, C.rank(n + 1), len(rest_rows),
                                      {(i, k): one for k, i in enumerate(rest_rows)})
    p1 = ChainMap(C, reduced, {k: m for k, m in p_components.items() if m.rows and m.cols})
    i1 = ChainMap(reduced, C, {k: m for k, m in i_components.items() if m.rows and m.cols})
    h1 = MatrixOverA(algebra, C.rank(n), C.rank(n + 1), {(c, r): a_inv})
    return reduced, p1, i1, h1


def minimize(X: Complex) -> MinimalModel:
    """
    Гауссово сокращение обратимых элементов дифференциалов.

    Returns:
        MinimalModel: Минимальный комплекс U с проверенными свидетелями
            гомотопической эквивалентности X ≃ U

    Raises:
        InternalInconsistencyError: Свидетели не прошли проверку
    """
    current = X
    projection = ChainMap.identity(X)
    inclusion = ChainMap.identity(X)
    homotopy = Homotopy(X, X, {})
    count = 0
    while True:
        pivot = _find_unit_pivot(current)
        if pivot is None:
            break
        n, r, c = pivot
        reduced, p1, i1, h1 = _cancel(current, n, r, c)
        # h ← h + i∘h1∘p
        extra = inclusion.component(n) @ h1 @ projection.component(n + 1)
        components = dict(homotopy.components)
        components[n + 1] = homotopy.component(n + 1) + extra
        homotopy = Homotopy(X, X, components)
        projection = p1.compose(projection)
        inclusion = inclusion.compose(i1)
        current = reduced
        count += 1
    if count:
        logger.info(f"Минимизация: {count} сокращений, ранги {current.ranks()}")
    if projection.compose(inclusion) != ChainMap.identity(current):
        raise InternalInconsistencyError("p∘i ≠ id после минимизации", state={"complex": X.to_json()})
    if ChainMap.identity(X) - inclusion.compose(projection) != homotopy.boundary():
        raise InternalInconsistencyError("id − i∘p ≠ ∂h + h∂ после минимизации",
                                         state={"complex": X.to_json()})
    return MinimalModel(X, current, projection, inclusion, homotopy, count)


def width(X: Complex) -> int:
    """
    Ширина минимальной модели: sup − inf носителя.

    Raises:
        ZeroComplexError: X гомотопически тривиален
    """
    minimal = minimize(X).minimal
    if minimal.is_zero():
        raise ZeroComplexError("Ширина нулевого комплекса не определена")
    return minimal.hi - minimal.lo


def rank(X: Complex) -> int:
    return minimize(X).minimal.total_rank


# --- изоморфизмы ---

@dataclass
class IsoVerdict:
    """verdict: "isomorphic" | "not-isomorphic" | "undecided"."""
    verdict: str
    forward: Optional[ChainMap] = None
    backward: Optional[ChainMap] = None
    separator: Optional[dict] = None
    samples: int = 0

    @property
    def isomorphic(self) -> bool:
        return self.verdict == "isomorphic"

    def to_json(self) -> dict:
        data: dict = {"verdict": self.verdict, "samples": self.samples}
        if self.separator is not None:
            data["separator"] = self.separator
        if self.forward is not None:
            data["forward"] = self.forward.to_json()
            data["backward"] = self.backward.to_json()
        return data


def _signature(C: Complex) -> dict:
    signature = {}
    for i in C.indices:
        module = C.terms[i]
        signature[i] = sorted(module.degrees) if module.degrees is not None else module.rank
    return signature


def _cohomology_signature(C: Complex) -> dict:
    indices = set(C.terms) | {i - 1 for i in C.terms}
    result = {}
    for i in sorted(indices):
        group = cohomology(C, i)
        value = group.by_degree if group.by_degree is not None else group.dimension
        if value:
            result[i] = value
    return result


def _component_inverse(f: ChainMap) -> Optional[ChainMap]:
    inverses = {}
    for i in set(f.source.terms) | set(f.target.terms):
        if f.source.rank(i) != f.target.rank(i):
            return None
        inverse = f.component(i).inverse()
        if inverse is None:
            return None
        inverses[i] = inverse
    return ChainMap(f.target, f.source, inverses, -f.degree)


def _grid(field_, dimension: int):
    """Перебор коэффициентов: все элементы GF(p) или сетка {−1, 0, 1} над ℚ."""
    if field_.characteristic:
        values = field_.elements()
    else:
        values = [field_(0), field_(1), field_(-1)]
    if len(values) ** dimension > config.EXHAUSTIVE_GRID:
        return None
    return product(values, repeat=dimension)


def _search_isomorphism(space: HomSpace, rng: random.Random, samples: int):
    """Ищет класс, все компоненты которого обратимы по модулю 𝔪."""
    tried = 0
    candidates = list(space.basis)
    for f in candidates:
        tried += 1
        if f.is_isomorphism_mod_maximal():
            return f, tried
    for _ in range(samples):
        tried += 1
        f = space.random_element(rng)
        if f.is_isomorphism_mod_maximal():
            return f, tried
    if space.dimension <= config.ISO_EXHAUSTIVE_DIM:
        grid = _grid(space.source.algebra.field, space.dimension)
        if grid is not None:
            for coefficients in grid:
                tried += 1
                f = space.element(coefficients)
                if f.is_isomorphism_mod_maximal():
                    return f, tried
    return None, tried


def iso_in_K(X: Complex, Y: Complex, seed: Optional[int] = None,
             samples: Optional[int] = None) -> IsoVerdict:
    """
    Решает X ≅ Y в K(A): минимизация, инварианты-разделители, поиск изоморфизма.

    Для минимальных комплексов f является изоморфизмом тогда и только тогда, когда
    f обратимо по модулю 𝔪 в каждом индексе; найденный f обращается покомпонентно.
    """
    if X.algebra != Y.algebra:
        raise MismatchError("Комплексы заданы над разными алгебрами")
    rng = random.Random(config.DEFAULT_SEED if seed is None else seed)
    samples = config.ISO_SAMPLES if samples is None else samples
    mx, my = minimize(X), minimize(Y)
    U, V = mx.minimal, my.minimal
    if _signature(U) != _signature(V):
        return IsoVerdict("not-isomorphic", separator={
            "invariant": "ranks",
            "left": {str(i): v for i, v in _signature(U).items()},
            "right": {str(i): v for i, v in _signature(V).items()},
        })
    left, right = _cohomology_signature(U), _cohomology_signature(V)
    if left != right:
        return IsoVerdict("not-isomorphic", separator={
            "invariant": "cohomology",
            "left": {str(i): v for i, v in left.items()},
            "right": {str(i): v for i, v in right.items()},
        })
    if U.is_zero():
        return IsoVerdict("isomorphic", ChainMap.zero(X, Y), ChainMap.zero(Y, X))
    space = hom_space_K(U, V)
    f, tried = _search_isomorphism(space, rng, samples)
    if f is None:
        logger.warning(f"Изоморфизм {X.describe()} ≅ {Y.describe()} не найден за {tried} попыток")
        return IsoVerdict("undecided", samples=tried)
    g = _component_inverse(f)
    if g is None or f.compose(g) != ChainMap.identity(V) or g.compose(f) != ChainMap.identity(U):
        raise InternalInconsistencyError("Обратимое по модулю 𝔪 отображение не обратилось",
                                         state={"map": f.to_json()})
    forward = my.inclusion.compose(f).compose(mx.projection)
    backward = mx.inclusion.compose(g).compose(my.projection)
    if mx.cancellations or my.cancellations:
        if not are_homotopic(backward.compose(forward), ChainMap.identity(X)) or \
                not are_homotopic(forward.compose(backward), ChainMap.identity(Y)):
            raise InternalInconsistencyError("Свидетель изоморфизма не проверен",
                                             state={"forward": forward.to_json()})
    return IsoVerdict("isomorphic", forward, backward, samples=tried)


def is_homotopy_isomorphism(f: ChainMap) -> bool:
    """f является изоморфизмом в K(A) ⟺ p_V∘f∘i_U обратимо по модулю 𝔪 в каждом индексе."""
    mu, mv = minimize(f.source), minimize(f.target)
    reduced = mv.projection.compose(f).compose(mu.inclusion)
    return reduced.is_isomorphism_mod_maximal()


# --- факторизации ---

@dataclass
class FactorizationVerdict:
    """Решение α∘f ≃ g (или w∘ξ ≃ g) с гомотопией-поправкой."""
    found: bool
    map: Optional[ChainMap] = None
    homotopy: Optional[Homotopy] = None
    certificate: Optional[list] = None

    def to_json(self, formatter) -> dict:
        if self.found:
            return {"found": True, "map": self.map.to_json(), "homotopy": self.homotopy.to_json()}
        return {"found": False, "certificate": [formatter(c) for c in self.certificate or []]}


def _solve_homotopy_equation(images: list[ChainMap], goal: ChainMap) -> tuple:
    """
    Ищет Σ cₖ·imagesₖ − goal = ∂σ + σ∂.

    Returns:
        tuple: (коэффициенты, σ) или (None, сертификат несовместности)
    """
    algebra = goal.algebra
    K = algebra.K
    H = hom_complex(goal.source, goal.target)
    d = _graded_degree(algebra, goal.degree)
    dim = H.kdim(0, d)
    if dim == 0:
        return [K.zero] * len(images), Homotopy(goal.source, goal.target, {}, goal.degree)
    columns = [H.components_to_vector(m.components, 0, d) for m in images]
    boundary = expand(H.d(-1), H.term(-1), H.term(0), d)
    columns += [[-v for v in col] for col in linalg.columns(boundary)]
    rhs = H.components_to_vector(goal.components, 0, d)
    if not columns:
        if linalg.is_zero_vector(rhs, K):
            return [], Homotopy(goal.source, goal.target, {}, goal.degree)
        return None, rhs
    system = linalg.from_columns(columns, dim, K)
    solution = linalg.solve(system, rhs)
    if solution is None:
        return None, linalg.left_witness(system, rhs)
    coefficients = solution[:len(images)]
    sigma_vector = solution[len(images):]
    sigma = Homotopy(goal.source, goal.target,
                     H.vector_to_components(sigma_vector, -1, d) if sigma_vector else {}, goal.degree)
    return coefficients, sigma


def _combine(maps: list[ChainMap], coefficients: Sequence, source: Complex, target: Complex,
             degree: int) -> ChainMap:
    algebra = source.algebra
    result = ChainMap.zero(source, target, degree)
    for c, m in zip(coefficients, maps):
        if not algebra.K.is_zero(c):
            result = result + m.scale(algebra.scalar(c))
    return result


def factor_through(g: ChainMap, f: ChainMap) -> FactorizationVerdict:
    """
    Ищет α: Y → Z с α∘f ≃ g, где f: X → Y, g: X → Z.
    """
    if f.source != g.source:
        raise MismatchError("Отображения имеют разные источники")
    space = hom_space_K(f.target, g.target, 0, g.degree - f.degree if f.algebra.is_graded else None)
    candidates = space.basis
    images = [alpha.compose(f) for alpha in candidates]
    coefficients, extra = _solve_homotopy_equation(images, g)
    if coefficients is None:
        return FactorizationVerdict(False, certificate=extra)
    alpha = _combine(candidates, coefficients, f.target, g.target, space.degree or 0)
    return FactorizationVerdict(True, alpha, extra)


def lift_through(g: ChainMap, w: ChainMap) -> FactorizationVerdict:
    """
    Ищет ξ: X → Y с w∘ξ ≃ g, где w: Y → Z, g: X → Z.
    """
    if w.target != g.target:
        raise MismatchError("Отображения имеют разные цели")
    space = hom_space_K(g.source, w.source, 0, g.degree - w.degree if w.algebra.is_graded else None)
    candidates = space.basis
    images = [w.compose(xi) for xi in candidates]
    coefficients, extra = _solve_homotopy_equation(images, g)
    if coefficients is None:
        return FactorizationVerdict(False, certificate=extra)
    xi = _combine(candidates, coefficients, g.source, w.source, space.degree or 0)
    return FactorizationVerdict(True, xi, extra)


def is_retraction(i: ChainMap) -> FactorizationVerdict:
    """Существует ли r: U → V с r∘i ≃ id_V для i: V → U."""
    return factor_through(ChainMap.identity(i.source), i)


def homotopy_inverse(f: ChainMap) -> ChainMap:
    """
    Гомотопически обратное к f, индуцирующему изоморфизмы когомологий.

    Raises:
        MismatchError: f не является гомотопической эквивалентностью
        InternalInconsistencyError: Найденное g не прошло проверку двух сторон
    """
    verdict = lift_through(ChainMap.identity(f.target), f)
    if not verdict.found:
        raise MismatchError("Отображение не обладает гомотопически обратным")
    g = verdict.map
    if not are_homotopic(g.compose(f), ChainMap.identity(f.source)):
        raise InternalInconsistencyError("g∘f ≄ id для найденного обратного",
                                         state={"map": f.to_json()})
    return g


def extend_null_homotopy(g: ChainMap, s: Homotopy, min_degree: int,
                         window: Optional[int] = None) -> Homotopy:
    """
    Продолжает гомотопию s, заданную на подкомплексе степеней ≥ min_degree, вниз.

    Для каждой новой образующей e степени i решается ∂ξ′ = g(e) − s̃(∂e);
    правая часть является циклом, если g = ∂s̃ + s̃∂ в степени i+1.

    Raises:
        InfeasibleLiftError: Уравнение несовместно (Hⁱ цели ≠ 0)
    """
    U, W = g.source, g.target
    algebra = g.algebra
    algebra.require_artinian("extend_null_homotopy")
    if W.kind != FREE:
        raise UnsupportedBackendError("Продолжение гомотопии реализовано для свободной цели")
    K = algebra.K
    window = config.DEFAULT_WINDOW if window is None else window
    components = {i: m for i, m in s.components.items() if i >= min_degree}
    lowest = max(U.lo, min_degree - window) if U.terms else min_degree
    for i in range(min_degree - 1, lowest - 1, -1):
        if U.rank(i) == 0:
            continue
        upper = components.get(i + 1) or MatrixOverA.zero(algebra, W.rank(i), U.rank(i + 1))
        xi = g.component(i) - upper @ U.d(i)
        target = W.term(i)
        system = expand(W.d(i - 1), W.term(i - 1), target)
        columns = {}
        for e in range(U.rank(i)):
            column = [xi.entry(r, e) for r in range(W.rank(i))]
            vector = column_to_vector(algebra, target, column)
            if linalg.is_zero_vector(vector, K):
                columns[e] = [algebra.zero()] * W.rank(i - 1)
                continue
            solution = linalg.solve(system, vector) if W.rank(i - 1) else None
            if solution is None:
                logger.error(f"Продолжение гомотопии невозможно в степени {i}")
                raise InfeasibleLiftError(f"Уравнение ∂ξ′ = ξ несовместно в степени {i}", degree=i)
            columns[e] = vector_to_column(algebra, W.term(i - 1), solution)
        entries = {
            (r, e): a for e, column in columns.items() for r, a in enumerate(column) if not a.is_zero()
        }
        components[i] = MatrixOverA(algebra, W.rank(i - 1), U.rank(i), entries)
    extended = Homotopy(U, W, components, g.degree)
    boundary = extended.boundary()
    for i in range(lowest, min_degree):
        if boundary.component(i) != g.component(i):
            raise InternalInconsistencyError(f"Продолженная гомотопия неверна в степени {i}",
                                             state={"map": g.to_json()})
    return extended


# --- алгебры эндоморфизмов ---

class EndAlgebra:
    """
    Конечномерная k-алгебра End_K(X) с таблицей умножения, радикалом и единицей.
    """

    def __init__(self, X: Complex):
        X.algebra.require_artinian("end_algebra")
        self.complex = X
        self.algebra = X.algebra
        self.K = X.algebra.K
        self.space = hom_space_K(X, X)
        self.dim = self.space.dimension
        self.basis = self.space.basis
        self.table = [
            [self.space.coordinates(a.compose(b)) for b in self.basis] for a in self.basis
        ]
        self.identity = self.space.coordinates(ChainMap.identity(X)) if self.dim else []
        self.radical = self._radical()
        logger.debug(f"End_K: dim {self.dim}, dim rad {len(self.radical)}")

    # --- арифметика ---

    def zero(self) -> list:
        return [self.K.zero] * self.dim

    def multiply(self, u: Sequence, v: Sequence) -> list:
        K = self.K
        result = self.zero()
        for a, ua in enumerate(u):
            if K.is_zero(ua):
                continue
            for b, vb in enumerate(v):
                if K.is_zero(vb):
                    continue
                coefficient = ua * vb
                for k, t in enumerate(self.table[a][b]):
                    if not K.is_zero(t):
                        result[k] += coefficient * t
        return result

    def left_matrix(self, u: Sequence):
        columns = [self.multiply(u, self._unit(b)) for b in range(self.dim)]
        return linalg.from_columns(columns, self.dim, self.K)

    def _unit(self, k: int) -> list:
        v = self.zero()
        v[k] = self.K.one
        return v

    def element(self, u: Sequence) -> ChainMap:
        return self.space.element(u)

    def is_commutative(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.dim) for b in range(a + 1, self.dim))

    def polynomial_at(self, coefficients: Sequence, u: Sequence) -> list:
        """Значение многочлена (коэффициенты от старшего) в элементе u (схема Горнера)."""
        result = self.zero()
        for c in coefficients:
            result = self.multiply(result, u)
            result = [a + c * b for a, b in zip(result, self.identity)]
        return result

    # --- радикал ---

    def _radical(self) -> list:
        if self.dim == 0:
            return []
        K = self.K
        if self.algebra.field.characteristic == 0:
            # Критерий Диксона: rad = ядро формы следа
            dok = {}
            for a in range(self.dim):
                for b in range(self.dim):
                    trace = linalg.trace(self.left_matrix(self.multiply(self._unit(a), self._unit(b))))
                    if not K.is_zero(trace):
                        dok[(a, b)] = trace
            form = linalg.from_dok(dok, self.dim, self.dim, K)
            radical = linalg.kernel(form)
        else:
            radical = self._radical_char_p()
        if not self.is_nilpotent_ideal(radical):
            raise InternalInconsistencyError("Радикал End_K(X) не является нильпотентным идеалом",
                                             state={"complex": self.complex.to_json()})
        return radical

    def _representation(self) -> list:
        """
        Матрицы точного по модулю радикала представления базиса над k.

        Для минимального X это редукция компонент по модулю 𝔪 (ядро состоит из
        классов с компонентами в 𝔪 и нильпотентно), иначе левое регулярное.
        """
        X, K = self.complex, self.K
        if not X.is_minimal():
            return [self.left_matrix(self._unit(a)) for a in range(self.dim)]
        return [
            linalg.block_diag([f.component(i).mod_maximal() for i in X.indices], K)
            for f in self.basis
        ]

    def _combine(self, matrices: list, u: Sequence):
        n = matrices[0].shape[0]
        dok: dict = {}
        for c, M in zip(u, matrices):
            if self.K.is_zero(c):
                continue
            for key, value in M.to_dok().items():
                dok[key] = dok.get(key, self.K.zero) + c * value
        return linalg.from_dok(dok, n, n, self.K)

    def _radical_char_p(self) -> list:
        """
        Радикал над GF(p): цепочка ядер обобщенных следовых функционалов
        gᵢ(a) = (Tr(âᵖ^ⁱ) mod pⁱ⁺¹) / pⁱ, где â есть целочисленный подъем матрицы a.

        I₋₁ = End, Iᵢ = {a ∈ Iᵢ₋₁ : gᵢ(ab) = 0 для всех b}; rad = I_l, l = ⌊log_p n⌋.
        Каждое gᵢ линейно на Iᵢ₋₁.
        """
        K, dim = self.K, self.dim
        p = self.algebra.field.characteristic
        matrices = self._representation()
        n = matrices[0].shape[0]
        steps = 0
        while p ** (steps + 1) <= n:
            steps += 1
        ideal = [self._unit(a) for a in range(dim)]
        for i in range(steps + 1):
            exponent, modulus = p ** i, p ** (i + 1)
            images = [self._combine(matrices, v) for v in ideal]
            dok = {}
            for b in range(dim):
                for k, image in enumerate(images):
                    product_ = image.matmul(matrices[b])
                    value = linalg.lifted_trace_of_power(product_, exponent, modulus) // exponent
                    if value % p:
                        dok[(b, k)] = K(value)
            conditions = linalg.from_dok(dok, dim, len(ideal), K)
            ideal = [
                [sum((c * v[a] for c, v in zip(coefficients, ideal)), K.zero) for a in range(dim)]
                for coefficients in linalg.kernel(conditions)
            ]
            logger.debug(f"Радикал над GF({p}): шаг {i}, dim Iᵢ = {len(ideal)}")
            if not ideal:
                break
        return ideal

    def is_nilpotent_ideal(self, vectors: list) -> bool:
        """Двусторонний идеал с I^{dim+1} = 0 относительно таблицы умножения."""
        if not vectors:
            return True
        dim, K = self.dim, self.K
        for v in vectors:
            for b in range(self.dim):
                for product_ in (self.multiply(v, self._unit(b)), self.multiply(self._unit(b), v)):
                    if not linalg.in_span(vectors, product_, dim, K):
                        return False
        power_ = list(vectors)
        for _ in range(self.dim + 1):
            power_ = [self.multiply(a, b) for a in power_ for b in vectors]
            power_ = linalg.image_basis(linalg.from_columns(power_, dim, K)) if power_ else []
            if not power_:
                return True
        return False

    def _charpoly(self, u: Sequence) -> Poly:
        coefficients = self.left_matrix(u).charpoly()
        t = Symbol("t")
        return Poly([self.K.to_sympy(c) for c in coefficients], t, domain=self.K)

    @property
    def quotient_dimension(self) -> int:
        return self.dim - len(self.radical)

    # --- идемпотенты ---

    def is_idempotent(self, e: Sequence) -> bool:
        return self.multiply(e, e) == list(e)

    def is_trivial(self, e: Sequence) -> bool:
        return linalg.is_zero_vector(e, self.K) or list(e) == list(self.identity)

    def idempotent_from(self, u: Sequence) -> Optional[list]:
        """
        Идемпотент из разложения характеристического многочлена L_u на взаимно простые множители.
        """
        poly = self._charpoly(u)
        factors = poly.factor_list()[1]
        if len(factors) < 2:
            return None
        first = factors[0][0] ** factors[0][1]
        rest = poly.exquo(first)
        s, _, gcd = first.gcdex(rest)
        if gcd.degree() != 0:
            return None
        projector = (s * first).rem(poly)
        coefficients = [self.K.from_sympy(c) for c in projector.all_coeffs()]
        e = self.polynomial_at(coefficients, u)
        if self.is_idempotent(e) and not self.is_trivial(e):
            return e
        return None

    def find_idempotent(self, rng: Optional[random.Random] = None) -> Optional[list]:
        rng = rng or random.Random(config.DEFAULT_SEED)
        field_ = self.algebra.field
        candidates = [self._unit(a) for a in range(self.dim)]
        candidates += [[field_.random_element(rng) for _ in range(self.dim)] for _ in range(8)]
        for u in candidates:
            e = self.idempotent_from(u)
            if e is not None:
                return e
        if self.dim <= config.IDEMPOTENT_EXHAUSTIVE_DIM:
            grid = _grid(field_, self.dim)
            if grid is not None:
                for coefficients in grid:
                    e = list(coefficients)
                    if not self.is_trivial(e) and self.is_idempotent(e):
                        return e
        return None

    def is_local(self) -> bool:
        """End_K(X)/rad одномерна или является телом."""
        if self.dim == 0:
            return False
        if self.quotient_dimension == 1:
            return True
        if self.find_idempotent() is not None:
            return False
        return self._quotient_without_zero_divisors()

    def _quotient_without_zero_divisors(self) -> bool:
        dim, K = self.dim, self.K
        for a in range(dim):
            if linalg.in_span(self.radical, self._unit(a), dim, K):
                continue
            for b in range(dim):
                if linalg.in_span(self.radical, self._unit(b), dim, K):
                    continue
                if linalg.in_span(self.radical, self.multiply(self._unit(a), self._unit(b)), dim, K):
                    return False
        return True

    # --- расщепление ---

    def lift_idempotent(self, e: Sequence) -> ChainMap:
        """
        Поднимает идемпотент по модулю гомотопий до цепного: ε ↦ 3ε² − 2ε³.
        Для минимального X идеал гомотопных нулю отображений нильпотентен.
        """
        epsilon = self.element(e)
        for _ in range(4 * (self.algebra.dim + 1)):
            square = epsilon.compose(epsilon)
            if square == epsilon:
                return epsilon
            epsilon = square.scale(3) - square.compose(epsilon).scale(2)
        raise InternalInconsistencyError("Подъем идемпотента не сошелся",
                                         state={"complex": self.complex.to_json()})

    def split_idempotent(self, e: Sequence) -> tuple[Complex, ChainMap, ChainMap]:
        """
        Прямое слагаемое Im(ε) с включением B и проекцией L∘ε (L∘ε∘B = id).
        """
        epsilon = self.lift_idempotent(e)
        X = self.complex
        algebra = self.algebra
        bases, lefts, terms = {}, {}, {}
        for i in X.indices:
            matrix = epsilon.component(i)
            reduced = matrix.mod_maximal()
            columns = list(linalg.rref(reduced)[1])
            if not columns:
                continue
            B = matrix.submatrix(list(range(matrix.rows)), columns)
            rows = list(linalg.rref(B.mod_maximal().transpose())[1])
            square_inverse = B.submatrix(rows, list(range(len(columns)))).inverse()
            selector = MatrixOverA(algebra, len(rows), matrix.rows,
                                   {(k, r): algebra.one() for k, r in enumerate(rows)})
            bases[i] = B
            lefts[i] = square_inverse @ selector
            module = X.term(i)
            degrees = None if module.degrees is None else tuple(module.degrees[c] for c in columns)
            terms[i] = FreeModule(len(columns), degrees, X.kind)
        diffs = {}
        for i in terms:
            if i + 1 in terms:
                diffs[i] = lefts[i + 1] @ X.d(i) @ bases[i]
        Y = Complex(algebra, terms, diffs, kind=X.kind)
        inclusion = ChainMap(Y, X, bases)
        projection = ChainMap(X, Y, {i: lefts[i] @ epsilon.component(i) for i in terms})
        if projection.compose(inclusion) != ChainMap.identity(Y):
            raise InternalInconsistencyError("Расщепление идемпотента не дало ретракцию",
                                             state={"complex": X.to_json()})
        return Y, inclusion, projection

    def to_json(self, formatter) -> dict:
        return {
            "dimension": self.dim,
            "identity": [formatter(c) for c in self.identity],
            "radical": [[formatter(c) for c in v] for v in self.radical],
            "table": [[[formatter(c) for c in cell] for cell in row] for row in self.table],
        }


def end_algebra(X: Complex) -> EndAlgebra:
    return EndAlgebra(X)


@dataclass
class IndecomposabilityVerdict:
    """verdict: "indecomposable" | "decomposable" | "undecided"."""
    verdict: str
    idempotent: Optional[list] = None
    end_dimension: int = 0
    radical_dimension: int = 0

    @property
    def indecomposable(self) -> bool:
        return self.verdict == "indecomposable"

    def to_json(self, formatter) -> dict:
        data = {"verdict": self.verdict, "end_dimension": self.end_dimension,
                "radical_dimension": self.radical_dimension}
        if self.idempotent is not None:
            data["idempotent"] = [formatter(c) for c in self.idempotent]
        return data


def is_indecomposable(X: Complex) -> IndecomposabilityVerdict:
    """Неразложимость ⟺ End_K(X) локальна."""
    X.algebra.require_artinian("is_indecomposable")
    minimal = minimize(X).minimal
    if minimal.is_zero():
        return IndecomposabilityVerdict("decomposable")
    E = EndAlgebra(minimal)
    local = E.is_local()
    base = dict(end_dimension=E.dim, radical_dimension=len(E.radical))
    if local is True:
        return IndecomposabilityVerdict("indecomposable", **base)
    e = E.find_idempotent()
    if e is not None:
        return IndecomposabilityVerdict("decomposable", idempotent=e, **base)
    logger.warning(f"Неразложимость {X.describe()} не решена")
    return IndecomposabilityVerdict("undecided", **base)


def decompose(X: Complex) -> list[Complex]:
    """
    Рекурсивно расщепляет X по найденным идемпотентам.

    Returns:
        list[Complex]: Минимальные слагаемые (неразложимые, если решение найдено)
    """
    X.algebra.require_artinian("decompose")
    minimal = minimize(X).minimal
    if minimal.is_zero():
        return []
    E = EndAlgebra(minimal)
    if E.is_local() is True:
        return [minimal]
    e = E.find_idempotent()
    if e is None:
        return [minimal]
    complement = [a - b for a, b in zip(E.identity, e)]
    first, _, _ = E.split_idempotent(e)
    second, _, _ = E.split_idempotent(complement)
    logger.info(f"Расщепление {minimal.describe()} → {first.describe()} ⊕ {second.describe()}")
    return decompose(first) + decompose(second)


def require_free(X: Complex, operation: str) -> None:
    if X.kind != "free":
        raise UnsupportedBackendError(f"Операция '{operation}' требует свободный комплекс")
