"""
Точная линейная алгебра над полем вычетов k.

Тонкая обертка над sympy DomainMatrix: ранги, ядра, решения систем,
дополнение базиса. Векторы представлены списками элементов домена.
"""

import logging
from typing import Optional, Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

logger = logging.getLogger(__name__)

Vector = list


def zeros(rows: int, cols: int, K) -> DomainMatrix:
    return DomainMatrix.zeros((rows, cols), K)


def identity(n: int, K) -> DomainMatrix:
    if n == 0:
        return zeros(0, 0, K)
    return DomainMatrix.eye(n, K)


def from_dok(dok: dict, rows: int, cols: int, K) -> DomainMatrix:
    clean = {key: value for key, value in dok.items() if not K.is_zero(value)}
    return DomainMatrix.from_dok(clean, (rows, cols), K)


def from_columns(columns: Sequence[Vector], dim: int, K) -> DomainMatrix:
    """
    Собирает матрицу dim × len(columns) из векторов-столбцов.
    """
    dok = {}
    for j, vector in enumerate(columns):
        for i, value in enumerate(vector):
            if not K.is_zero(value):
                dok[(i, j)] = value
    return DomainMatrix.from_dok(dok, (dim, len(columns)), K)


def columns(M: DomainMatrix) -> list[Vector]:
    rows, cols = M.shape
    K = M.domain
    result = [[K.zero] * rows for _ in range(cols)]
    for (i, j), value in M.to_dok().items():
        result[j][i] = value
    return result


def matvec(M: DomainMatrix, v: Vector) -> Vector:
    rows, _ = M.shape
    K = M.domain
    result = [K.zero] * rows
    for (i, j), value in M.to_dok().items():
        if not K.is_zero(v[j]):
            result[i] += value * v[j]
    return result


def is_zero_vector(v: Vector, K) -> bool:
    return all(K.is_zero(value) for value in v)


def hstack(blocks: Sequence[DomainMatrix], rows: int, K) -> DomainMatrix:
    dok = {}
    offset = 0
    for block in blocks:
        for (i, j), value in block.to_dok().items():
            dok[(i, j + offset)] = value
        offset += block.shape[1]
    return DomainMatrix.from_dok(dok, (rows, offset), K)


def vstack(blocks: Sequence[DomainMatrix], cols: int, K) -> DomainMatrix:
    dok = {}
    offset = 0
    for block in blocks:
        for (i, j), value in block.to_dok().items():
            dok[(i + offset, j)] = value
        offset += block.shape[0]
    return DomainMatrix.from_dok(dok, (offset, cols), K)


def block_diag(blocks: Sequence[DomainMatrix], K) -> DomainMatrix:
    dok = {}
    row_offset = col_offset = 0
    for block in blocks:
        for (i, j), value in block.to_dok().items():
            dok[(i + row_offset, j + col_offset)] = value
        row_offset += block.shape[0]
        col_offset += block.shape[1]
    return DomainMatrix.from_dok(dok, (row_offset, col_offset), K)


def rref(M: DomainMatrix) -> tuple[DomainMatrix, tuple]:
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return M, ()
    return M.rref()


def rank(M: DomainMatrix) -> int:
    return len(rref(M)[1])


def kernel(M: DomainMatrix) -> list[Vector]:
    """
    Базис ядра матрицы.

    Args:
        M: Матрица m × n

    Returns:
        list[Vector]: Векторы длины n, образующие базис ядра
    """
    rows, cols = M.shape
    K = M.domain
    if cols == 0:
        return []
    if rows == 0:
        return columns(identity(cols, K))
    reduced, pivots = M.rref()
    null = reduced.nullspace_from_rref(pivots)
    return [list(row) for row in null.to_list()]


def image_basis(M: DomainMatrix) -> list[Vector]:
    """Линейно независимые столбцы, порождающие образ (по ведущим столбцам)."""
    _, pivots = rref(M)
    all_columns = columns(M)
    return [all_columns[j] for j in pivots]


def span_dimension(vectors: Sequence[Vector], dim: int, K) -> int:
    if not vectors:
        return 0
    return rank(from_columns(vectors, dim, K))


def solve(M: DomainMatrix, b: Vector) -> Optional[Vector]:
    """
    Находит частное решение системы M x = b.

    Returns:
        Optional[Vector]: Решение или None, если система несовместна
    """
    rows, cols = M.shape
    K = M.domain
    if rows == 0:
        return [K.zero] * cols
    if cols == 0:
        return [] if is_zero_vector(b, K) else None
    augmented = hstack([M, from_columns([b], rows, K)], rows, K)
    reduced, pivots = augmented.rref()
    if cols in pivots:
        return None
    dok = reduced.to_dok()
    x = [K.zero] * cols
    for r, c in enumerate(pivots):
        x[c] = dok.get((r, cols), K.zero)
    return x


def left_witness(M: DomainMatrix, b: Vector) -> Optional[Vector]:
    """
    Сертификат несовместности M x = b: вектор y с yᵀM = 0 и y·b ≠ 0.
    """
    K = M.domain
    for y in kernel(M.transpose()):
        total = K.zero
        for yi, bi in zip(y, b):
            total += yi * bi
        if not K.is_zero(total):
            return y
    return None


def extend_basis(base: Sequence[Vector], candidates: Sequence[Vector], dim: int, K) -> list[int]:
    """
    Выбирает кандидатов, дополняющих линейную оболочку base.

    Returns:
        list[int]: Индексы кандидатов, линейно независимых по модулю base
            и предыдущих выбранных
    """
    if dim == 0 or not candidates:
        return []
    _, pivots = rref(from_columns(list(base) + list(candidates), dim, K))
    offset = len(base)
    return [p - offset for p in pivots if p >= offset]


def in_span(vectors: Sequence[Vector], v: Vector, dim: int, K) -> bool:
    if is_zero_vector(v, K):
        return True
    if not vectors:
        return False
    return solve(from_columns(vectors, dim, K), v) is not None


def coordinates(basis: Sequence[Vector], v: Vector, dim: int, K) -> Optional[Vector]:
    if not basis:
        return [] if is_zero_vector(v, K) else None
    return solve(from_columns(basis, dim, K), v)


def inverse(M: DomainMatrix) -> Optional[DomainMatrix]:
    rows, cols = M.shape
    if rows != cols:
        return None
    if rows == 0:
        return M
    try:
        return M.inv()
    except DMNonInvertibleMatrixError:
        return None


def trace(M: DomainMatrix):
    K = M.domain
    total = K.zero
    for (i, j), value in M.to_dok().items():
        if i == j:
            total += value
    return total


def is_invertible(M: DomainMatrix) -> bool:
    rows, cols = M.shape
    return rows == cols and rank(M) == rows


def power(M: DomainMatrix, exponent: int) -> DomainMatrix:
    result = identity(M.shape[0], M.domain)
    base = M
    while exponent > 0:
        if exponent & 1:
            result = result.matmul(base) if result.shape[0] else result
        base = base.matmul(base) if base.shape[0] else base
        exponent >>= 1
    return result


def lifted_trace_of_power(M: DomainMatrix, exponent: int, modulus: int) -> int:
    """
    Tr(M̂^exponent) mod modulus для подъема M̂ матрицы над GF(p) в целые числа [0, p).
    """
    n = M.shape[0]
    p = M.domain.characteristic()

    def reduce(rows: list) -> DomainMatrix:
        return DomainMatrix([[ZZ(int(value) % modulus) for value in row] for row in rows], (n, n), ZZ)

    base = reduce([[int(value) % p for value in row] for row in M.to_list()])
    result = reduce([[int(i == j) for j in range(n)] for i in range(n)])
    while exponent > 0:
        if exponent & 1:
            result = reduce(result.matmul(base).to_list())
        base = reduce(base.matmul(base).to_list())
        exponent >>= 1
    return sum(int(result.to_list()[i][i]) for i in range(n)) % modulus


def to_json(M: DomainMatrix, formatter) -> list[list[str]]:
    return [[formatter(value) for value in row] for row in M.to_list()]
