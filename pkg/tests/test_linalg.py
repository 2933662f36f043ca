from sympy.polys.domains import GF, QQ

from homforge import linalg


def _matrix(rows, K=QQ):
    dok = {(i, j): K(v) for i, row in enumerate(rows) for j, v in enumerate(row) if v}
    return linalg.from_dok(dok, len(rows), len(rows[0]) if rows else 0, K)


def test_rank_and_kernel():
    M = _matrix([[1, 2], [2, 4]])
    assert linalg.rank(M) == 1
    kernel = linalg.kernel(M)
    assert len(kernel) == 1
    assert linalg.is_zero_vector(linalg.matvec(M, kernel[0]), QQ)


def test_kernel_of_empty_shapes():
    assert linalg.kernel(linalg.zeros(0, 3, QQ)) == linalg.columns(linalg.identity(3, QQ))
    assert linalg.kernel(linalg.zeros(2, 0, QQ)) == []


def test_solve_consistent_and_inconsistent():
    M = _matrix([[1, 1], [0, 1]])
    x = linalg.solve(M, [QQ(3), QQ(1)])
    assert x == [QQ(2), QQ(1)]
    singular = _matrix([[1, 0], [0, 0]])
    b = [QQ(1), QQ(1)]
    assert linalg.solve(singular, b) is None
    y = linalg.left_witness(singular, b)
    assert y is not None
    assert sum(a * c for a, c in zip(y, b)) != 0


def test_solve_degenerate_shapes():
    assert linalg.solve(linalg.zeros(0, 2, QQ), []) == [QQ(0), QQ(0)]
    assert linalg.solve(linalg.zeros(2, 0, QQ), [QQ(0), QQ(0)]) == []
    assert linalg.solve(linalg.zeros(2, 0, QQ), [QQ(1), QQ(0)]) is None


def test_span_and_coordinates():
    e1, e2 = [QQ(1), QQ(0)], [QQ(0), QQ(1)]
    v = [QQ(3), QQ(-2)]
    assert linalg.in_span([e1, e2], v, 2, QQ)
    assert not linalg.in_span([e1], v, 2, QQ)
    assert linalg.coordinates([e1, e2], v, 2, QQ) == [QQ(3), QQ(-2)]
    assert linalg.span_dimension([e1, e1, v], 2, QQ) == 2


def test_extend_basis_skips_dependent_candidates():
    e1, e2 = [QQ(1), QQ(0)], [QQ(0), QQ(1)]
    assert linalg.extend_basis([e1], [e1, e2], 2, QQ) == [1]


def test_inverse_trace_power_over_finite_field():
    K = GF(3)
    M = _matrix([[1, 1], [0, 1]], K)
    inverse = linalg.inverse(M)
    assert inverse is not None
    assert inverse.matmul(M) == linalg.identity(2, K)
    assert linalg.power(M, 3) == linalg.identity(2, K)
    assert linalg.trace(linalg.identity(3, K)) == K(0)
    assert linalg.inverse(_matrix([[1, 1], [1, 1]], K)) is None
    assert not linalg.is_invertible(_matrix([[1, 1], [1, 1]], K))


def test_lifted_trace_of_power():
    K = GF(2)
    identity = _matrix([[1, 0], [0, 1]], K)
    assert linalg.lifted_trace_of_power(identity, 1, 2) == 0
    assert linalg.lifted_trace_of_power(identity, 2, 4) == 2
    jordan = _matrix([[1, 1], [0, 1]], K)
    assert linalg.lifted_trace_of_power(jordan, 4, 8) == 2
