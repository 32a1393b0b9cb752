import random
from fractions import Fraction
from itertools import permutations

from tropfix.linalg import (
    RowBasis,
    det_fraction,
    det_int,
    mat_inv_fraction,
    mat_mul,
    rational_rank,
    smith_normal_form,
    solve_columns,
)


def det_by_permutations(matrix):
    n = len(matrix)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= matrix[i][perm[i]]
        total += term
    return total


def test_det_int_matches_permutation_expansion():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(1, 4)
        a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert det_int(a) == det_by_permutations(a)
        assert det_fraction(a) == det_by_permutations(a)


def test_solve_columns_roundtrip():
    rng = random.Random(2)
    for _ in range(50):
        m, k = rng.randint(1, 5), rng.randint(1, 4)
        cols = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(k)]
        coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(k)]
        target = [sum(c * col[i] for c, col in zip(coeffs, cols)) for i in range(m)]
        solved, residual = solve_columns(cols, target)
        assert solved is not None and not any(residual)
        rebuilt = [sum(c * col[i] for c, col in zip(solved, cols)) for i in range(m)]
        assert rebuilt == target


def test_solve_columns_detects_infeasible():
    coeffs, residual = solve_columns([[1, 0]], [0, 1])
    assert coeffs is None and any(residual)


def test_rank_and_row_basis():
    assert rational_rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rational_rank([[2, 4], [1, 2]]) == 1
    basis = RowBasis()
    assert basis.add([1, 2, 3])
    assert not basis.add([2, 4, 6])
    assert basis.add([0, 1, 0])
    assert basis.rank == 2


def test_mat_inv():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = mat_inv_fraction(a)
    assert mat_mul(a, inv) == [[1, 0], [0, 1]]


def test_smith_normal_form_properties():
    rng = random.Random(3)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        d, u, v = smith_normal_form(a)
        assert mat_mul(mat_mul(u, a), v) == d
        assert abs(det_int(u)) == 1
        assert abs(det_int(v)) == 1
        diag = [d[i][i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0
        assert all(x >= 0 for x in diag)
        for x, y in zip(diag, diag[1:]):
            if x:
                assert y % x == 0
            else:
                assert y == 0
