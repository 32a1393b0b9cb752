"""Exact linear algebra over the rationals and the integers.

Everything runs on Python ints and fractions.Fraction; no floats anywhere.
Dimensions in this package rarely exceed a dozen, so plain Gaussian
elimination and textbook Smith reduction are the right tools.
"""

from __future__ import annotations

from fractions import Fraction


def solve_columns(columns, target):
    """Solve sum_j c_j * columns[j] = target exactly.

    Returns (coeffs, residual).  When the system is solvable, coeffs is a
    list of Fractions and residual is the zero vector; otherwise coeffs is
    None and residual is a nonzero vector certifying infeasibility (the
    reduced target on the pivot-free rows).
    """
    m = len(target)
    k = len(columns)
    rows = [
        [Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
        for i in range(m)
    ]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        pivots.append((r, c))
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / piv[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], piv)]
        r += 1
        if r == m:
            break
    pivot_rows = {i for i, _ in pivots}
    residual = [
        rows[i][k] if i not in pivot_rows else Fraction(0) for i in range(m)
    ]
    if any(residual):
        return None, residual
    coeffs = [Fraction(0)] * k
    for i, c in pivots:
        coeffs[c] = rows[i][k] / rows[i][c]
    return coeffs, [Fraction(0)] * m


class RowBasis:
    """Incrementally built row-echelon basis over the rationals."""

    def __init__(self):
        self.rows = []  # list of (pivot index, reduced row)

    def _reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for piv, row in self.rows:
            if v[piv] != 0:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec):
        """Insert vec; return True iff it enlarged the span."""
        v = self._reduce(vec)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        self.rows.append((p, v))
        self.rows.sort(key=lambda pr: pr[0])
        return True

    @property
    def rank(self):
        return len(self.rows)


def rational_rank(rows):
    basis = RowBasis()
    for row in rows:
        basis.add(row)
    return basis.rank


def det_int(matrix):
    """Determinant of an integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def det_fraction(matrix):
    """Determinant of a rational matrix by Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)]
        for i in range(n)
    ]


def mat_vec(a, x):
    return [sum(row[j] * x[j] for j in range(len(x))) for row in a]


def mat_inv_fraction(matrix):
    """Exact inverse of a rational matrix; raises on singular input."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        a[k], a[p] = a[p], a[k]
        inv[k], inv[p] = inv[p], inv[k]
        f = 1 / a[k][k]
        a[k] = [x * f for x in a[k]]
        inv[k] = [x * f for x in inv[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                g = a[i][k]
                a[i] = [x - g * y for x, y in zip(a[i], a[k])]
                inv[i] = [x - g * y for x, y in zip(inv[i], inv[k])]
    return inv


def identity_int(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Smith normal form over the integers.

    Returns (d, u, v) with u * matrix * v = d, u and v unimodular, the
    diagonal of d nonnegative and each entry dividing the next.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity_int(m)
    v = identity_int(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            a[r][i] -= q * a[r][j]
        for r in range(n):
            v[r][i] -= q * v[r][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def diagonalize_from(t0):
        t = t0
        while t < min(m, n):
            cand = [(i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not cand:
                break
            i0, j0 = min(cand, key=lambda ij: abs(a[ij[0]][ij[1]]))
            if i0 != t:
                row_swap(t, i0)
            if j0 != t:
                col_swap(t, j0)
            while True:
                for i in range(t + 1, m):
                    if a[i][t]:
                        row_op(i, t, a[i][t] // a[t][t])
                        if a[i][t]:
                            row_swap(t, i)
                for j in range(t + 1, n):
                    if a[t][j]:
                        col_op(j, t, a[t][j] // a[t][t])
                        if a[t][j]:
                            col_swap(t, j)
                if all(a[i][t] == 0 for i in range(t + 1, m)) and all(
                    a[t][j] == 0 for j in range(t + 1, n)
                ):
                    break
            t += 1
        return t

    rank = diagonalize_from(0)
    # enforce the divisibility chain d_t | d_{t+1}
    changed = True
    while changed:
        changed = False
        for t in range(rank - 1):
            if a[t + 1][t + 1] % a[t][t] != 0:
                row_op(t, t + 1, -1)  # pulls d_{t+1} into row t
                diagonalize_from(t)
                changed = True
                break
    for t in range(rank):
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v
