"""Smith normal form over the integers, with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass


Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


@dataclass(frozen=True)
class SmithForm:
    """``left @ matrix @ right == diagonal`` with ``left``/``right`` unimodular."""

    diagonal: Matrix
    left: Matrix
    right: Matrix
    invariants: tuple[int, ...]  # nonzero diagonal entries d1 | d2 | ...

    @property
    def rank(self) -> int:
        return len(self.invariants)


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, src, dst, k):
    # row[dst] += k * row[src]
    if k:
        rs, rd = m[src], m[dst]
        for c in range(len(rd)):
            rd[c] += k * rs[c]


def _add_col(m, src, dst, k):
    if k:
        for row in m:
            row[dst] += k * row[src]


def smith_normal_form(matrix: Matrix) -> SmithForm:
    """Diagonalise an integer matrix by unimodular row and column operations.

    Works on any rectangular shape (including empty) with exact integers.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(map(int, r)) for r in matrix]
    if any(len(r) != cols for r in a):
        raise ValueError("ragged matrix")
    u = identity(rows)
    v = identity(cols)

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        _swap_rows(a, t, i)
        _swap_rows(u, t, i)
        _swap_cols(a, t, j)
        _swap_cols(v, t, j)

        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    _add_row(a, t, i, -q)
                    _add_row(u, t, i, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    _add_col(a, t, j, -q)
                    _add_col(v, t, j, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived; move it up and retry
                best = None
                for i in range(t, rows):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                        best = i
                cbest = None
                for j in range(t, cols):
                    if a[t][j] and (cbest is None or abs(a[t][j]) < abs(a[t][cbest])):
                        cbest = j
                if cbest is None or (best is not None and abs(a[best][t]) <= abs(a[t][cbest])):
                    _swap_rows(a, t, best)
                    _swap_rows(u, t, best)
                else:
                    _swap_cols(a, t, cbest)
                    _swap_cols(v, t, cbest)
                continue
            # row and column cleared; enforce divisibility of the trailing block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _add_row(a, bad, t, 1)
            _add_row(u, bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    invariants = tuple(a[i][i] for i in range(min(rows, cols)) if a[i][i])
    return SmithForm(diagonal=a, left=u, right=v, invariants=invariants)


def invariant_factors(matrix: Matrix) -> tuple[int, ...]:
    return smith_normal_form(matrix).invariants


def determinant(m: Matrix) -> int:
    """Fraction-free Bareiss determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
