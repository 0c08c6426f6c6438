"""Dense exact linear algebra over a coefficient field.

Matrices are lists of row lists of field elements. Everything is plain
Gaussian elimination with exact arithmetic; deterministic pivoting
(first nonzero entry in column order).
"""

from __future__ import annotations


def row_echelon(rows: list[list], field) -> tuple[int, list[int]]:
    """Reduce `rows` in place to row echelon form.

    Returns (rank, pivot column indices).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][col] != field.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.inv(rows[r][col])
        rows[r] = [field.mul(v, inv) for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != field.zero:
                factor = rows[i][col]
                rows[i] = [
                    field.sub(v, field.mul(factor, w))
                    for v, w in zip(rows[i], rows[r])
                ]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return r, pivots


def matrix_rank(rows: list[list], field) -> int:
    if not rows or not rows[0]:
        return 0
    work = [list(row) for row in rows]
    rank, _ = row_echelon(work, field)
    return rank


def solve_linear(a: list[list], b: list, field) -> list | None:
    """One solution x of A x = b, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if nrows == 0:
        return [field.zero] * ncols
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    rank, pivots = row_echelon(aug, field)
    for i in range(rank, nrows):
        if aug[i][ncols] != field.zero:
            return None
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for i, col in enumerate(pivots):
        x[col] = aug[i][ncols]
    return x
