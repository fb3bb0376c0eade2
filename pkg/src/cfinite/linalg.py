"""Exact Gauss-Jordan elimination over any field whose elements compare equal to 0."""

from __future__ import annotations


def solve_linear(matrix, rhs, zero=0):
    """Solve ``matrix @ x = rhs`` exactly.

    The system may be over- or under-determined. Returns one solution (free
    unknowns set to ``zero``) or ``None`` when the system is inconsistent.
    """
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    if not rows:
        return []
    ncols = len(rows[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    x = [zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x

