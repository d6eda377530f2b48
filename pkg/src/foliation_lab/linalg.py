"""Exact dense linear algebra over a field tower.

Matrices are lists of lists of FieldElement.  Sizes are small (desk scale),
so plain Gaussian elimination with exact division is adequate.
"""

from __future__ import annotations

from .fields import FieldDescriptor, FieldElement


def _echelon(rows, ncols):
    """Row-reduce in place; return list of pivot column indices."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(matrix, desc: FieldDescriptor) -> int:
    if not matrix:
        return 0
    rows = [list(row) for row in matrix]
    return len(_echelon(rows, len(rows[0])))


def nullspace(matrix, ncols: int, desc: FieldDescriptor):
    """Basis of the right null space of `matrix` (ncols unknowns)."""
    zero, one = desc.zero(), desc.one()
    if not matrix:
        basis = []
        for j in range(ncols):
            v = [zero] * ncols
            v[j] = one
            basis.append(v)
        return basis
    rows = [list(row) for row in matrix]
    pivots = _echelon(rows, ncols)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(v)
    return basis


def solve(matrix, rhs, desc: FieldDescriptor):
    """One solution of matrix * x = rhs, or None when inconsistent."""
    n = len(matrix)
    if n == 0:
        return [] if all(b.is_zero() for b in rhs) else None
    ncols = len(matrix[0])
    rows = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    pivots = _echelon(rows, ncols)
    for r in range(len(pivots), n):
        if not rows[r][ncols].is_zero():
            return None
    x = [desc.zero()] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncols]
    return x


def det(matrix, desc: FieldDescriptor) -> FieldElement:
    n = len(matrix)
    if n == 0:
        return desc.one()
    rows = [list(row) for row in matrix]
    sign = 1
    result = desc.one()
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            return desc.zero()
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        result = result * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    if sign < 0:
        result = -result
    return result
