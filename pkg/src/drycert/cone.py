"""Exact rational cone primitives: membership via phase-one simplex, and inertia
of symmetric forms via congruence diagonalization.

Everything here works over :class:`fractions.Fraction`; no floating point.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction


def in_cone(generators: Sequence[Sequence], target: Sequence) -> bool:
    """Return True iff ``target`` is a nonnegative combination of ``generators``.

    Solves the feasibility problem ``G @ lam = target, lam >= 0`` exactly with a
    phase-one simplex (Bland's rule, so it cannot cycle). The zero vector is
    always in the cone, including the cone spanned by no generators.
    """
    dim = len(target)
    b = [Fraction(v) for v in target]
    if not any(b):
        return True
    gens = [[Fraction(v) for v in g] for g in generators]
    if any(len(g) != dim for g in gens):
        raise ValueError("generator and target dimensions differ")
    if not gens:
        return False

    ncols = len(gens)
    # rows: one per coordinate; columns: generators then one artificial per row
    rows = []
    for i in range(dim):
        sign = -1 if b[i] < 0 else 1
        row = [sign * g[i] for g in gens]
        row += [Fraction(int(i == j)) for j in range(dim)]
        row.append(sign * b[i])
        rows.append(row)
    basis = [ncols + i for i in range(dim)]
    width = ncols + dim

    # phase-one objective: minimize the sum of artificials, as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(ncols):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        pivot_row = None
        best = None
        for i, row in enumerate(rows):
            a = row[entering]
            if a > 0:
                ratio = row[width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pivot_row]):
                    best, pivot_row = ratio, i
        if pivot_row is None:
            # unbounded direction in phase one cannot occur (objective >= 0)
            raise ArithmeticError("phase-one simplex is unbounded")
        prow = rows[pivot_row]
        piv = prow[entering]
        if piv != 1:
            prow[:] = [v / piv for v in prow]
        for i, row in enumerate(rows):
            if i != pivot_row and row[entering]:
                f = row[entering]
                row[:] = [v - f * p for v, p in zip(row, prow)]
        if cost[entering]:
            f = cost[entering]
            cost[:] = [v - f * p for v, p in zip(cost, prow)]
        basis[pivot_row] = entering

    return cost[width] == 0


def inertia(matrix: Sequence[Sequence]) -> tuple[int, int, int]:
    """Return ``(positive, negative, zero)`` counts for a symmetric matrix.

    Lagrange reduction by congruences; a zero diagonal with a nonzero
    off-diagonal entry is repaired by adding one basis vector to another.
    """
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")

    pos = neg = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is None:
            hit = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if hit is None:
                break
            i, j = hit
            # e_i -> e_i + e_j gives diagonal entry 2*a_ij (a_ii = a_jj = 0)
            for r in range(n):
                a[r][i] += a[r][j]
            for c in range(n):
                a[i][c] += a[j][c]
            k = i
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = [r for r in range(n) if r != k]
        a = [[a[r][c] - a[r][k] * a[k][c] / p for c in rest] for r in rest]
    return pos, neg, len(matrix) - pos - neg
