"""Tuple-based exact vectors and matrices.

Everything here is immutable-in, immutable-out; matrices are tuples of
row tuples. Gaussian elimination uses first-nonzero pivoting, which is
all exact arithmetic needs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .ratio import ONE, ZERO, Rational, as_ratio


def qvec(values: Iterable) -> tuple[Rational, ...]:
    return tuple(as_ratio(v) for v in values)


def qmat(rows: Iterable[Iterable]) -> tuple[tuple[Rational, ...], ...]:
    return tuple(qvec(row) for row in rows)


def vzero(n: int) -> tuple[Rational, ...]:
    return (ZERO,) * n


def dot(a: Sequence, b: Sequence) -> Rational:
    total = ZERO
    for x, y in zip(a, b, strict=True):
        total += x * y
    return total


def vadd(a: Sequence, b: Sequence) -> tuple[Rational, ...]:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Sequence, b: Sequence) -> tuple[Rational, ...]:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(factor, a: Sequence) -> tuple[Rational, ...]:
    f = as_ratio(factor)
    return tuple(f * x for x in a)


def outer(a: Sequence, b: Sequence) -> tuple[tuple[Rational, ...], ...]:
    return tuple(tuple(x * y for y in b) for x in a)


def transpose(matrix: Sequence[Sequence]) -> tuple[tuple[Rational, ...], ...]:
    return tuple(zip(*matrix, strict=True))


def row_times_matrix(row: Sequence, matrix: Sequence[Sequence]) -> tuple[Rational, ...]:
    """row (length m) times an m-by-n matrix, as a length-n tuple."""
    return tuple(dot(row, col) for col in zip(*matrix, strict=True))


def matrix_times_col(matrix: Sequence[Sequence], col: Sequence) -> tuple[Rational, ...]:
    return tuple(dot(row, col) for row in matrix)


def rank(rows: Sequence[Sequence]) -> int:
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = ONE / work[r][col]
        work[r] = [x * inv for x in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], prow)]
        r += 1
        if r == len(work):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Rank of the difference vectors to the first point (0 for a single point)."""
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([vsub(p, base) for p in points[1:]])


def solve_unique(matrix: Sequence[Sequence], rhs: Sequence) -> tuple[Rational, ...] | None:
    """Solve matrix . x = rhs; None unless the solution exists and is unique."""
    if not matrix:
        return None
    n = len(matrix[0])
    aug = [list(row) + [r] for row, r in zip(matrix, rhs, strict=True)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = ONE / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        prow = aug[r]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], prow)]
        pivot_cols.append(col)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return None  # inconsistent
    if r < n:
        return None  # underdetermined
    solution = [ZERO] * n
    for i, col in enumerate(pivot_cols):
        solution[col] = aug[i][n]
    return tuple(solution)


def invert(matrix: Sequence[Sequence]) -> tuple[tuple[Rational, ...], ...] | None:
    """Inverse of a square matrix, or None if singular."""
    n = len(matrix)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)]
           for i, row in enumerate(matrix)]
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if aug[i][col] != 0), None)
        if pivot is None:
            return None
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = ONE / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        prow = aug[r]
        for i in range(n):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], prow)]
        r += 1
    return tuple(tuple(row[n:]) for row in aug)
