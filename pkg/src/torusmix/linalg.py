"""Small exact linear algebra helpers over the rationals.

Used by the deciders to solve coefficient-matching systems: a frequency
identity holds for infinitely many n exactly when the stacked coefficient
matrix has a nontrivial rational kernel.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

__all__ = ["kernel_basis", "primitive_integer_vector", "smallest_kernel_witness"]


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [row[:] for row in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel_basis(rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Canonical rational kernel basis of the given row system.

    Each basis vector has a 1 in one free column and 0 in the others, so
    the basis is deterministic for a fixed row order.
    """
    frac_rows = [[Fraction(x) for x in row] for row in rows if any(row)]
    if not frac_rows:
        return [
            tuple(Fraction(1 if i == j else 0) for i in range(ncols))
            for j in range(ncols)
        ]
    rref, pivots = _rref(frac_rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(rref, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return basis


def primitive_integer_vector(vec) -> tuple[int, ...]:
    """Scale a rational vector to primitive integers, first nonzero > 0."""
    fracs = [Fraction(x) for x in vec]
    if all(x == 0 for x in fracs):
        raise ValueError("zero vector")
    denom = lcm(*(f.denominator for f in fracs))
    ints = [int(f * denom) for f in fracs]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def smallest_kernel_witness(rows, ncols: int) -> tuple[int, ...] | None:
    """Lexicographically smallest primitive kernel vector, or None.

    Ties among the canonical kernel basis vectors are broken by comparing
    their primitive integer forms lexicographically.
    """
    basis = kernel_basis(rows, ncols)
    if not basis:
        return None
    candidates = sorted(primitive_integer_vector(v) for v in basis)
    return candidates[0]
