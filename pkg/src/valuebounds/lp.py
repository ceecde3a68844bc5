"""Exact two-phase simplex over ``fractions.Fraction`` with Bland's rule."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    prow = T[row]
    for i, r in enumerate(T):
        if i != row and r[col]:
            f = r[col]
            T[i] = [a - f * b for a, b in zip(r, prow)]
    basis[row] = col


def _optimize(T, basis, cost, ncols) -> str:
    """Minimize ``cost`` over the tableau, entering only columns < ncols."""
    while True:
        cb = [cost[j] for j in basis]
        entering = None
        for j in range(ncols):
            if j in basis:
                continue
            reduced = cost[j] - sum(c * r[j] for c, r in zip(cb, T) if c)
            if reduced < 0:
                entering = j  # Bland: lowest index
                break
        if entering is None:
            return OPTIMAL
        leave = None
        best = None
        for i, r in enumerate(T):
            if r[entering] > 0:
                ratio = r[-1] / r[entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return UNBOUNDED
        _pivot(T, basis, leave, entering)


def simplex(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimize c.x subject to A x = b, x >= 0, in exact arithmetic."""
    n = len(c)
    rows = []
    for row, rhs in zip(A, b):
        row = [Fraction(v) for v in row]
        rhs = Fraction(rhs)
        if len(row) != n:
            raise ValueError("constraint row length does not match cost vector")
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        rows.append((row, rhs))
    m = len(rows)
    T = [row + [Fraction(int(i == k)) for k in range(m)] + [rhs]
         for i, (row, rhs) in enumerate(rows)]
    basis = [n + i for i in range(m)]

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    _optimize(T, basis, phase1, n + m)
    if sum(T[i][-1] for i, j in enumerate(basis) if j >= n) > 0:
        return LPResult(INFEASIBLE)

    # drive remaining (zero-level) artificials out; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i], basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1

    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    if _optimize(T, basis, cost, n) == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult(OPTIMAL, sum(cv * xv for cv, xv in zip(cost, x)), tuple(x))
