"""Newton polytopes, their gauge function, and the dilation invariant mu.

``gauge(P, v)`` is the least ``k >= 0`` with ``v`` in ``k * P``.  Because
``P`` is the convex hull of the generators and the origin, this is the LP

    min sum(lam)  s.t.  sum_j lam_j V_j = v,  lam >= 0

over all generators, so no hull extraction is needed.  ``mu(P)`` is the least
gauge over lattice points with all coordinates positive.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, NamedTuple, Optional, Sequence, Union

from .errors import BudgetExceeded
from .lp import INFEASIBLE, simplex
from .poly import MultiPoly, PolyVector, support

INF = math.inf
Rational = Union[Fraction, float]  # float only ever holds INF

DEFAULT_CANDIDATE_BUDGET = 200_000


@dataclass(frozen=True)
class LatticePolytope:
    """conv(generators + origin) for lattice points in the nonnegative orthant."""

    n: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(sorted({tuple(int(c) for c in g) for g in self.generators}))
        if not gens:
            raise ValueError("a lattice polytope needs at least one generator")
        for g in gens:
            if len(g) != self.n or any(c < 0 for c in g):
                raise ValueError(f"generator {g} is not in Z^{self.n}_>=0")
        object.__setattr__(self, "generators", gens)

    @property
    def nonzero(self) -> tuple:
        return tuple(g for g in self.generators if any(g))

    @property
    def degree(self) -> int:
        """Max coordinate sum; the polytope lies in {x >= 0 : sum x <= degree}."""
        return max(sum(g) for g in self.generators)

    def missing_coordinates(self) -> list[int]:
        return [i for i in range(self.n) if all(g[i] == 0 for g in self.generators)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(self.n)])
        w.writerows(self.generators)
        return buf.getvalue()


class MuResult(NamedTuple):
    value: Rational
    witness: Optional[tuple]


def newton_polytope(f: Union[MultiPoly, PolyVector]) -> LatticePolytope:
    """Delta(f): generators are the (union of) supports, origin implicit."""
    supp = support(f)
    if not supp:
        raise ValueError("the zero polynomial has no Newton polytope")
    return LatticePolytope(f.n, tuple(supp))


def _check_point(P: LatticePolytope, v: Sequence[int]) -> tuple:
    v = tuple(int(c) for c in v)
    if len(v) != P.n:
        raise ValueError(f"point has {len(v)} coordinates, polytope lives in dimension {P.n}")
    if any(c < 0 for c in v):
        raise ValueError(f"point {v} has a negative coordinate")
    return v


def gauge(P: LatticePolytope, v: Sequence[int]) -> Rational:
    """Minimal dilation k with v in k*P, exact; INF outside the generated cone."""
    v = _check_point(P, v)
    if not any(v):
        return Fraction(0)
    gens = P.nonzero
    if not gens:
        return INF
    A = [[g[i] for g in gens] for i in range(P.n)]
    res = simplex([1] * len(gens), A, v)
    if res.status == INFEASIBLE:
        return INF
    return res.value


def positive_points(total: int, n: int) -> Iterator[tuple]:
    """Points of Z^n_{>0} with coordinate sum ``total``, lexicographic order."""
    if n == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - n + 2):
        for rest in positive_points(total - first, n - 1):
            yield (first,) + rest


def _minimize(P: LatticePolytope, upper: Rational, gauge_fn, budget: int) -> MuResult:
    # gauge(v) >= sum(v)/d, so levels beyond d * (best so far) cannot win or tie
    d = P.degree
    best: Optional[tuple] = None
    count = 0
    s = P.n
    while s <= d * (best[0] if best else upper):
        for v in positive_points(s, P.n):
            count += 1
            if count > budget:
                raise BudgetExceeded(f"mu search exceeded {budget} candidate points")
            k = gauge_fn(P, v)
            if best is None or (k, v) < best:
                best = (k, v)
        s += 1
    assert best is not None and best[0] != INF
    return MuResult(best[0], best[1])


def minimize_gauge(P: LatticePolytope, *, budget: int = DEFAULT_CANDIDATE_BUDGET) -> MuResult:
    """mu(P) with its lexicographically smallest witness point.

    INF (witness None) when some variable never occurs in the generators.
    """
    if P.missing_coordinates():
        return MuResult(INF, None)
    total = tuple(map(sum, zip(*P.nonzero)))
    return _minimize(P, gauge(P, total), gauge, budget)


def mu(P: LatticePolytope, **kw) -> Rational:
    return minimize_gauge(P, **kw).value


# -- LP-free oracle --------------------------------------------------------------

def _solve_exact(cols: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[list[Fraction]]:
    """Unique solution of sum_j lam_j cols_j = v, or None if rank-deficient/inconsistent."""
    n, r = len(v), len(cols)
    M = [[Fraction(cols[j][i]) for j in range(r)] + [Fraction(v[i])] for i in range(n)]
    row = 0
    pivots = []
    for col in range(r):
        piv = next((i for i in range(row, n) if M[i][col] != 0), None)
        if piv is None:
            return None
        M[row], M[piv] = M[piv], M[row]
        M[row] = [x / M[row][col] for x in M[row]]
        for i in range(n):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        pivots.append(row)
        row += 1
    if any(M[i][-1] != 0 for i in range(row, n)):
        return None
    return [M[i][-1] for i in pivots]


def gauge_oracle(P: LatticePolytope, v: Sequence[int]) -> Rational:
    """Gauge by enumerating generator subsets of size <= n (Caratheodory), no LP."""
    v = _check_point(P, v)
    if not any(v):
        return Fraction(0)
    gens = P.nonzero
    best: Rational = INF
    for r in range(1, min(P.n, len(gens)) + 1):
        for cols in combinations(gens, r):
            lam = _solve_exact(cols, v)
            if lam is not None and all(x >= 0 for x in lam):
                best = min(best, sum(lam))
    return best


def mu_oracle(P: LatticePolytope, *, max_dim: int = 4, max_region: int = 64) -> Rational:
    """Independent check of :func:`mu` for small polytopes."""
    if P.n > max_dim:
        raise BudgetExceeded(f"oracle supports dimension <= {max_dim}, got {P.n}")
    if P.missing_coordinates():
        return INF
    total = tuple(map(sum, zip(*P.nonzero)))
    upper = gauge_oracle(P, total)
    if P.degree * upper > max_region:
        raise BudgetExceeded(f"oracle region d*B = {P.degree * upper} exceeds {max_region}")
    d = P.degree
    limit = math.floor(d * upper)
    best: Rational = upper
    for v in product(range(1, limit - P.n + 2), repeat=P.n):
        if sum(v) <= limit and sum(v) <= d * best:
            best = min(best, gauge_oracle(P, v))
    return best


def format_rational(x: Rational) -> str:
    """'num/den' for exact values, 'inf' for infinity."""
    if x == INF:
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Rational:
    return INF if s == "inf" else Fraction(s)
