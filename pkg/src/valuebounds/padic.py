"""Truncated unramified p-adic rings, Teichmueller lifts and the invariant U.

The ring covering a field ``F`` at precision ``N`` is the Galois ring obtained
by reading the field's moduli over Z/p^N instead of Z/p.  For a tower
F_q[u]/(M) over F_p[t]/(m) this is built level by level, which is isomorphic
to a single degree-``e*n`` extension of Z/p^N because any monic lift of an
irreducible modulus gives the same unramified ring.  Raw residue values
(ints in [0, p)) are valid raw ring values, so lifting coefficients is the
identity on the representation.

A Teichmueller power sum over a box L_q^n only matters modulo p*k, i.e. modulo
p^(1 + v_p(k)); :func:`power_sum` works at exactly that precision.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Optional, Union

from .errors import DEFAULT_U_BUDGET, BudgetExceeded, InputError
from .fields import FFElement, FieldSpec, PolyQuotient, TowerSpec, Zmod, make_tower, vp
from .poly import MultiPoly, PolyVector, construct_g, eval_raw, image


@dataclass(frozen=True)
class WittRingSpec:
    """Z_Q / p^N for the residue field Q = ``residue.order``."""

    residue: Union[FieldSpec, TowerSpec]
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"precision N={self.N} must be >= 1")

    @property
    def p(self) -> int:
        return self.residue.p

    @property
    def Q(self) -> int:
        return self.residue.order

    @cached_property
    def ring(self) -> PolyQuotient:
        res = self.residue
        if isinstance(res, FieldSpec):
            return PolyQuotient(Zmod(self.p ** self.N), res.modulus)
        return PolyQuotient(lift_ring(res.base, self.N).ring, res.ext_modulus)

    @property
    def modulus(self) -> tuple:
        return self.ring.modulus

    @property
    def degree(self) -> int:
        """Rank r over Z/p^N."""
        res = self.residue
        return res.e if isinstance(res, FieldSpec) else res.base.e * res.n

    def element(self, raw) -> "WittElement":
        return WittElement(self, raw)

    def from_int(self, k: int) -> "WittElement":
        return WittElement(self, self.ring.from_int(k))


@dataclass(frozen=True)
class WittElement:
    ring: WittRingSpec
    coeffs: tuple

    def _other(self, other):
        if isinstance(other, WittElement):
            if other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other.coeffs
        if isinstance(other, int):
            return self.ring.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else WittElement(self.ring, self.ring.ring.add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else WittElement(self.ring, self.ring.ring.sub(self.coeffs, o))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else WittElement(self.ring, self.ring.ring.mul(self.coeffs, o))

    __rmul__ = __mul__

    def __neg__(self):
        return WittElement(self.ring, self.ring.ring.neg(self.coeffs))

    def __pow__(self, k: int):
        return WittElement(self.ring, self.ring.ring.pow(self.coeffs, k))

    def __eq__(self, other):
        o = self._other(other) if isinstance(other, (WittElement, int)) else NotImplemented
        return NotImplemented if o is NotImplemented else self.coeffs == o

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def is_zero(self) -> bool:
        return self.ring.ring.is_zero(self.coeffs)

    def reduce(self) -> FFElement:
        """Image in the residue field."""
        return FFElement(self.ring.residue, self.ring.ring.reduce(self.coeffs, self.ring.p))

    def flat(self) -> list[int]:
        """Coefficient vector over Z/p^N (basis t^i u^j at index j*e + i)."""
        return self.ring.ring.flatten(self.coeffs)


@lru_cache(maxsize=None)
def lift_ring(spec: Union[FieldSpec, TowerSpec], N: int) -> WittRingSpec:
    """The truncated unramified ring with residue field ``spec`` and precision N."""
    return WittRingSpec(spec, N)


@lru_cache(maxsize=1 << 16)
def _teich_raw(ring: WittRingSpec, raw: tuple) -> tuple:
    R = ring.ring
    y = raw
    for _ in range(ring.N - 1):
        y = R.pow(y, ring.Q)
    if R.pow(y, ring.Q) != y:
        raise ArithmeticError(f"Teichmueller lift failed: y^Q != y for {raw}")
    return y


def teichmuller(a: FFElement, ring: WittRingSpec) -> WittElement:
    """The unique w with w^Q = w and w = a mod p, via N-1 Frobenius-power iterations."""
    if a.field != ring.residue:
        raise ValueError(f"{a!r} is not in the residue field {ring.residue}")
    return WittElement(ring, _teich_raw(ring, a.coeffs))


def _domain(field) -> tuple[Union[FieldSpec, TowerSpec], Callable]:
    """Field whose Teichmueller set the variables range over, and its embedding."""
    if isinstance(field, TowerSpec):
        return field.base, field.ring.scalar
    return field, lambda raw: raw


@lru_cache(maxsize=256)
def _lifted_values(g: MultiPoly, N: int, budget: int) -> list:
    """g~(x) for every x in L_q^n, in canonical order, at precision N."""
    field = g.field
    base, embed = _domain(field)
    if base.order ** g.n > budget:
        raise BudgetExceeded(f"power sum over {base.order}^{g.n} points exceeds budget {budget}")
    ring = lift_ring(field, N)
    R = ring.ring
    terms = [(e, _teich_raw(ring, c)) for e, c in g.raw_terms()]
    lifts = [_teich_raw(ring, embed(a)) for a in base.ring.elements()]
    return [eval_raw(terms, R, x) for x in itertools.product(lifts, repeat=g.n)]


def power_sum(g: MultiPoly, k: int, tower=None, *, precision: Optional[int] = None,
              budget: int = DEFAULT_U_BUDGET) -> WittElement:
    """S_k(g) = sum over L_q^n of g~(x)^k, modulo p^(1 + v_p(k)) by default.

    ``g`` lives over a TowerSpec (variables range over its base) or over a
    FieldSpec (variables range over the field itself).
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if tower is not None and g.field != tower:
        raise ValueError(f"polynomial is over {g.field}, not {tower}")
    field = g.field
    N = precision if precision is not None else 1 + vp(k, field.p)
    ring = lift_ring(field, N)
    R = ring.ring
    acc = R.zero
    for v in _lifted_values(g, N, budget):
        acc = R.add(acc, R.pow(v, k))
    return WittElement(ring, acc)


@dataclass(frozen=True)
class UResult:
    U: int
    witness_k: int
    S_value: WittElement

    def to_dict(self) -> dict:
        return {"U": self.U, "witness_k": self.witness_k,
                "precision": self.S_value.ring.N, "S": self.S_value.flat()}


def scan_U(g: MultiPoly, *, budget: int = DEFAULT_U_BUDGET,
           trace: Optional[Callable[[dict], None]] = None) -> UResult:
    """Smallest k >= 1 with S_k(g) != 0 mod p*k, scanning k = 1 .. Q-1 in order."""
    field = g.field
    if field.order > budget:
        raise BudgetExceeded(f"U scan over a field of order {field.order} exceeds budget {budget}")
    for k in range(1, field.order):
        S = power_sum(g, k, budget=budget)
        nonzero = not S.is_zero()
        if trace is not None:
            trace({"k": k, "N": S.ring.N, "S_k": S.flat(), "verdict": "nonzero" if nonzero else "zero"})
        if nonzero:
            return UResult(k, k, S)
    raise ArithmeticError("no k <= Q-1 with nonvanishing power sum (constant map?)")


def compute_U(f: PolyVector, tower: Optional[TowerSpec] = None, *, budget: int = DEFAULT_U_BUDGET,
              trace: Optional[Callable[[dict], None]] = None) -> UResult:
    """U(g) for g = construct_g(f, tower); the tower defaults to F_{q^n} over f's field."""
    if tower is None:
        if f.field.q ** f.m > budget:
            raise BudgetExceeded(f"U scan over q^n = {f.field.q}^{f.m} exceeds budget {budget}")
        tower = make_tower(f.field, f.m)
    if all(c.is_constant() for c in f):
        raise InputError("U is undefined for a constant map")
    g = construct_g(f, tower)
    if len(image(g, budget)) == 1:
        # a constant function c gives S_k = q^n c^k, which vanishes mod p*k for every k < q^n
        raise InputError("the map is constant as a function on F_q^n; U is undefined")
    return scan_U(g, budget=budget, trace=trace)


def charsum_oracle(q: int, k: int) -> int:
    """Closed form of sum_{x in L_q} x^k."""
    if k == 0:
        return q
    return q - 1 if k % (q - 1) == 0 else 0


def u_from_values(values: Iterable[FFElement], field: FieldSpec) -> Optional[int]:
    """U from the multiset of values f(x), x in F_q.

    Writing f~(x) = w + p*d with w the lift of f(x), every term of
    (w + p*d)^k beyond w^k has valuation >= 1 + v_p(k), so modulo p*k the
    power sum only depends on the value multiset.  Returns None if no k < q works.
    """
    counts: dict = {}
    for v in values:
        counts[v.coeffs] = counts.get(v.coeffs, 0) + 1
    return _u_from_counts(field, tuple(sorted(counts.items())))


@lru_cache(maxsize=None)
def _u_from_counts(field: FieldSpec, counts: tuple) -> Optional[int]:
    for k in range(1, field.q):
        N = 1 + vp(k, field.p)
        ring = lift_ring(field, N)
        R = ring.ring
        acc = R.zero
        for raw, c in counts:
            term = R.pow(_teich_raw(ring, raw), k)
            acc = R.add(acc, R.mul(R.from_int(c), term))
        if not R.is_zero(acc):
            return k
    return None
