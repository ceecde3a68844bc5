"""Value sets of polynomial maps and the bounds that constrain them.

All bound comparisons are exact: the subtracted quantity min{q, mu*(q-1)} is
a rational, and an integer cardinality is compared with the exact right-hand
side.  Integer bounds in reports are floors of the exact values.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import DEFAULT_DOMAIN_BUDGET, DEFAULT_U_BUDGET, BudgetExceeded, InputError
from .fields import FieldSpec, TowerSpec, field_of_order, make_tower, prime_power, vp
from .padic import _u_from_counts, compute_U
from .poly import (UNDEFINED, MultiPoly, PolyVector, domain_points, eval_raw, format_map,
                   image, parse_map, total_degree)
from .polytope import (INF, LatticePolytope, Rational, format_rational, minimize_gauge,
                       newton_polytope, parse_rational)


def _field_of(f: PolyVector, spec: Optional[FieldSpec]) -> FieldSpec:
    if spec is not None and spec != f.field:
        raise ValueError(f"map is over {f.field}, not {spec}")
    return f.field


def _capped(q: int, x: Rational) -> Fraction:
    """min{q, x} as an exact rational (x may be INF)."""
    return Fraction(q) if x == INF or x >= q else Fraction(x)


def polytope_subtrahend(q: int, mu_value: Rational) -> Fraction:
    """min{q, mu (q-1)}; an infinite mu gives q."""
    return _capped(q, INF if mu_value == INF else mu_value * (q - 1))


def _check_map(f: PolyVector) -> None:
    if f.m != f.n:
        raise InputError(f"map has {f.m} components in {f.n} variables; a self-map of F_q^n is required")
    const = [i + 1 for i, c in enumerate(f) if c.is_constant()]
    if const:
        raise InputError(f"component(s) {const} are constant; such maps are refused")


def value_set_size(f: PolyVector, spec: Optional[FieldSpec] = None, *,
                   budget: int = DEFAULT_DOMAIN_BUDGET) -> int:
    """|{f(x) : x in F_q^n}| by exhaustive evaluation."""
    _field_of(f, spec)
    return len(image(f, budget))


def bound_polytope_exact(f: PolyVector, spec: Optional[FieldSpec] = None) -> Fraction:
    F = _field_of(f, spec)
    if all(c.is_constant() for c in f):
        raise InputError("constant map")
    m = minimize_gauge(newton_polytope(f)).value
    return F.q ** f.n - polytope_subtrahend(F.q, m)


def bound_polytope(f: PolyVector, spec: Optional[FieldSpec] = None) -> int:
    """floor(q^n - min{q, mu_f (q-1)})."""
    return math.floor(bound_polytope_exact(f, spec))


def bound_mww_exact(f: PolyVector, spec: Optional[FieldSpec] = None) -> Fraction:
    F = _field_of(f, spec)
    d = total_degree(f)
    if d == UNDEFINED or d < 1:
        raise InputError("degree must be >= 1 for the degree bound")
    return F.q ** f.n - _capped(F.q, Fraction(f.n * (F.q - 1), d))


def bound_mww(f: PolyVector, spec: Optional[FieldSpec] = None) -> int:
    """floor(q^n - min{q, n(q-1)/deg f})."""
    return math.floor(bound_mww_exact(f, spec))


def bound_univariate(d: int, q: int) -> Fraction:
    """q - (q-1)/d, exact."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return Fraction(q) - Fraction(q - 1, d)


def bound_from_U(f: PolyVector, tower: Optional[TowerSpec] = None, *,
                 budget: int = DEFAULT_U_BUDGET) -> int:
    """q^n - U(g)."""
    res = compute_U(f, tower, budget=budget)
    return f.field.q ** f.m - res.U


# -- reports ---------------------------------------------------------------------

CHECK_FLAGS = ("theorem_holds", "lemma3_holds", "lemma6_holds", "mww_dominated",
               "mu_degree_holds", "univariate_holds")


@dataclass
class BoundsReport:
    field: dict
    map: str
    varnames: list
    n: int
    q: int
    degree: int
    mu: Rational
    mu_witness: Optional[list]
    bound_polytope: int
    bound_polytope_exact: Fraction
    bound_mww: int
    bound_mww_exact: Fraction
    vf_size: Optional[int] = None
    U: Optional[int] = None
    bound_U: Optional[int] = None
    bound_univariate: Optional[Fraction] = None
    permutation: Optional[bool] = None
    theorem_holds: Optional[bool] = None
    sharp: Optional[bool] = None
    degenerate_mu: bool = False
    mww_dominated: Optional[bool] = None
    lemma3_holds: Optional[bool] = None
    lemma6_holds: Optional[bool] = None
    mu_degree_holds: Optional[bool] = None
    univariate_holds: Optional[bool] = None
    absent: list = dc_field(default_factory=list)

    _RATIONALS = ("mu", "bound_polytope_exact", "bound_mww_exact", "bound_univariate")

    def violations(self) -> list[str]:
        """Names of applicable checks that failed."""
        return [name for name in CHECK_FLAGS if getattr(self, name) is False]

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in self._RATIONALS:
            if d[k] is not None:
                d[k] = format_rational(d[k])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BoundsReport":
        d = dict(d)
        for k in cls._RATIONALS:
            if d.get(k) is not None:
                d[k] = parse_rational(d[k])
        return cls(**d)

    def instance(self) -> PolyVector:
        """Re-parse the map this report describes."""
        return parse_map(self.map, FieldSpec.from_dict(self.field), self.varnames)


def verify_bounds(f: PolyVector, spec: Optional[FieldSpec] = None, *,
                  varnames: Optional[Sequence[str]] = None,
                  budget_domain: int = DEFAULT_DOMAIN_BUDGET,
                  budget_u: int = DEFAULT_U_BUDGET,
                  with_u: bool = True) -> BoundsReport:
    """Compute every quantity within budget and check each applicable inequality."""
    F = _field_of(f, spec)
    _check_map(f)
    n, q = f.n, F.q
    qn = q ** n
    names = list(varnames) if varnames is not None else [f"x{i + 1}" for i in range(n)]
    deg = total_degree(f)
    mu_res = minimize_gauge(newton_polytope(f))
    mu_val = mu_res.value
    poly_exact = qn - polytope_subtrahend(q, mu_val)
    mww_exact = bound_mww_exact(f)
    rep = BoundsReport(
        field=F.to_dict(), map=format_map(f, names), varnames=names, n=n, q=q, degree=deg,
        mu=mu_val, mu_witness=list(mu_res.witness) if mu_res.witness else None,
        bound_polytope=math.floor(poly_exact), bound_polytope_exact=poly_exact,
        bound_mww=math.floor(mww_exact), bound_mww_exact=mww_exact,
        degenerate_mu=mu_val == INF,
        mww_dominated=poly_exact <= mww_exact,
        mu_degree_holds=mu_val >= Fraction(n, deg),
    )
    if n == 1:
        rep.bound_univariate = bound_univariate(deg, q)

    try:
        vf = value_set_size(f, budget=budget_domain)
    except BudgetExceeded:
        rep.absent.append("vf_size")
        vf = None
    if vf is not None:
        rep.vf_size = vf
        rep.permutation = vf == qn
        if vf < qn:
            rep.theorem_holds = vf <= poly_exact
            rep.sharp = vf == poly_exact
            if n == 1:
                rep.univariate_holds = vf <= rep.bound_univariate
        else:
            rep.sharp = False

    if with_u and vf == 1:
        rep.absent.append("U")  # constant function: U undefined
    elif with_u:
        try:
            U = compute_U(f, budget=budget_u).U
        except BudgetExceeded:
            rep.absent.append("U")
            U = None
        if U is not None:
            rep.U = U
            rep.bound_U = qn - U
            rep.lemma6_holds = U >= polytope_subtrahend(q, mu_val)
            if vf is not None and vf < qn:
                rep.lemma3_holds = vf <= qn - U
    else:
        rep.absent.append("U")
    return rep


# -- the variety valuation check ----------------------------------------------------

@dataclass(frozen=True)
class VarietyCheck:
    N_points: int
    ord_q: Rational
    mu_aux: Rational
    m: int
    holds: bool

    def to_dict(self) -> dict:
        return {"N_points": self.N_points, "ord_q": format_rational(self.ord_q),
                "mu_aux": format_rational(self.mu_aux), "m": self.m, "holds": self.holds}


def aux_polytope(fs: PolyVector) -> LatticePolytope:
    """Delta of f_1 y_1 + ... + f_m y_m in n + m variables."""
    m = fs.m
    gens = [exps + tuple(int(j == i) for j in range(m))
            for i, comp in enumerate(fs) for exps in comp.terms]
    return LatticePolytope(fs.n + m, gens)


def variety_ord_check(fs: PolyVector, spec: Optional[FieldSpec] = None, *,
                      budget: int = DEFAULT_DOMAIN_BUDGET) -> VarietyCheck:
    """Compare ord_q of the zero count of fs with mu(aux) - m."""
    F = _field_of(fs, spec)
    zero_comps = [i + 1 for i, c in enumerate(fs) if c.is_zero()]
    if zero_comps:
        raise InputError(f"component(s) {zero_comps} are the zero polynomial")
    present = set()
    for c in fs:
        for exps in c.terms:
            present.update(i for i, v in enumerate(exps) if v)
    missing = [i + 1 for i in range(fs.n) if i not in present]
    if missing:
        raise InputError(f"the collection does not involve variable(s) {missing}; "
                         "it is a polynomial in a proper subset of the variables")
    ring = F.ring
    raws = [c.raw_terms() for c in fs]
    N = sum(1 for x in domain_points(F, fs.n, budget)
            if all(ring.is_zero(eval_raw(t, ring, x)) for t in raws))
    ord_q = INF if N == 0 else Fraction(vp(N, F.p), F.e)
    mu_aux = minimize_gauge(aux_polytope(fs)).value
    return VarietyCheck(N, ord_q, mu_aux, fs.m, ord_q >= mu_aux - fs.m)


# -- families and random instances ----------------------------------------------------

@dataclass
class SharpInstance:
    kind: str
    params: dict
    f: PolyVector
    field: FieldSpec
    expected: dict


def sharp_family(kind: str, **params) -> SharpInstance:
    """Instances with predicted value-set sizes.

    ``polytope_sharp`` (a, q): f = (x1, x1^a x2), |V_f| = q^2 - (q-1), mu = 1.
    ``cusick_muller`` (q, k): f = (x+1) x^(q-1) over F_{q^k}.  The
    closed form q^k - (q^k-1)/q is recorded next to the brute-force count,
    together with whether it is an integer at all.
    """
    if kind == "polytope_sharp":
        a, q = int(params["a"]), int(params["q"])
        if a < 1:
            raise ValueError("a must be >= 1")
        F = field_of_order(q)
        names = ["x1", "x2"]
        f = parse_map(f"x1; x1^{a}*x2", F, names)
        expected = {"vf_size": q * q - (q - 1), "mu": Fraction(1), "bound_polytope": q * q - (q - 1)}
        return SharpInstance(kind, {"a": a, "q": q}, f, F, expected)
    if kind == "cusick_muller":
        q, k = int(params["q"]), int(params["k"])
        prime_power(q)
        Q = q ** k
        F = field_of_order(Q)
        f = parse_map(f"x^{q} + x^{q - 1}", F, ["x"])
        vf = value_set_size(f)
        closed = Fraction(Q) - Fraction(Q - 1, q)
        expected = {
            "vf_size": vf,
            "closed_form": closed,
            "closed_form_is_integer": closed.denominator == 1,
            "matches_closed_form": vf == closed,
            "within_closed_form_as_bound": vf <= closed,
        }
        return SharpInstance(kind, {"q": q, "k": k}, f, F, expected)
    raise ValueError(f"unknown family {kind!r}")


def monomials_up_to(n: int, deg_max: int) -> list[tuple]:
    return [e for e in itertools.product(range(deg_max + 1), repeat=n) if sum(e) <= deg_max]


def random_map(F: FieldSpec, n: int, deg_max: int, rng: random.Random, *,
               budget: int = DEFAULT_DOMAIN_BUDGET) -> PolyVector:
    """Each component: a uniformly random monomial subset (degree <= deg_max) with
    uniform nonzero coefficients.  Constant components are resampled, and so are
    maps that are constant as functions on F_q^n (U is undefined for those)."""
    monos = monomials_up_to(n, deg_max)
    while True:
        comps = []
        for _ in range(n):
            while True:
                supp = [e for e in monos if rng.random() < 0.5]
                if any(any(e) for e in supp):
                    break
            terms = {e: F.element(F.ring.element_at(rng.randrange(1, F.q))) for e in supp}
            comps.append(MultiPoly(F, n, terms))
        f = PolyVector(comps)
        if F.q ** n > budget or len(image(f, budget)) > 1:
            return f


def prime_powers_in(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def random_instances(qs: Sequence[int], n: int, deg_max: int, samples: int,
                     seed: int) -> Iterator[tuple[int, PolyVector]]:
    """Seeded random maps: ``samples`` per q, q in the given order."""
    rng = random.Random(seed)
    for q in qs:
        F = field_of_order(q)
        for _ in range(samples):
            yield q, random_map(F, n, deg_max, rng)


def random_variety(F: FieldSpec, n: int, m: int, deg_max: int, rng: random.Random) -> PolyVector:
    """Random collection of m nonzero polynomials involving all n variables."""
    monos = monomials_up_to(n, deg_max)
    while True:
        comps = []
        for _ in range(m):
            supp = [e for e in monos if rng.random() < 0.5] or [rng.choice(monos)]
            comps.append(MultiPoly(F, n, {e: F.element(F.ring.element_at(rng.randrange(1, F.q)))
                                          for e in supp}))
        fs = PolyVector(comps)
        used = {i for c in fs for e in c.terms for i, v in enumerate(e) if v}
        if len(used) == n:
            return fs


def summarize(reports: Sequence[BoundsReport]) -> dict:
    return {
        "instances": len(reports),
        "violations": sum(1 for r in reports if r.violations()),
        "permutations": sum(1 for r in reports if r.permutation),
        "sharp": sum(1 for r in reports if r.sharp),
        "degenerate_mu": sum(1 for r in reports if r.degenerate_mu),
        "strictly_better_than_mww": sum(1 for r in reports
                                        if r.bound_polytope_exact < r.bound_mww_exact),
    }


# -- exhaustive univariate census ---------------------------------------------------

@dataclass
class CensusResult:
    q: int
    polynomials: int
    profiles: int
    min_degree: dict  # profile -> least degree producing it
    U: dict  # profile -> U (None if no k < q works)
    violations: list


def univariate_u_census(F: FieldSpec, max_degree: Optional[int] = None,
                        chunk_coeffs: int = 6) -> CensusResult:
    """Check (q-1)/d <= U(f) <= q-1 for every monic f of degree 1 <= d <= q-1.

    U depends only on the multiset of values of f (see ``u_from_values``), so
    polynomials are evaluated in bulk with field tables and grouped by value
    profile; each profile is checked against the least degree that produced it.
    """
    q = F.q
    els = F.elements()
    add = np.array([[(a + b).index for b in els] for a in els], dtype=np.int16)
    mul = np.array([[(a * b).index for b in els] for a in els], dtype=np.int16)
    pw = np.array([[(x ** j).index for x in els] for j in range(q)], dtype=np.int16)
    add_flat = add.ravel()
    terms = [mul[:, pw[j]] for j in range(q)]  # terms[j][c, x] = c * x^j
    weights = np.array([(q + 1) ** y for y in range(q)], dtype=np.int64)
    min_degree: dict = {}
    total = 0
    top = max_degree if max_degree is not None else q - 1

    for d in range(1, top + 1):
        inner = min(d, chunk_coeffs)  # low coefficients vectorized
        base = pw[d][None, :]
        for outer in itertools.product(range(q), repeat=d - inner):
            vals = base
            for j, c in zip(range(d - 1, inner - 1, -1), outer):
                vals = add_flat[vals * q + terms[j][c][None, :]]
            for j in range(inner - 1, -1, -1):
                vals = add_flat[(vals[:, None, :] * q + terms[j][None, :, :]).reshape(-1, q)]
            counts = np.stack([(vals == y).sum(axis=1) for y in range(q)], axis=1)
            total += len(counts)
            for key in np.unique(counts @ weights):
                min_degree.setdefault(int(key), d)

    profiles: dict = {}
    U: dict = {}
    violations = []
    for key, d in min_degree.items():
        prof = []
        for y in range(q):
            key, c = divmod(key, q + 1)
            if c:
                prof.append((F.ring.element_at(y), c))
        prof = tuple(sorted(prof))
        u = _u_from_counts(F, prof)
        profiles[prof] = d
        U[prof] = u
        if u is None or not (Fraction(q - 1, d) <= u <= q - 1):
            violations.append({"profile": prof, "min_degree": d, "U": u})
    return CensusResult(q, total, len(profiles), profiles, U, violations)
