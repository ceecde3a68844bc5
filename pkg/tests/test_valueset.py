import itertools
import json
import random
from fractions import Fraction

import pytest

from valuebounds.errors import BudgetExceeded, InputError
from valuebounds.fields import field_of_order
from valuebounds.padic import compute_U
from valuebounds.poly import parse_map
from valuebounds.polytope import INF
from valuebounds.valueset import (BoundsReport, aux_polytope, bound_from_U, bound_mww, bound_polytope,
                                  bound_polytope_exact, bound_univariate, polytope_subtrahend,
                                  prime_powers_in, random_instances, random_map, random_variety,
                                  sharp_family, summarize, univariate_u_census, value_set_size,
                                  variety_ord_check, verify_bounds)

X12 = ["x1", "x2"]


def fmap(text, q, names=X12):
    return parse_map(text, field_of_order(q), names)


def test_value_set_examples():
    assert value_set_size(fmap("x1; x1*x2", 2)) == 3
    assert value_set_size(fmap("x1; x1^2*x2", 3)) == 7
    assert value_set_size(fmap("x1; x2", 3)) == 9


def test_value_set_budget():
    with pytest.raises(BudgetExceeded):
        value_set_size(fmap("x1; x2", 5), budget=10)


def test_bound_polytope_examples():
    assert bound_polytope(fmap("x1; x1*x2", 2)) == 3
    assert bound_polytope(fmap("x1; x1^3*x2", 5)) == 21
    assert bound_polytope(fmap("x1; x2", 3)) == 6


def test_bound_mww_examples():
    assert bound_mww(fmap("x1; x1^3*x2", 5)) == 23
    assert bound_mww(fmap("x1; x2", 3)) == 6
    # univariate case reproduces q - (q-1)/d
    f = fmap("x^3", 7, ["x"])
    assert bound_mww(f) == 5 == int(bound_univariate(3, 7))


def test_bound_univariate_examples():
    assert bound_univariate(2, 3) == 2
    for q in (2, 3, 5, 7):
        assert bound_univariate(1, q) == 1
    assert bound_univariate(4, 5) == 4


def test_bound_from_U_examples():
    assert bound_from_U(fmap("x1; x1*x2", 2)) == 3
    assert bound_from_U(fmap("x^2", 3, ["x"])) == 2
    assert bound_from_U(fmap("x", 3, ["x"])) == 1


def test_polytope_subtrahend():
    assert polytope_subtrahend(5, Fraction(1)) == 4
    assert polytope_subtrahend(5, Fraction(1, 2)) == 2
    assert polytope_subtrahend(3, INF) == 3


def test_exact_comparison_is_not_floored():
    # mu = 1/2 at q = 4 gives 16 - 3/2; the integer bound floors to 14
    f = fmap("x1^4 + x2^4; x1^4 + x2^4", 4)
    assert bound_polytope_exact(f) == Fraction(29, 2)
    assert bound_polytope(f) == 14


def test_verify_sharp_example():
    rep = verify_bounds(fmap("x1; x1^2*x2", 3))
    assert rep.sharp and rep.vf_size == 7 == rep.bound_polytope
    assert rep.violations() == []


def test_verify_permutation():
    rep = verify_bounds(fmap("x1; x2", 2))
    assert rep.permutation and rep.theorem_holds is None and not rep.sharp


def test_verify_small_map():
    rep = verify_bounds(fmap("x1; x1*x2", 2))
    assert (rep.vf_size, rep.bound_polytope, rep.U) == (3, 3, 1)


def test_verify_refuses_bad_maps():
    with pytest.raises(InputError):
        verify_bounds(fmap("x1", 3))  # one component, two variables
    with pytest.raises(InputError):
        verify_bounds(fmap("x1; 2", 3))


def test_degenerate_mu_flagged():
    rep = verify_bounds(fmap("x1; x1^2", 3))
    assert rep.degenerate_mu and rep.mu == INF
    assert rep.bound_polytope == 9 - 3
    assert rep.violations() == []


def test_report_json_round_trip():
    rep = verify_bounds(fmap("x1 + x2^3; x1^2*x2", 5))
    d = json.loads(json.dumps(rep.to_dict()))
    assert isinstance(d["mu"], str)
    back = BoundsReport.from_dict(d)
    assert back == rep
    again = verify_bounds(back.instance(), varnames=back.varnames)
    assert again.to_dict() == rep.to_dict()


def test_sweep_over_f3_holds():
    reports = [verify_bounds(f) for _, f in random_instances([3], 2, 4, 100, 42)]
    assert len(reports) == 100
    for r in reports:
        assert r.theorem_holds is not False
        assert r.lemma6_holds and r.mww_dominated


def test_random_instances_reproducible():
    a = [str(f) for _, f in random_instances([2, 3], 2, 4, 5, 7)]
    b = [str(f) for _, f in random_instances([2, 3], 2, 4, 5, 7)]
    assert a == b


def test_random_map_never_constant():
    F = field_of_order(2)
    rng = random.Random(0)
    for _ in range(200):
        f = random_map(F, 2, 2, rng)
        assert value_set_size(f) > 1
        assert all(not c.is_constant() for c in f)


def test_prime_powers_in():
    assert prime_powers_in(2, 10) == [2, 3, 4, 5, 7, 8, 9]


def test_permutation_iff_injective():
    for _, f in random_instances([2, 3], 2, 3, 20, 5):
        pts = list(itertools.product(f.field.elements(), repeat=2))
        injective = len({f(*x) for x in pts}) == len(pts)
        assert (value_set_size(f) == len(pts)) == injective


@pytest.mark.parametrize("text, names, N", [
    ("x1*x2", X12, 5),
    ("x1^2 + x2^2", X12, 1),
    ("x1", ["x1"], 1),
])
def test_variety_examples(text, names, N):
    res = variety_ord_check(fmap(text, 3, names))
    assert res.N_points == N and res.ord_q == 0 and res.mu_aux == 1 and res.m == 1
    assert res.holds


def test_aux_polytope():
    P = aux_polytope(fmap("x1*x2", 3))
    assert P.generators == ((1, 1, 1),)


def test_variety_refusals():
    with pytest.raises(InputError):
        variety_ord_check(fmap("x1^2", 3))
    with pytest.raises(InputError):
        variety_ord_check(fmap("x1; 0", 3))


def test_random_varieties_hold():
    rng = random.Random(11)
    for q in (2, 3):
        for m in (1, 2):
            for _ in range(5):
                assert variety_ord_check(random_variety(field_of_order(q), 2, m, 3, rng)).holds


@pytest.mark.parametrize("a, q, vf", [(1, 2, 3), (3, 4, 13), (2, 3, 7)])
def test_polytope_sharp_family(a, q, vf):
    inst = sharp_family("polytope_sharp", a=a, q=q)
    assert inst.expected["vf_size"] == vf == value_set_size(inst.f)
    assert verify_bounds(inst.f).sharp


def test_cusick_muller_record():
    inst = sharp_family("cusick_muller", q=2, k=2)
    assert inst.field.q == 4
    assert inst.expected["vf_size"] == 2
    assert inst.expected["closed_form"] == Fraction(5, 2)
    assert inst.expected["closed_form_is_integer"] is False
    assert inst.expected["matches_closed_form"] is False


def test_summary_counts():
    reports = [verify_bounds(sharp_family("polytope_sharp", a=a, q=3).f) for a in (1, 2, 3)]
    s = summarize(reports)
    assert s["instances"] == 3 and s["sharp"] == 3 and s["violations"] == 0


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_census_matches_direct_scan(q):
    F = field_of_order(q)
    res = univariate_u_census(F)
    assert res.violations == []
    assert res.polynomials == sum(q ** d for d in range(1, q))
    # every polynomial checked directly
    for d in range(1, q):
        for c in itertools.product(range(q), repeat=d):
            text = " + ".join([f"x^{d}"] + [f"{ci}*x^{i}" if i else f"{ci}" for i, ci in enumerate(c) if ci])
            f = fmap(text, q, ["x"])
            if value_set_size(f) == 1:
                continue
            U = compute_U(f).U
            assert Fraction(q - 1, d) <= U <= q - 1
