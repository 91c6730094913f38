import json
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from lglab.chain import ChainSpec, make_nested_chain, nested_family
from lglab.invariants import PairConfig, pair_invariants
from lglab.linalg import Subspace
from lglab.oracle import (BudgetExceeded, InsufficientSamples, admissible_pairs, census, default_budget,
                          enum_fiber, enum_lg_points, fit_count_polynomial, lagrange_coefficients, stratify,
                          verify_configuration)
from lglab.strata import StratumReport, stratum_report

GOLDEN = Path(__file__).parent / "golden"
TOY = ChainSpec(2, 3, 2, (frozenset({1}), frozenset({1})))


def ln(p, v):
    return Subspace.span(p, len(v), [v])


def chain(q, spec=TOY):
    return make_nested_chain(spec.with_prime(q))


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_lg_count_is_3q_plus_1(q):
    pts = enum_lg_points(chain(q), 1)
    assert len(pts) == len(set(pts)) == 3 * q + 1


def test_lg_points_are_linked():
    ch = chain(3)
    for pt in enum_lg_points(ch, 1):
        for i in range(1, ch.n):
            assert pt[i - 1].dim == 1


def test_fiber_examples():
    ch = chain(2)
    fib = enum_fiber(ch, 1, ln(2, (0, 1)), ln(2, (1, 0)))
    assert fib.status == "ok" and len(fib) == 3
    fib = enum_fiber(ch, 1, ln(2, (1, 0)), ln(2, (1, 0)))
    assert len(fib) == 1
    fib = enum_fiber(ch, 1, ln(2, (1, 0)), ln(2, (0, 1)))
    assert fib.status == "inadmissible" and len(fib) == 0


def test_admissible_but_empty_fiber():
    spec = ChainSpec(2, 3, 2, (frozenset(), frozenset({1, 2})))
    fib = enum_fiber(make_nested_chain(spec), 1, ln(2, (1, 0)), ln(2, (1, 1)))
    assert fib.status == "empty"


def test_stratify_examples():
    for q, want in ((2, {((1, 0, 0),): 1, ((0, 1, 0),): 1, ((1, 1, 0),): 1}),):
        ch = chain(q)
        v1, vn = ln(q, (0, 1)), ln(q, (1, 0))
        inv = pair_invariants(PairConfig(ch, 1, v1, vn))
        assert stratify(ch, inv, enum_fiber(ch, 1, v1, vn).points) == Counter(want)
    c = census({5: chain(5)}, 1, {5: ln(5, (0, 1))}, {5: ln(5, (1, 0))})
    assert c.strata[((1, 1, 0),)] == {5: 4}
    assert c.totals == {5: 6}


def test_empty_census():
    spec = ChainSpec(2, 3, 2, (frozenset(), frozenset({1, 2})))
    c = census({2: make_nested_chain(spec)}, 1, {2: ln(2, (1, 0))}, {2: ln(2, (1, 1))})
    assert c.totals == {2: 0} and c.strata == {}


def test_stratum_count_matches_dimension():
    # stratum (1,1,0) over (<e2>, <e1>) has q - 1 points and dimension 1
    counts = {}
    for q in (2, 3, 5, 7):
        ch = chain(q)
        v1, vn = ln(q, (0, 1)), ln(q, (1, 0))
        inv = pair_invariants(PairConfig(ch, 1, v1, vn))
        counts[q] = stratify(ch, inv, enum_fiber(ch, 1, v1, vn).points)[((1, 1, 0),)]
    assert counts == {q: q - 1 for q in counts}
    assert fit_count_polynomial(counts).degree == 1


def test_fit_examples():
    f = fit_count_polynomial({2: 7, 3: 10, 5: 16})
    assert f.coefficients == (Fraction(1), Fraction(3)) and f.degree == 1 and f.exact_fit
    assert fit_count_polynomial({2: 1, 3: 1, 5: 1}).degree == 0
    f = fit_count_polynomial({2: 3, 3: 4, 5: 6})
    assert f.coefficients == (1, 1)
    assert f(11) == 12


def test_fit_needs_spare_sample():
    f = fit_count_polynomial({2: 7, 3: 10})
    assert f.degree == 1 and not f.exact_fit
    f = fit_count_polynomial({2: 0, 3: 0, 5: 0})
    assert f.degree == -1 and f.exact_fit


def test_fit_non_integer_is_not_exact():
    f = fit_count_polynomial({2: 1, 3: 2, 5: 2})
    assert not f.exact_fit


def test_insufficient_samples():
    with pytest.raises(InsufficientSamples, match="need 2 more primes"):
        fit_count_polynomial({2: 7}, expected_degree=2)


@settings(max_examples=50)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_lagrange_recovers_integer_polynomials(coeffs):
    primes = (2, 3, 5, 7, 11, 13)[: len(coeffs) + 1]
    pts = [(q, sum(c * q ** k for k, c in enumerate(coeffs))) for q in primes]
    got = lagrange_coefficients(pts)
    assert got[: len(coeffs)] == [Fraction(c) for c in coeffs]
    assert all(x == 0 for x in got[len(coeffs):])


def test_budget_guard(monkeypatch):
    with pytest.raises(BudgetExceeded):
        enum_lg_points(chain(5), 1, budget=3)
    monkeypatch.setenv("LGLAB_BUDGET", "1e3")
    assert default_budget() == 1000
    monkeypatch.setenv("LGLAB_BUDGET", "0")
    with pytest.raises(ValueError):
        default_budget()


@pytest.mark.parametrize("spec", nested_family(2, 3, 2) + nested_family(3, 3, 2)[:9], ids=lambda s: s.label())
def test_partition_and_total(spec):
    for q in (2, 3):
        ch = chain(q, spec)
        for r in range(1, spec.d):
            total = 0
            for v1, vn in admissible_pairs(ch, r):
                inv = pair_invariants(PairConfig(ch, r, v1, vn))
                fib = enum_fiber(ch, r, v1, vn, inv=inv)
                assert sum(stratify(ch, inv, fib.points).values()) == len(fib)
                total += len(fib)
            assert total == len(enum_lg_points(ch, r))


def test_verify_toy_family():
    rep = verify_configuration(nested_family(2, 3), [1], primes=(2, 3, 5, 7))
    s = rep["summary"]
    assert s["failures"] == 0 and s["unwitnessed"] == 0 and s["passed"]


def test_verify_golden():
    spec = ChainSpec(3, 3, 2, (frozenset({1}), frozenset({1, 2})))
    rep = verify_configuration([spec], [1, 2], primes=(2, 3, 5, 7, 11))
    want = json.loads((GOLDEN / "verify_d3_n3_S1_12.json").read_text())
    assert json.loads(json.dumps(rep, sort_keys=True)) == want
    assert rep["summary"]["passed"]


def flip_c4(inv, spec):
    rep = stratum_report(inv, spec)
    c4 = {i: not v for i, v in rep.conditions["c4"].items()}
    conds = {**rep.conditions, "c4": c4}
    nonempty = all(all(v.values()) for v in conds.values())
    return StratumReport(spec, conds, nonempty, rep.dimension if nonempty else None)


def test_mutated_evaluator_is_caught():
    rep = verify_configuration(nested_family(2, 3), [1], primes=(2, 3, 5, 7), evaluator=flip_c4)
    assert rep["summary"]["failures"] > 0 and not rep["summary"]["passed"]
