from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mckay.arcs import (
    MonomialDivisorChart,
    closed_form,
    count_jets_mod_p,
    jet_stratum_class,
    measure_at_truncation,
    measure_of_order_level,
    motivic_integral_truncated,
    order_strata,
    series_compare,
    series_valuation,
    stratum_measure,
)
from mckay.exact import MotiveExpr, motive_eval

L = MotiveExpr.L(1)


def test_smooth_divisor_closed_form():
    chart = MonomialDivisorChart(1, (1,))
    assert closed_form(chart, [1]) == (L - 1) + (L - 1) / (L**2 - 1)
    assert closed_form(chart, [0]) == L


def test_normal_crossing_closed_form():
    chart = MonomialDivisorChart(2, (1, 1))
    want = (L - 1) ** 2 + 2 * (L - 1) * (L - 1) / (L**2 - 1) + ((L - 1) / (L**2 - 1)) ** 2
    assert closed_form(chart, [1, 1]) == want


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("e, k", [((0,), 2), ((1, 0), 2), ((1, 2), 2), ((0, 0, 1), 1), ((2,), 3)])
def test_jet_classes_count_points_over_finite_fields(e, k, p):
    n = len(e)
    assert motive_eval(jet_stratum_class(n, e, k), p) == count_jets_mod_p(n, e, k, p)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=3), st.integers(0, 4))
def test_measure_is_independent_of_truncation(e, extra):
    k = max(e) + extra
    n = len(e)
    assert measure_at_truncation(n, e, k) == measure_at_truncation(n, e, k + 1)
    assert measure_at_truncation(n, e, k) == stratum_measure(e, 0)


def test_order_strata_partition():
    chart = MonomialDivisorChart(3, (1, 2, 0))
    for s in range(6):
        for stratum in order_strata(chart, s):
            assert sum(m * x for m, x in zip((1, 2), stratum.e)) == s


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 2), st.integers(1, 8))
def test_additivity_with_tail(m, free, S):
    # levels 0..S plus the measure of arcs with ord > S recover the whole space L^n
    n = len(m) + free
    chart = MonomialDivisorChart(n, tuple(m) + (0,) * free)
    levels = sum((measure_of_order_level(chart, s) for s in range(S + 1)), MotiveExpr.const(0))
    tail = L**n - levels
    # arcs with ord_D > S need sum e_i >= ceil((S+1)/max m); that set has top degree n - that
    v = series_valuation(tail)
    assert v is not None and v >= -(-(S + 1) // max(m)) - n


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("S", [0, 1, 4, 7])
def test_tail_in_one_variable(m, S):
    chart = MonomialDivisorChart(1, (m,))
    levels = sum((measure_of_order_level(chart, s) for s in range(S + 1)), MotiveExpr.const(0))
    # {ord x > S/m} is the set of arcs divisible by t^ceil((S+1)/m)
    assert L - levels == L ** (1 - (-(-(S + 1) // m)))


def test_truncated_integral_converges_to_closed_form():
    for n, m, a in [(1, (1,), [1]), (2, (1, 1), [1, 2]), (3, (1, 2, 0), [1, 1]), (2, (2, 1), [0, 1])]:
        chart = MonomialDivisorChart(n, m)
        lhs = closed_form(chart, a)
        prev = None
        for S in (4, 8, 12):
            rep = series_compare(lhs, motivic_integral_truncated(chart, a, S), 4)
            assert rep.agree, (n, m, a, str(rep))
        rep = series_compare(lhs, motivic_integral_truncated(chart, a, 12), 12)
        assert rep.agree


def test_series_compare_examples():
    good = sum(((L - 1) * L ** (-2 - 2 * e) for e in range(12)), MotiveExpr.const(0))
    rep = series_compare((L - 1) / (L**2 - 1), good, 10)
    assert rep.agree and rep.top == -1
    bad = good + L ** (-5)
    rep = series_compare((L - 1) / (L**2 - 1), bad, 10)
    assert not rep.agree and rep.first_disagreement == 4
    assert "disagree" in str(rep)


def test_valuation():
    assert series_valuation(L**-3 + L**-5) == 3
    assert series_valuation(MotiveExpr.const(0)) is None
    assert series_valuation((L - 1) / (L**2 - 1)) == 1


def test_chart_validation():
    with pytest.raises(ValueError):
        MonomialDivisorChart(2, (1,))
    with pytest.raises(ValueError):
        MonomialDivisorChart(1, (-1,))
    with pytest.raises(ValueError):
        MonomialDivisorChart(2, (1, 1)).weighted([1])
    with pytest.raises(ValueError):
        jet_stratum_class(1, (3,), 2)
