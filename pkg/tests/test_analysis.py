import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from esbch.analysis import (
    AnalysisPoint,
    BoundInvalid,
    DomainError,
    LogProb,
    NegativeProbability,
    _log2_diff,
    binary_entropy,
    binomial_tail,
    complexity_bounds,
    exponent_bound_valid,
    log_binomial,
    log_eps_grid,
    p_mf_binomial,
    p_mf_exponent,
    p_ud,
    peak,
    reduction_ratio,
    relative_entropy,
    sweep,
)

from oracles import exact_pud, exact_tail, log2_fraction


def test_entropy_values():
    assert binary_entropy(0.25) == pytest.approx(0.811278, abs=1e-6)
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert relative_entropy(0.5, 0.25) == pytest.approx(0.207518, abs=1e-6)
    assert relative_entropy(0.3, 0.3) == 0.0


@given(st.floats(0, 1), st.floats(1e-9, 1 - 1e-9))
def test_relative_entropy_nonnegative(lam, eps):
    assert relative_entropy(lam, eps) >= 0.0


def test_domain_errors():
    with pytest.raises(DomainError):
        relative_entropy(0.5, 0.0)
    with pytest.raises(DomainError):
        AnalysisPoint.for_code(5, 3, 1, 0.5)
    with pytest.raises(DomainError):
        AnalysisPoint.for_code(5, 3, 0, 0.01)
    with pytest.raises(DomainError):
        AnalysisPoint(30, 5, 3, 1, 0.01)
    with pytest.raises(DomainError):
        log_binomial(3, 4)


@pytest.mark.parametrize("n,k", [(31, 3), (1023, 17), (16383, 72), (16383, 8191)])
def test_log_binomial_against_exact(n, k):
    exact = math.log2(math.comb(n, k))
    assert log_binomial(n, k) == pytest.approx(exact, rel=1e-12)


def test_log_binomial_small():
    assert log_binomial(31, 3) == pytest.approx(math.log2(4495), rel=1e-13)


@pytest.mark.parametrize(
    "n,h0,eps",
    [(31, 4, 0.01), (31, 1, 0.2), (63, 20, 0.3), (1023, 18, 1e-3), (1023, 3, 0.05), (255, 200, 0.01)],
)
def test_binomial_tail_against_exact(n, h0, eps):
    exact = log2_fraction(exact_tail(n, h0, Fraction(eps)))
    assert binomial_tail(n, h0, eps).log2 == pytest.approx(exact, rel=1e-10, abs=1e-12)


def test_tail_edges():
    assert binomial_tail(10, 0, 0.3).log2 == 0.0
    assert binomial_tail(10, 11, 0.3).is_zero
    assert binomial_tail(10, 3, 0.0).is_zero


@given(st.integers(2, 400), st.data())
def test_tail_monotone_in_start(n, data):
    eps = data.draw(st.floats(1e-5, 0.49))
    h0 = data.draw(st.integers(0, n))
    assert binomial_tail(n, h0 + 1, eps) <= binomial_tail(n, h0, eps)
    assert binomial_tail(n, h0, eps).log2 <= 1e-12


@pytest.mark.parametrize("m,t,eps", [(5, 3, 0.01), (6, 2, 0.1), (10, 17, 1e-3)])
def test_pud_against_exact(m, t, eps):
    n = 2 ** m - 1
    exact = log2_fraction(exact_pud(n, m, t, Fraction(eps)))
    assert p_ud(AnalysisPoint(n, m, t, 1, eps)).log2 == pytest.approx(exact, rel=1e-10)


def test_pud_t0_is_probability_of_any_error():
    pt = AnalysisPoint.for_code(4, 0, 1, 0.1)
    assert p_ud(pt).value == pytest.approx(1 - 0.9 ** 15, rel=1e-12)


def test_log_difference():
    assert _log2_diff(3.0, 2.0) == pytest.approx(2.0)
    assert _log2_diff(-5.0, -5.0) == -math.inf
    with pytest.raises(NegativeProbability):
        _log2_diff(1.0, 2.0)
    with pytest.raises(NegativeProbability):
        _log2_diff(-math.inf, -40.0)
    assert _log2_diff(-40.0, -math.inf) == -40.0


def test_logprob_formatting():
    assert LogProb(0.0).sci() == "1.00000e+00"
    assert LogProb(math.log2(6.49437e-119)).sci() == "6.49437e-119"
    assert LogProb(math.log2(0.00999999999999)).sci() == "1.00000e-02"
    assert LogProb.zero().sci() == "0"
    assert LogProb(-3.0) < LogProb(-2.0)


def test_pmf_exponent_strict_region():
    pt = AnalysisPoint.for_code(10, 17, 6, 0.05)
    assert not exponent_bound_valid(pt)
    with pytest.raises(BoundInvalid):
        p_mf_exponent(pt, strict=True)
    low = pt.with_eps(1e-4)
    assert exponent_bound_valid(low)
    assert p_mf_exponent(low, strict=True) == p_mf_exponent(low)


def test_pmf_binomial_larger_kappa_is_smaller():
    vals = [p_mf_binomial(AnalysisPoint.for_code(10, 17, k, 2e-3)) for k in (4, 5, 6)]
    assert vals[0] > vals[1] > vals[2]


def test_sweep_and_peak():
    pt = AnalysisPoint.for_code(10, 17, 6, 1e-3)
    res = sweep(p_mf_binomial, pt, log_eps_grid(points=50))
    assert len(res) == 50
    eps, lp = peak(res)
    assert 1e-4 <= eps <= 1e-1
    assert all(v is None or v <= lp for _, v in res)


@pytest.mark.parametrize(
    "t,e,kappa,expected",
    [
        (3, 1, 4, (3, 6, 5, 9)),
        (17, 2, 6, (37, 69, 67, 31)),
        (72, 0, 6, (0, 0, 0, 0)),
    ],
)
def test_complexity_bounds(t, e, kappa, expected):
    b = complexity_bounds(t, e, kappa)
    assert (b.c_esbm, b.c_hv, b.c_bm, b.c_es3) == expected


def test_reduction_ratio():
    assert reduction_ratio(17, 2, 6) == pytest.approx(1 - 31 / 37)
    with pytest.raises(ZeroDivisionError):
        reduction_ratio(17, 0, 6)


@given(st.integers(1, 200), st.integers(1, 50), st.integers(1, 10))
def test_es3_bound_below_bm_bound_for_small_e(t, e, kappa):
    assume(e + kappa <= t)
    b = complexity_bounds(t, e, kappa)
    assert b.c_es3 <= b.c_bm
