import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from satotate.angles import AngleTable, FormParams
from satotate.errors import EmptyRange, RamifiedUnsupported, RangeExceeded
from satotate.primes import chebyshev_theta, prime_pi, sieve_primes
from satotate.stats import (FULL, Interval, Theta_m, atkin_serre_exceptions, chebyshev_U,
                            discrepancy_scan, endpoint_grid, histogram, lambda_sym_abs_bound,
                            lambda_sym_coeff, mu_ST, pi_f_I, vartheta_f_I)

F11 = FormParams.for_level(2, 11, elliptic=True)


def synthetic(entries, xmax, form=F11):
    ps = [p for p, _ in entries]
    th = [t for _, t in entries]
    return AngleTable(form, xmax, np.array(ps), tuple(0 for _ in ps), np.array(th))


@pytest.mark.parametrize("m, theta, expected", [(0, 0.7, 1.0), (5, 0.0, 6.0), (4, math.pi, 5.0),
                                                 (3, math.pi, -4.0), (2, math.pi / 4, 1.0),
                                                 (2, math.pi / 2, -1.0)])
def test_chebyshev_values(m, theta, expected):
    assert chebyshev_U(m, theta) == pytest.approx(expected, abs=1e-12)


def test_chebyshev_identity_and_bound():
    th = np.linspace(0, math.pi, 1002)[1:-1]
    for m in range(1, 65):
        u = chebyshev_U(m, th)
        assert np.max(np.abs(u * np.sin(th) - np.sin((m + 1) * th))) < 1e-9
        assert np.max(np.abs(u)) <= m + 1 + 1e-9


def test_chebyshev_edge_limit():
    assert chebyshev_U(7, 1e-10) == 8.0
    assert chebyshev_U(7, math.pi - 1e-10) == -8.0


def test_mu_examples():
    assert mu_ST(FULL) == 1.0
    assert mu_ST(Interval(0, math.pi / 2)) == pytest.approx(0.5, abs=1e-15)
    quad, _ = integrate.quad(lambda t: 2 / math.pi * math.sin(t) ** 2, math.pi / 3, 2 * math.pi / 3)
    assert mu_ST(Interval(math.pi / 3, 2 * math.pi / 3)) == pytest.approx(quad, abs=1e-12)
    assert mu_ST(Interval(math.pi / 3, 2 * math.pi / 3)) == pytest.approx(0.6090, abs=5e-5)


# Published six-digit figures that miss their own closed forms (1/3 + sqrt(3)/(2 pi) and
# -1.8 log 5); see the decisions ledger.
@pytest.mark.xfail(strict=True, reason="six-digit figure disagrees with the closed form")
def test_mu_six_digit_figure():
    assert abs(mu_ST(Interval(math.pi / 3, 2 * math.pi / 3)) - 0.609000) <= 1e-6


@pytest.mark.xfail(strict=True, reason="six-digit figure disagrees with -1.8 log 5")
def test_lambda_six_digit_figure(table11_small):
    assert abs(lambda_sym_coeff(table11_small, 25, 1) - (-2.896995)) <= 5e-7


@given(st.lists(st.floats(min_value=0, max_value=math.pi), min_size=3, max_size=3))
def test_mu_additive(pts):
    a, b, c = sorted(pts)
    assert mu_ST(Interval(a, b)) + mu_ST(Interval(b, c)) == pytest.approx(mu_ST(Interval(a, c)), abs=1e-12)


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(1.0, 0.5)
    with pytest.raises(ValueError):
        Interval(0.0, 4.0)


def test_counts_synthetic():
    t = synthetic([(5, math.pi / 2)], 100)
    assert pi_f_I(t, 100, Interval(0, math.pi / 2)) == 1
    assert vartheta_f_I(t, 100, Interval(0, math.pi / 2)) == pytest.approx(math.log(5))
    assert Theta_m(t, 100, 2) == pytest.approx(-math.log(5))
    empty = synthetic([], 100)
    assert vartheta_f_I(empty, 100, FULL) == 0.0
    assert Theta_m(empty, 100, 3) == 0.0
    with pytest.raises(RangeExceeded):
        pi_f_I(t, 101, FULL)


def test_counts_11a1(table11_small):
    t = table11_small
    assert pi_f_I(t, 10**4, FULL) == prime_pi(10**4) - 1
    n = pi_f_I(t, 10**4, Interval(0, math.pi / 2))
    assert 550 <= n <= 680
    assert n == sum(1 for e in t if e.theta <= math.pi / 2)
    assert vartheta_f_I(t, 10**4, FULL) == pytest.approx(chebyshev_theta(10**4) - math.log(11), rel=1e-12)
    assert Theta_m(t, 10**4, 0) == vartheta_f_I(t, 10**4, FULL)


def test_compensated_mode_agrees(table11_small):
    for m in (0, 1, 5, 20):
        plain = Theta_m(table11_small, 10**4, m)
        comp = Theta_m(table11_small, 10**4, m, compensated=True)
        assert abs(plain - comp) <= 1e-10 * max(1.0, abs(comp)) * 1e3


def test_lambda_sym(table11_small):
    t = table11_small
    assert lambda_sym_coeff(t, 1, 1) == 0.0
    assert lambda_sym_coeff(t, 6, 3) == 0.0
    assert lambda_sym_coeff(t, 25, 1) == pytest.approx(2 * (-0.9) * math.log(5), rel=1e-12)
    assert lambda_sym_coeff(t, 7, 0) == pytest.approx(math.log(7))
    with pytest.raises(RamifiedUnsupported) as info:
        lambda_sym_coeff(t, 121, 2)
    assert info.value.bound == pytest.approx(3 * math.log(11))
    assert lambda_sym_abs_bound(6, 2) == 0.0


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 13, 97]), st.integers(1, 4), st.integers(0, 6))
def test_lambda_sym_bounded(table11_small, p, ell, m):
    v = lambda_sym_coeff(table11_small, p ** ell, m)
    assert abs(v) <= lambda_sym_abs_bound(p ** ell, m) + 1e-12


def _table(form, xmax, ps, aps):
    from satotate.angles import theta_from_ap
    th = [theta_from_ap(a, p, form.k) for p, a in zip(ps, aps)]
    return AngleTable(form, xmax, np.array(ps), tuple(aps), np.array(th))


FORM_LEVEL1 = FormParams.for_level(2, 1, Q=11)


def test_atkin_serre_all_half_pi():
    ps = [p for p in sieve_primes(200).tolist()]
    t = _table(FORM_LEVEL1, 200, ps, [0] * len(ps))
    for mode in ("statement", "proof"):
        exc, tot = atkin_serre_exceptions(t, 60, mode)
        assert exc == tot == sum(1 for p in ps if 60 < p <= 120)


def test_atkin_serre_near_theta_zero():
    # |a_p| = isqrt(4p) puts cos(theta) within 1/sqrt(p) of 1, above either threshold
    ps = [p for p in sieve_primes(200).tolist()]
    t = _table(FORM_LEVEL1, 200, ps, [math.isqrt(4 * p) for p in ps])
    for mode in ("statement", "proof"):
        exc, tot = atkin_serre_exceptions(t, 60, mode)
        assert exc == 0 and tot == sum(1 for p in ps if 60 < p <= 120)


def test_atkin_serre_threshold_monotone(delta_table):
    counts = [atkin_serre_exceptions(delta_table, 5000, "proof", threshold=s)[0]
              for s in np.linspace(0, 1, 21)]
    assert counts == sorted(counts)


def test_atkin_serre_range(delta_table):
    with pytest.raises(RangeExceeded):
        atkin_serre_exceptions(delta_table, 10_001, "statement")


def test_discrepancy_hand_example():
    # x = 2 has pi(x) = 1, so a single angle pi/2 gives the hand enumeration
    t = synthetic([(2, math.pi / 2)], 2, FORM_LEVEL1)
    I, D = discrepancy_scan(t, 2, math.pi / 2)
    assert D == pytest.approx(0.5)
    assert endpoint_grid(math.pi / 2).tolist() == [0.0, math.pi / 2, math.pi]


def test_discrepancy_empty():
    with pytest.raises(EmptyRange):
        discrepancy_scan(synthetic([], 1), 1, 0.1)


def test_discrepancy_recount(table11_small):
    step = math.pi / 64
    I, D = discrepancy_scan(table11_small, 10**4, step)
    grid = endpoint_grid(step)
    rng = np.random.default_rng(7)
    best = 0.0
    for _ in range(200):
        a, b = sorted(rng.choice(len(grid), 2, replace=False))
        J = Interval(grid[a], grid[b])
        n = sum(1 for e in table11_small if J.a <= e.theta <= J.b)
        best = max(best, abs(n / 1229 - mu_ST(J)))
    assert best <= D + 1e-15
    n = sum(1 for e in table11_small if I.a <= e.theta <= I.b)
    assert abs(n / 1229 - mu_ST(I)) == pytest.approx(D, abs=1e-15)


def test_histogram_masses(table11_small):
    edges, emp, st_mass = histogram(table11_small, 10**4, 16)
    assert emp.sum() == pytest.approx(1.0)
    assert st_mass.sum() == pytest.approx(1.0)
    assert len(edges) == 17
