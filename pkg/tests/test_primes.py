import math

import pytest
from hypothesis import given, strategies as st

from satotate.primes import (chebyshev_theta, factorize, is_prime, is_squarefree, iter_prime_segments,
                             prime_pi, prime_power, primes_between, sieve_primes)


def trial_division_primes(n):
    out = []
    for c in range(2, n + 1):
        if all(c % p for p in out if p * p <= c):
            out.append(c)
    return out


@pytest.mark.parametrize("limit, expected", [(10, [2, 3, 5, 7]), (1, []), (0, []), (2, [2])])
def test_small_limits(limit, expected):
    assert sieve_primes(limit).tolist() == expected


def test_sieve_matches_trial_division():
    assert sieve_primes(20_000).tolist() == trial_division_primes(20_000)


def test_sieve_to_one_million():
    ps = sieve_primes(10**6)
    assert len(ps) == 78498
    assert ps[-1] == 999983


def test_segments_small_segment_size():
    pieces = list(iter_prime_segments(5000, segment=97))
    assert [int(p) for seg in pieces for p in seg] == trial_division_primes(5000)


def test_primes_between_and_pi():
    assert primes_between(10, 30).tolist() == [11, 13, 17, 19, 23, 29]
    assert prime_pi(10**4) == 1229
    assert prime_pi(2.5) == 1


def test_theta_oracle():
    ref = math.fsum(math.log(p) for p in trial_division_primes(10_000))
    assert chebyshev_theta(10_000) == pytest.approx(ref, rel=1e-12)
    assert ref == pytest.approx(9895.991, abs=1e-3)


@given(st.integers(min_value=0, max_value=50_000))
def test_is_prime_agrees_with_factorization(n):
    f = factorize(n) if n >= 1 else {}
    assert is_prime(n) == (n >= 2 and f == {n: 1})


@pytest.mark.parametrize("n, pp", [(1, None), (6, None), (25, (5, 2)), (7, (7, 1)), (1024, (2, 10))])
def test_prime_power(n, pp):
    assert prime_power(n) == pp


@pytest.mark.parametrize("n, sqf", [(11, True), (14, True), (32, False), (27, False), (1, True)])
def test_squarefree(n, sqf):
    assert is_squarefree(n) == sqf


def test_large_is_prime():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
