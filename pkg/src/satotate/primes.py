"""Segmented sieve of Eratosthenes and small prime utilities."""
from math import isqrt, log

import numpy as np

DEFAULT_SEGMENT = 1 << 18


def _small_sieve(limit):
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def iter_prime_segments(limit, segment=DEFAULT_SEGMENT, start=2):
    """Yield ascending arrays of the primes in ``[start, limit]``, one per segment.

    Memory stays at O(sqrt(limit) + segment).
    """
    if limit < 2 or start > limit:
        return
    start = max(start, 2)
    base = _small_sieve(isqrt(limit))
    low = start
    while low <= limit:
        high = min(low + segment, limit + 1)
        mask = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            first = max(p * p, -(-low // p) * p)
            mask[first - low::p] = False
        if low <= 1:
            mask[:2 - low] = False
        idx = np.flatnonzero(mask)
        if idx.size:
            yield idx.astype(np.int64) + low
        low = high


def sieve_primes(limit, segment=DEFAULT_SEGMENT):
    """Return all primes ``<= limit`` in ascending order as an int64 array."""
    parts = list(iter_prime_segments(int(limit), segment))
    if not parts:
        return np.array([], dtype=np.int64)
    return np.concatenate(parts)


def primes_between(lo, hi, segment=DEFAULT_SEGMENT):
    """Primes ``p`` with ``lo <= p <= hi``."""
    parts = list(iter_prime_segments(int(hi), segment, start=int(lo)))
    if not parts:
        return np.array([], dtype=np.int64)
    return np.concatenate(parts)


def prime_pi(x):
    """Exact prime counting function via the sieve."""
    if x < 2:
        return 0
    return int(sum(seg.size for seg in iter_prime_segments(int(x))))


def chebyshev_theta(x):
    """Exact-summation Chebyshev function sum_{p <= x} log p (ascending order)."""
    total = 0.0
    for seg in iter_prime_segments(int(x)):
        for p in seg.tolist():
            total += log(p)
    return total


def is_prime(n):
    n = int(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n < 9:
        return True
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        y = pow(a, d, n)
        if y in (1, n - 1):
            continue
        for _ in range(s - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


def factorize(n):
    """Trial-division factorization, returned as ``{p: e}``."""
    n = int(n)
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n):
    """Return ``(p, l)`` if ``n = p**l`` with ``l >= 1``, else ``None``."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


def is_squarefree(n):
    return all(e == 1 for e in factorize(n).values())
