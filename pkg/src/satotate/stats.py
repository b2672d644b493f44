"""Chebyshev polynomials, the Sato-Tate measure and empirical counts over angle tables."""
import math
from dataclasses import dataclass

import numpy as np

from .angles import normalized_ap
from .errors import EmptyRange, RamifiedUnsupported, RangeExceeded
from .primes import prime_pi, prime_power

_EDGE = 1e-8


@dataclass(frozen=True)
class Interval:
    """Closed subinterval ``[a, b]`` of ``[0, pi]``."""

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a <= self.b <= math.pi):
            raise ValueError(f"need 0 <= a <= b <= pi, got [{self.a}, {self.b}]")

    @property
    def length(self):
        return self.b - self.a

    @property
    def mass(self):
        return mu_ST(self)

    def contains(self, theta):
        return (theta >= self.a) & (theta <= self.b)


FULL = Interval(0.0, math.pi)


@dataclass(frozen=True)
class EmpiricalCounts:
    x: float
    pi_f_I: int
    vartheta_f_I: float
    pi_x: int


def chebyshev_U(m, theta):
    """``U_m(cos theta)``; accepts a scalar or an array of angles in ``[0, pi]``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    th = np.asarray(theta, dtype=np.float64)
    x = np.cos(th)
    u_prev, u = np.ones_like(x), 2.0 * x
    if m == 0:
        out = u_prev
    else:
        for _ in range(m - 1):
            u_prev, u = u, 2.0 * x * u - u_prev
        out = u
    near0 = np.abs(th) < _EDGE
    nearpi = np.abs(th - math.pi) < _EDGE
    if near0.any() or nearpi.any():
        out = np.where(near0, m + 1.0, out)
        out = np.where(nearpi, (-1.0) ** m * (m + 1), out)
    return float(out) if out.ndim == 0 else out


def mu_ST(I):
    """Sato-Tate mass of ``I``."""
    a, b = I.a, I.b
    return ((b - a) - (math.sin(2 * b) - math.sin(2 * a)) / 2.0) / math.pi


def _upto(table, x):
    if x > table.xmax:
        raise RangeExceeded(f"x={x} exceeds the table cap xmax={table.xmax}")
    return table.upto(x)


def _ordered_sum(values, compensated=False):
    if len(values) == 0:
        return 0.0
    if compensated:
        return math.fsum(values.tolist())
    # cumsum is a strict left-to-right reduction, so the order is ascending p
    return float(np.cumsum(values)[-1])


def pi_f_I(table, x, I):
    n = _upto(table, x)
    return int(np.count_nonzero(I.contains(table.thetas[:n])))


def vartheta_f_I(table, x, I, compensated=False):
    n = _upto(table, x)
    mask = I.contains(table.thetas[:n])
    return _ordered_sum(table.log_ps[:n][mask], compensated)


def Theta_m(table, x, m, compensated=False):
    """``sum_{p <= x, p not | N} U_m(cos theta_p) log p``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    n = _upto(table, x)
    if n == 0:
        return 0.0
    terms = chebyshev_U(m, table.thetas[:n]) * table.log_ps[:n]
    return _ordered_sum(np.atleast_1d(terms), compensated)


def empirical_counts(table, x, I):
    return EmpiricalCounts(x=x, pi_f_I=pi_f_I(table, x, I),
                           vartheta_f_I=vartheta_f_I(table, x, I), pi_x=prime_pi(x))


def lambda_sym_abs_bound(n, m):
    """``(m+1) Lambda(n)``, valid at every prime power including ramified ones."""
    pp = prime_power(n)
    return 0.0 if pp is None else (m + 1) * math.log(pp[0])


def lambda_sym_coeff(table, n, m):
    """Coefficient ``Lambda_{Sym^m f}(n)`` from the unramified Satake angles."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pp = prime_power(n)
    if pp is None:
        return 0.0
    p, ell = pp
    if table.form.N % p == 0:
        raise RamifiedUnsupported(
            f"p={p} divides N={table.form.N}; only |Lambda| <= (m+1) log p is available",
            bound=lambda_sym_abs_bound(n, m))
    if p > table.xmax:
        raise RangeExceeded(f"p={p} exceeds the table cap xmax={table.xmax}")
    i = int(np.searchsorted(table.ps, p))
    theta = float(table.thetas[i])
    # cos(l theta) lies in [-1, 1]; map back to an angle in [0, pi]
    angle = math.acos(max(-1.0, min(1.0, math.cos(ell * theta))))
    return chebyshev_U(m, angle) * math.log(p)


def statement_threshold(p):
    """``log log p / sqrt(log p)``."""
    lp = math.log(p)
    return math.log(lp) / math.sqrt(lp)


def proof_threshold(x, k, N):
    """``log((k-1) N log x) / sqrt(log x)``."""
    lx = math.log(x)
    return math.log((k - 1) * N * lx) / math.sqrt(lx)


@dataclass(frozen=True)
class AtkinSerreCount:
    mode: str
    exceptional: int
    total: int
    threshold: object  # a float in proof mode, a description in statement mode

    @property
    def ratio(self):
        return self.exceptional / self.total if self.total else None


def atkin_serre_flags(table, x, mode="statement", threshold=None):
    """``[(p, exceptional)]`` for the unramified ``x < p <= 2x``.

    A prime is exceptional when ``|cos theta_p|`` is at or below the
    threshold: ``log log p / sqrt(log p)`` per prime in ``statement`` mode,
    the single value ``ell(x)`` (or ``threshold``) in ``proof`` mode.
    """
    if x < 3:
        raise ValueError("x must be >= 3")
    if 2 * x > table.xmax:
        raise RangeExceeded(f"2x={2 * x} exceeds the table cap xmax={table.xmax}")
    lo, hi = table.upto(x), table.upto(2 * x)
    ps = table.ps[lo:hi].tolist()
    k = table.form.k
    cos_abs = [abs(normalized_ap(a, p, k)) for p, a in zip(ps, table.aps[lo:hi])]
    if mode == "statement":
        return [(p, c <= statement_threshold(p)) for p, c in zip(ps, cos_abs)]
    if mode == "proof":
        t = proof_threshold(x, k, table.form.N) if threshold is None else threshold
        return [(p, c <= t) for p, c in zip(ps, cos_abs)]
    raise ValueError(f"unknown mode {mode!r}")


def atkin_serre_exceptions(table, x, mode="statement", threshold=None):
    """``(exceptional, total)`` over ``x < p <= 2x``; see :func:`atkin_serre_flags`."""
    flags = atkin_serre_flags(table, x, mode, threshold)
    return sum(f for _, f in flags), len(flags)


def atkin_serre_report(table, x, mode, threshold=None):
    exc, tot = atkin_serre_exceptions(table, x, mode, threshold)
    if mode == "proof":
        thr = proof_threshold(x, table.form.k, table.form.N) if threshold is None else threshold
    else:
        thr = "loglog(p)/sqrt(log p)"
    return AtkinSerreCount(mode, exc, tot, thr)


def endpoint_grid(step):
    if step <= 0:
        raise ValueError("grid_step must be > 0")
    n = int(math.floor(math.pi / step))
    pts = [i * step for i in range(n + 1) if i * step < math.pi - 1e-12]
    return np.array(pts + [math.pi])


def discrepancy_scan(table, x, grid_step):
    """Worst grid interval for ``|pi_{f,I}(x)/pi(x) - mu_ST(I)|``.

    Endpoints range over ``{0, step, 2 step, ...} U {pi}`` with ``a < b``;
    ``pi(x)`` comes from the sieve, not from the table.
    """
    n = _upto(table, x)
    total = prime_pi(x)
    if total == 0:
        raise EmptyRange(f"pi({x}) = 0")
    grid = endpoint_grid(grid_step)
    th = np.sort(table.thetas[:n])
    below = np.searchsorted(th, grid, side="left")   # theta < g
    upto = np.searchsorted(th, grid, side="right")   # theta <= g
    counts = upto[None, :] - below[:, None]
    F = (grid - np.sin(2 * grid) / 2.0) / math.pi
    mass = F[None, :] - F[:, None]
    dev = np.abs(counts / total - mass)
    ia, ib = np.triu_indices(len(grid), k=1)
    flat = dev[ia, ib]
    j = int(np.argmax(flat))
    I = Interval(float(grid[ia[j]]), float(grid[ib[j]]))
    return I, float(flat[j])


def histogram(table, x, bins=32):
    """Per-bin empirical mass of the angles and the Sato-Tate mass of each bin."""
    n = _upto(table, x)
    edges = np.linspace(0.0, math.pi, bins + 1)
    counts, _ = np.histogram(table.thetas[:n], bins=edges)
    emp = counts / n if n else np.zeros(bins)
    F = (edges - np.sin(2 * edges) / 2.0) / math.pi
    return edges, emp, np.diff(F)
