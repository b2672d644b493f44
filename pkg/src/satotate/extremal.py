"""Majorant and minorant polynomials for interval indicators on [0, pi].

The construction works on the circle ``theta in [-pi, pi]``: an interval
``[a, b]`` becomes the even set ``[a, b] U [-b, -a]``, each arc is sandwiched
with Vaaler's polynomial plus a Fejer-kernel correction, and the resulting
cosine series is rewritten in the basis ``U_m(cos theta)`` using
``cos(m theta) = (U_m - U_{m-2}) / 2``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionFailure, DegreeOutOfRange
from .stats import Interval, mu_ST

GRID_POINTS = 10_000
SANDWICH_TOL = 1e-9


@dataclass(frozen=True)
class TrigPolyU:
    """``sum_m coeffs[m] U_m(cos theta)`` of degree ``M`` with a majorant/minorant role."""

    M: int
    sign: str
    coeffs: np.ndarray
    interval: Interval

    def __post_init__(self):
        if self.sign not in ("plus", "minus"):
            raise ValueError("sign must be 'plus' or 'minus'")
        c = np.asarray(self.coeffs, dtype=np.float64)
        if len(c) != self.M + 1:
            raise ValueError("need M+1 coefficients")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __call__(self, theta):
        return eval_poly(self, theta)


def coeff_envelope(I, M, m, which=None):
    """Admissible size of the ``m``-th coefficient deviation.

    ``which='const'`` (or ``m == 0``) bounds ``|F(0) - mu_ST(I)|``;
    ``which='general'`` bounds ``|F(m)|`` for ``m >= 1``.
    """
    if M < 1:
        raise DegreeOutOfRange(f"M must be >= 1, got {M}")
    if not 0 <= m <= M:
        raise DegreeOutOfRange(f"m={m} outside 0..{M}")
    if which is None:
        which = "const" if m == 0 else "general"
    if which == "const":
        if m != 0:
            raise DegreeOutOfRange("the constant envelope applies to m = 0 only")
        return 4.0 / (M + 1)
    if which != "general" or m == 0:
        raise DegreeOutOfRange("the general envelope applies to 1 <= m <= M")
    return 4.0 * (1.0 / (M + 1) + min((I.b - I.a) / (2 * math.pi), 1.0 / (math.pi * m)))


def _vaaler_weights(K):
    u = np.arange(1, K + 1) / (K + 1)
    return math.pi * u * (1 - u) / np.tan(math.pi * u) + u


def _arc_coeffs(alpha, beta, K, sgn):
    """Fourier coefficients ``g(k), k = -K..K`` of the arc sandwich in ``t = theta / (2 pi)``."""
    k = np.arange(-K, K + 1)
    ak = np.abs(k)
    v = np.zeros(2 * K + 1, dtype=complex)
    nz = k != 0
    J = np.zeros(2 * K + 1)
    J[nz] = _vaaler_weights(K)[ak[nz] - 1]
    # V(t) = sum_{k != 0} v_k e(kt), v_k = i J(|k|/(K+1)) / (2 pi k)
    v[nz] = 1j * J[nz] / (2 * math.pi * k[nz])
    fejer = 1.0 - ak / (K + 1)
    eb, ea = np.exp(-2j * math.pi * k * beta), np.exp(-2j * math.pi * k * alpha)
    # chi = (beta - alpha) + psi(t - beta) + psi(alpha - t)
    g = v * eb + v[::-1] * ea + sgn * fejer * (eb + ea) / (2 * K + 2)
    g[K] += beta - alpha
    return g


def _cosine_coeffs(I, M, sgn):
    a, b = I.a / (2 * math.pi), I.b / (2 * math.pi)
    if I.a <= 0.0 and I.b >= math.pi:
        c = np.zeros(M + 1)
        c[0] = 1.0
        return c
    if I.a <= 0.0:
        arcs = [(-b, b)]
    elif I.b >= math.pi:
        arcs = [(a, 1.0 - a)]
    else:
        arcs = [(a, b), (-b, -a)]
    g = sum(_arc_coeffs(al, be, M, sgn) for al, be in arcs)
    pos = g[M:]
    c = np.empty(M + 1)
    c[0] = pos[0].real
    c[1:] = 2.0 * pos[1:].real
    return c


def cos_to_u(c):
    """Rewrite ``sum c_j cos(j theta)`` as ``sum F_j U_j(cos theta)``."""
    c = np.asarray(c, dtype=np.float64)
    F = c.copy()
    F[1:] *= 0.5
    F[:-2] -= 0.5 * c[2:]
    return F


def eval_poly(P, theta):
    """Clenshaw evaluation of ``sum F(m) U_m(cos theta)``."""
    coeffs = P.coeffs if isinstance(P, TrigPolyU) else np.asarray(P, dtype=np.float64)
    x = np.cos(np.asarray(theta, dtype=np.float64))
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for c in coeffs[::-1]:
        b1, b2 = c + 2.0 * x * b1 - b2, b1
    return float(b1) if b1.ndim == 0 else b1


def verification_grid(I=None, n=GRID_POINTS):
    grid = np.linspace(0.0, math.pi, n)
    if I is not None:
        grid = np.union1d(grid, [I.a, I.b])
    return grid


def sandwich_margin(P, grid=None):
    """``min(F - chi)`` for a majorant, ``min(chi - F)`` for a minorant."""
    I = P.interval
    grid = verification_grid(I) if grid is None else grid
    chi = ((grid >= I.a) & (grid <= I.b)).astype(np.float64)
    diff = eval_poly(P, grid) - chi
    return float(np.min(diff if P.sign == "plus" else -diff))


def envelope_violations(P):
    """Indices ``m`` whose coefficient breaks the admissible envelope."""
    I, M, F = P.interval, P.M, P.coeffs
    bad = []
    if abs(F[0] - mu_ST(I)) > coeff_envelope(I, M, 0):
        bad.append(0)
    bad.extend(m for m in range(1, M + 1) if abs(F[m]) > coeff_envelope(I, M, m))
    return bad


def build_selberg(I, M, sign):
    """Degree-``M`` majorant (``sign='plus'``) or minorant of the indicator of ``I``.

    The sandwich inequality is checked on a 10^4-point grid (plus the
    endpoints of ``I``); a failure raises :class:`ConstructionFailure`.
    """
    if M < 1:
        raise DegreeOutOfRange(f"M must be >= 1, got {M}")
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    c = _cosine_coeffs(I, M, 1.0 if sign == "plus" else -1.0)
    P = TrigPolyU(M, sign, cos_to_u(c), I)
    margin = sandwich_margin(P)
    if margin < -SANDWICH_TOL:
        raise ConstructionFailure(f"sandwich violated by {-margin:.3e} for {I}, M={M}, {sign}")
    return P
