"""Explicit bound evaluators.

Every function is a pure closed-form evaluation. Functions that take ``x``
also take ``u = log x`` where the quantity is meaningful far beyond the
range of doubles.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from scipy import integrate

from .constants import (LI_DEV, LI_DEV_SCALE, PI_CONVERSION, REGISTRY, SIGMA0, THETA_DEV,
                        THETA_RATIO)
from .errors import DomainError, FormGateError, HypothesisError, ModeRangeError, ParseError, \
    RangeError
from .primes import prime_pi
from .stats import Interval, mu_ST

C = REGISTRY
AS_CONSTANT = 179.0
LOG3 = math.log(3.0)


@dataclass
class BoundReport:
    """An evaluated bound, optionally paired with the empirical quantity it should dominate."""

    bound_name: str
    inputs: dict
    value: float
    dominated_quantity: Optional[float] = None
    satisfied: Optional[bool] = None
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.dominated_quantity is not None and self.value is not None:
            self.satisfied = bool(self.dominated_quantity <= self.value)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        r = cls(d["bound_name"], dict(d["inputs"]), d["value"], d.get("dominated_quantity"),
                None, list(d.get("notes", [])))
        if r.satisfied is None:
            r.satisfied = d.get("satisfied")
        return r


def _gate(k, Q):
    if (k - 1) * Q < 11:
        raise FormGateError(f"(k-1)Q = {(k - 1) * Q} < 11")


def _log_x(x, u):
    if u is not None:
        return float(u)
    if x is None or x <= 0:
        raise DomainError("need x > 0 or u = log x")
    return math.log(x)


# --- recurring quantities ----------------------------------------------------

def ell(x=None, C_=None, *, u=None):
    """``log(C log x) / sqrt(log x)`` with ``C = (k-1)N`` or ``(k-1)Q``."""
    if C_ is None:
        raise DomainError("C is required")
    lx = _log_x(x, u)
    if lx <= 0 or C_ * lx <= 1:
        raise DomainError(f"need log x > 0 and C log x > 1 (C={C_}, log x={lx})")
    return math.log(C_ * lx) / math.sqrt(lx)


def triviality_bound(x):
    if x < 0:
        raise DomainError("x must be >= 0")
    return (1 + THETA_RATIO) * x


def li(x):
    """``int_2^x dt / log t`` by adaptive quadrature."""
    if x < 2:
        raise DomainError("li is integrated from 2; need x >= 2")
    if x == 2:
        return 0.0
    # substitute t = e^s: the integrand e^s / s is smooth on [log 2, log x]
    val, _ = integrate.quad(lambda s: math.exp(s) / s, math.log(2.0), math.log(x),
                            epsabs=0.0, epsrel=1e-12, limit=200)
    return val


@dataclass(frozen=True)
class ClassicalPrimeBounds:
    x: float
    theta_upper: Optional[float]
    theta_dev: Optional[float]
    pi_lower: Optional[float]
    pi_upper: Optional[float]
    pi_li_dev: Optional[float]
    li: Optional[float]
    notes: tuple = ()


def classical_prime_bounds(x):
    """Dusart/Trudgian inputs at ``x``; fields outside their validity range are ``None``."""
    notes = []
    lx = math.log(x) if x > 0 else float("nan")

    def field_(ok, fn, name, rng):
        if ok:
            return fn()
        notes.append(f"{name}: outside validity range {rng}")
        return None

    return ClassicalPrimeBounds(
        x=x,
        theta_upper=field_(x > 0, lambda: (1 + THETA_RATIO) * x, "theta_upper", "x > 0"),
        theta_dev=field_(x >= 2, lambda: THETA_DEV * x / lx, "theta_dev", "x >= 2"),
        pi_lower=field_(x >= 5393, lambda: x / (lx - 1), "pi_lower", "x >= 5393"),
        pi_upper=field_(x > 60184, lambda: x / (lx - 1.1), "pi_upper", "x > 60184"),
        pi_li_dev=field_(x >= 229, lambda: LI_DEV * x / lx ** 0.75
                         * math.exp(-math.sqrt(lx / LI_DEV_SCALE)), "pi_li_dev", "x >= 229"),
        li=field_(x >= 2, lambda: li(x), "li", "x >= 2"),
        notes=tuple(notes),
    )


def theta0_integral_bound(x, y, N):
    if y < 0 or x - y < 3:
        raise DomainError("need y >= 0 and x - y >= 3")
    return math.log(N) + C.c60 * (x + y) / math.log(x + y)


def prime_power_correction(x, y, m, N):
    if x <= 0 or y <= 0 or m < 1:
        raise DomainError("need x, y > 0 and m >= 1")
    return ((1 + THETA_RATIO) * (m + 1) * math.sqrt(x) * (1 + y / x) * math.log(x + y)
            + (m + 1) * math.log(N))


# --- zero-free region and analytic conductors ----------------------------------

def eta_m(m, T, k, Q):
    """Width of the zero-free region up to height ``T``."""
    _gate(k, Q)
    if m < 1 or T < 0:
        raise DomainError("need m >= 1 and T >= 0")
    return C.zfr5 / ((m + 7) ** 2
                     * math.log(C.zfr3 * (k - 1) * Q * (m + 7) * math.sqrt(T * T + 1)))


def min_rho(m, k, Q):
    """Lower bound for ``|rho|`` over nontrivial zeros (equals ``eta_m`` at ``T = 0``)."""
    return eta_m(m, 0.0, k, Q)


def generic_zfr(a0, a1, b0, b1, logC):
    if not (b0 >= a0 > 0 and b1 >= a1 >= 0 and b1 * a0 >= a1 * b0):
        raise HypothesisError("need b0 >= a0 > 0, b1 >= a1 >= 0 and b1/b0 >= a1/a0")
    if logC <= 0:
        raise HypothesisError("need log C > 0")
    gap = math.sqrt(b0) - math.sqrt(a0)
    return 2 * gap * gap / (logC + 2 / C.zfr1 * math.sqrt(a0) * gap)


def logC_sym(m, t, k, log_q):
    if m < -1:
        raise DomainError("m must be >= -1")
    return (log_q + (m + 1) * math.log((k - 1) * math.sqrt(1 + t * t) / (2 * math.e))
            + (m + 4) * math.log(m + 4) - C.zfr2)


def logC_mxm(m, k, Q):
    if m < 0 or Q < 1:
        raise DomainError("need m >= 0 and Q >= 1")
    return (m * m + 2 * m) * math.log((k - 1) * Q) + (m + 3) ** 2 * math.log(C.zfr3 * (m + 3)) \
        - C.zfr4


# --- zero counting -----------------------------------------------------------

def g_coefficients(m, k, Q):
    """``(G1, .., G5)`` with ``N(T) <= G1 T log T + G2 T + G3 log T + G4 + G5 / T``."""
    A = (k - 1) * Q * (m + 2)
    G1 = (m + 1) / math.pi
    G2 = ((m + 1) * math.log(math.sqrt(2) / (2 * math.pi * math.e) * A) + math.log(m + 2)) / math.pi
    G3 = C.b4 * (m + 1) / math.pi
    G4 = C.b4 * (m + 1) * math.log(C.b100 * A) / math.pi
    G5 = (C.b130 + (m + 3) / 6) / math.pi
    return G1, G2, G3, G4, G5


def zero_count_bound(T, m, k, Q, mode="full"):
    """Upper bound for the number of nontrivial zeros with ``|gamma| <= T``.

    ``full`` holds for ``T >= 1``, ``T200`` for ``T >= 200`` and ``T1`` only at ``T = 1``.
    """
    _gate(k, Q)
    if m < 1:
        raise DomainError("m must be >= 1")
    if T < 1:
        raise ModeRangeError(f"T={T} < 1")
    A = (k - 1) * Q * (m + 2)
    if mode == "full":
        return ((m + 1) * T * math.log(math.sqrt(2) / (2 * math.pi * math.e) * A * T)
                + T * math.log(m + 2) + C.b4 * (m + 1) * math.log(C.b100 * A * T)
                + (m + 3 + 6 * C.b130) / (6 * T)) / math.pi
    if mode == "T200":
        if T < 200:
            raise ModeRangeError(f"T200 mode needs T >= 200 (got {T})")
        return C.c303 * (m + 1) * T * math.log(A * T)
    if mode == "T1":
        if T != 1:
            raise ModeRangeError(f"T1 mode bounds N(1) only (got T={T})")
        return C.c310 * (m + 1) * math.log(A)
    raise ModeRangeError(f"unknown mode {mode!r}")


def N1_bound(T, m, k, Q):
    aT = abs(T)
    if aT < 1:
        raise DomainError("need |T| >= 1")
    arg = Q * (aT + SIGMA0 + 1 + (k - 1) * (1 + m / 2))
    return math.sqrt(5) * ((m + 1) / 2 * math.log(arg) + C.new1 * m + C.new2 + 1 / aT)


def log_deriv_gamma_bound(sigma, T, m, k):
    aT = abs(T)
    if sigma < 0.5 or aT < 1:
        raise DomainError("need sigma >= 1/2 and |T| >= 1")
    return (0.5 * (m + 1) * math.log(aT + sigma + 1 + (k - 1) * (1 + m / 2))
            + C.b1 * m + C.b2 + 1 / aT)


def rho_term_envelope(x, y, beta, abs_rho, abs_rho_plus_1):
    """Per-zero bound for ``|((x+y)^(rho+1) - x^(rho+1)) / (y rho (rho+1))|``."""
    if x <= 0 or y <= 0 or not 0 < beta < 1:
        raise DomainError("need x, y > 0 and 0 < beta < 1")
    first = (1 + y / (2 * x) * abs_rho) * x ** beta / abs_rho
    second = x * (2 * x / y + 2 + y / x) / (abs_rho * abs_rho_plus_1)
    return min(first, second)


def _check_T200(T, m):
    if T < 200:
        raise RangeError(f"needs T >= 200 (got {T})")
    if m < 1:
        raise RangeError("needs m >= 1")


def sum_inv_gamma_bound(T, m, k, Q):
    _check_T200(T, m)
    return C.c233 * (m + 1) * math.log((k - 1) * Q * (m + 2) * T) ** 2


def sum_inv_gamma_sq_bound(T, m, k, Q):
    _check_T200(T, m)
    return C.c220 * (m + 1) * math.log((k - 1) * Q * (m + 2) * T) / T


# --- R1, R2, R3 and the Erdos-Turan aggregate ---------------------------------

def R1_bound(x, y, m, T, k, Q):
    """Contribution of the nontrivial zeros."""
    _check_T200(T, m)
    if x <= 0 or y <= 0:
        raise RangeError("need x, y > 0")
    L = math.log((k - 1) * Q * (m + 2) * T)
    eT, e1 = eta_m(m, T, k, Q), eta_m(m, 1.0, k, Q)
    bracket = (x ** (1 - eT) * C.c233 * L + y * x ** (-eT) * C.c303 / 2 * T
               + x * (2 * x / y + 2 + y / x) * C.c220 / T)
    low = (x ** (1 - e1) * C.c310 / C.zfr5 * (m + 1) * (m + 7) ** 2
           * math.log(C.zfr3 * (k - 1) * Q * (m + 7)) ** 2)
    return (m + 1) * L * bracket + low


def R2_bound(x, m):
    if x <= 0:
        raise DomainError("x must be > 0")
    return 2 * (m + 1) / (3 * math.sqrt(x))


def R3_bound(x, y, m, k, Q):
    if x <= 1 or y < 0 or m < 1:
        raise DomainError("need x > 1, y >= 0, m >= 1")
    lead = (C.c310 / C.zfr5 * (m + 1) * math.log((k - 1) * Q * (m + 2)) * (m + 7) ** 2
            * math.log(C.zfr3 * (k - 1) * Q * (m + 7)))
    return (lead + 3 * (m + 1) * math.log((k - 1) * Q * (m + 1)) + C.reslast * (m + 1)
            + math.log(x + y) + 1 / x)


def erdos_turan_bound(x, y, M, theta0_dev, theta_devs):
    devs = list(theta_devs)
    if M < 1 or len(devs) != M:
        raise DomainError("need M >= 1 and exactly M deviations")
    if not 1 < x - y < x:
        raise DomainError("need 1 < x - y < x")
    if theta0_dev < 0 or any(d < 0 for d in devs):
        raise DomainError("deviations must be >= 0")
    w = 1.0 / (M + 1)
    tail = sum((w + 1 / (math.pi * m)) * d for m, d in enumerate(devs, 1))
    return 4 * x * w + (0.5 + 2 * w) * y + (1 + 4 * w) * theta0_dev + 4 * tail


# --- parameter choice and the headline bounds ---------------------------------

@dataclass(frozen=True)
class Parameters:
    u: float
    M_f: float
    M: int
    T: float
    y_over_x: float
    triviality_regime: bool


def choose_parameters(u, k, Q):
    """``M``, ``T`` and ``y/x`` as functions of ``u = log x``."""
    if u < LOG3:
        raise DomainError("need u >= log 3")
    kQ = (k - 1) * Q
    lg = math.log(kQ * u)
    root = math.sqrt(1.01 * C.zfr5)
    M_f = math.sqrt(C.zfr5 * u) / (2 * lg)
    M = math.floor(M_f - 7)
    T = 2 * kQ / (C.zfr3 * root) * u ** 1.5 * lg
    y_over_x = C.zfr3 * root / (2 * math.sqrt(u) * lg)
    if M >= 1:
        assert T >= 200, "parameter choice left the T >= 200 regime"
    return Parameters(u, M_f, M, T, y_over_x, M < 1)


@dataclass(frozen=True)
class MainBound:
    theorem_rhs: float
    effective: float
    log_space: bool


def main_theorem_bound(x=None, k=2, Q=11, *, u=None, form=None):
    """``c99 x ell(x)`` capped by the trivial bound.

    With ``u`` given the values are divided by ``x``.
    """
    _gate(k, Q)
    if form is not None and not (form.squarefree_level or form.elliptic):
        raise FormGateError("needs squarefree level or an elliptic curve")
    lx = _log_x(x, u)
    if lx < LOG3 - 1e-15:
        raise DomainError("need x >= 3")
    ratio = C.c99 * ell(C_=(k - 1) * Q, u=lx)
    if u is not None:
        return MainBound(ratio, min(ratio, 1 + THETA_RATIO), True)
    rhs = ratio * x
    return MainBound(rhs, min(rhs, triviality_bound(x)), False)


def pi_theorem_bound(x, k, N, pi_x=None, *, squarefree=None, elliptic=False):
    if squarefree is None:
        from .primes import is_squarefree
        squarefree = is_squarefree(N)
    if not (squarefree or elliptic):
        raise FormGateError("pi-version bound needs squarefree level or an elliptic curve")
    if x < 3:
        raise DomainError("need x >= 3")
    if pi_x is None:
        pi_x = x / (math.log(x) - 1.1) if x > 60184 else prime_pi(x)
    return C.c100 * pi_x * ell(x, (k - 1) * N)


def pi_conversion_check():
    """``(1.000015 c99, c100)``; the first must not exceed the second."""
    return PI_CONVERSION * C.c99, C.c100


def atkin_serre_constant():
    """``(c101 (c100 + 4/pi), 179)``: the assembled and the stated constant."""
    return C.c101 * (C.c100 + 4 / math.pi), AS_CONSTANT


def atkin_serre_bound(x, k, N):
    if x < 3:
        raise DomainError("need x >= 3")
    return AS_CONSTANT * ell(x, (k - 1) * N)


def dyadic_count_bound(x, k, N, I: Interval, pi_2x, pi_x):
    if x < 3:
        raise DomainError("need x >= 3")
    return C.c101 * (pi_2x - pi_x) * (mu_ST(I) + C.c100 * ell(x, (k - 1) * N))


# --- zero-count audit ---------------------------------------------------------

def read_ordinates(path):
    """Nonnegative ordinates, one per line, ``#`` comments."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                g = float(line)
            except ValueError:
                raise ParseError(f"not a number: {line!r}", lineno) from None
            if not math.isfinite(g) or g < 0:
                raise ParseError(f"ordinate must be finite and >= 0, got {line!r}", lineno)
            out.append(g)
    return out


def count_zeros(ordinates, T):
    """Zeros with ``|gamma| <= T``: positive ordinates count with their conjugate."""
    pos = sum(1 for g in ordinates if 0 < g <= T)
    central = sum(1 for g in ordinates if g == 0)
    return 2 * pos + central


def check_zero_count(ordinates, T, m, k, Q, mode="auto"):
    """Compare an ordinate list (or file) with :func:`zero_count_bound`."""
    if isinstance(ordinates, (str, bytes)) or hasattr(ordinates, "__fspath__"):
        ordinates = read_ordinates(ordinates)
    if mode == "auto":
        mode = "T200" if T >= 200 else "full"
    bound = zero_count_bound(T, m, k, Q, mode)
    return BoundReport("zero_count_bound", {"T": T, "m": m, "k": k, "Q": Q, "mode": mode},
                       bound, float(count_zeros(ordinates, T)))
