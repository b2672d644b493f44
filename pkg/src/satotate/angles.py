"""Satake angles: forms, angle tables, coefficient files and the angle cache."""
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import MissingCoefficient, NonMonotonePrimes, ParseError, WeilViolation
from .pointcount import CurveParams, ap_elliptic
from .primes import is_prime, is_squarefree, iter_prime_segments, sieve_primes

WEIL_TOLERANCE = 1e-9
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class FormParams:
    """Weight, level and conductor proxy of a newform.

    ``Q`` is any base with ``q_{Sym^m f} <= Q^(m+1)`` for all ``m >= 1``.
    """

    k: int
    N: int
    Q: float
    squarefree_level: bool = False
    elliptic: bool = False

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise ValueError(f"weight must be even and >= 2, got {self.k}")
        if self.N < 1:
            raise ValueError("level must be positive")
        if self.Q < 1:
            raise ValueError("conductor proxy Q must be >= 1")

    @classmethod
    def for_level(cls, k, N, elliptic=False, Q=None):
        sqf = is_squarefree(N)
        return cls(k=k, N=N, Q=float(N if Q is None else Q), squarefree_level=sqf,
                   elliptic=elliptic)

    @property
    def kQ(self):
        return (self.k - 1) * self.Q

    @property
    def kN(self):
        return (self.k - 1) * self.N

    @property
    def theorem_grade(self):
        """True when the level hypotheses of the main theorems hold."""
        return (self.squarefree_level or self.elliptic) and self.kQ >= 11


@dataclass(frozen=True)
class PrimeAngle:
    p: int
    a_p: int
    theta: float


def _log_weil_bound(p, k):
    return _LOG2 + 0.5 * (k - 1) * math.log(p)


def normalized_ap(a_p, p, k):
    """``a_p / (2 p^((k-1)/2))`` without overflow; not clamped."""
    if a_p == 0:
        return 0.0
    if k == 2:
        return float(a_p) / (2.0 * math.sqrt(p))
    half = 0.5 * (k - 1) * math.log(p)
    if half < 700.0 and abs(a_p) < 1e300:
        return float(a_p) / (2.0 * p ** (0.5 * (k - 1)))
    mag = math.exp(math.log(abs(a_p)) - _LOG2 - half)
    return mag if a_p > 0 else -mag


def theta_from_ap(a_p, p, k):
    """Satake angle in ``[0, pi]`` with ``a_p = 2 p^((k-1)/2) cos(theta)``.

    Raises :class:`WeilViolation` if ``|a_p|`` exceeds the Weil-Deligne
    bound by more than a relative ``1e-9``.
    """
    c = normalized_ap(a_p, p, k)
    if abs(c) > 1.0 + WEIL_TOLERANCE:
        raise WeilViolation(f"|a_p| = {abs(a_p)} exceeds 2p^((k-1)/2) at p={p}, k={k}")
    return math.acos(min(1.0, max(-1.0, c)))


@dataclass(frozen=True)
class AngleTable:
    """Satake angles of all unramified primes ``p <= xmax``.

    Stored column-wise: ``ps`` (int64), ``aps`` (Python ints, which may
    exceed 64 bits for large weight) and ``thetas`` (float64).
    """

    form: FormParams
    xmax: int
    ps: np.ndarray
    aps: tuple
    thetas: np.ndarray
    label: str = ""
    _logs: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        ps = np.asarray(self.ps, dtype=np.int64)
        th = np.asarray(self.thetas, dtype=np.float64)
        object.__setattr__(self, "ps", ps)
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "aps", tuple(int(a) for a in self.aps))
        if not (len(ps) == len(th) == len(self.aps)):
            raise ValueError("column lengths differ")
        if len(ps) > 1 and not np.all(np.diff(ps) > 0):
            raise ValueError("primes must be strictly increasing")
        if len(ps) and ps[-1] > self.xmax:
            raise ValueError("table entry beyond xmax")
        object.__setattr__(self, "_logs", np.log(ps.astype(np.float64)))
        ps.flags.writeable = False
        th.flags.writeable = False

    def __len__(self):
        return len(self.ps)

    def __iter__(self):
        for p, a, t in zip(self.ps.tolist(), self.aps, self.thetas.tolist()):
            yield PrimeAngle(p, a, t)

    @property
    def entries(self):
        return list(self)

    @property
    def log_ps(self):
        return self._logs

    def upto(self, x):
        """Number of entries with ``p <= x``."""
        return int(np.searchsorted(self.ps, math.floor(x), side="right"))

    def restrict(self, x):
        n = self.upto(x)
        return AngleTable(self.form, int(math.floor(x)), self.ps[:n], self.aps[:n],
                          self.thetas[:n], self.label)


# --- coefficient files ------------------------------------------------------

def load_coefficients(path):
    """Yield ``(p, a_p)`` pairs from a coefficient file.

    One ``p a_p`` pair per line, ``#`` starts a comment, primes strictly
    ascending.
    """
    last = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 2:
                raise ParseError(f"expected 'p a_p', got {raw.strip()!r}", lineno)
            try:
                p, a = int(parts[0]), int(parts[1].replace("−", "-"))
            except ValueError:
                raise ParseError(f"non-integer field in {raw.strip()!r}", lineno) from None
            if not is_prime(p):
                raise ParseError(f"{p} is not prime", lineno)
            if p <= last:
                raise NonMonotonePrimes(f"prime {p} does not follow {last}", lineno)
            last = p
            yield p, a


# --- table construction -----------------------------------------------------

def _curve_block(args):
    curve, primes = args
    return [ap_elliptic(curve, p) for p in primes]


def _unramified(xmax, N):
    ps = sieve_primes(xmax)
    if N > 1:
        ps = ps[N % ps != 0]
    return ps


def compute_curve_aps(curve, primes, workers=1, block=4096):
    """a_p for each prime, fanned out across ``workers`` processes.

    Blocks are merged in order, so the result does not depend on ``workers``.
    """
    primes = [int(p) for p in primes]
    blocks = [primes[i:i + block] for i in range(0, len(primes), block)]
    if workers <= 1 or len(blocks) <= 1:
        return [a for b in blocks for a in _curve_block((curve, b))]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_curve_block, [(curve, b) for b in blocks])
        return [a for part in parts for a in part]


def _thetas(ps, aps, k):
    return np.array([theta_from_ap(a, p, k) for p, a in zip(ps, aps)], dtype=np.float64)


def build_angle_table(source, form, xmax, workers=1, label=None):
    """Build the :class:`AngleTable` of ``form`` up to ``xmax``.

    ``source`` is a :class:`CurveParams` (a_p by point counting) or an
    iterable of ``(p, a_p)`` pairs, e.g. from :func:`load_coefficients`.
    Primes dividing ``form.N`` are skipped.
    """
    xmax = int(xmax)
    if xmax < 0:
        raise ValueError("xmax must be >= 0")
    ps = _unramified(xmax, form.N)
    if isinstance(source, CurveParams):
        aps = compute_curve_aps(source, ps, workers=workers)
        if label is None:
            label = source.label
    else:
        aps = _aps_from_stream(source, ps, form.N)
    thetas = _thetas(ps.tolist(), aps, form.k)
    return AngleTable(form, xmax, ps, aps, thetas, label or "")


def _aps_from_stream(stream, ps, N):
    wanted = iter(ps.tolist())
    out = []
    target = next(wanted, None)
    for p, a in stream:
        if target is None:
            break
        if N % p == 0:
            continue
        if p > target:
            raise MissingCoefficient(f"coefficient for p={target} missing (next is p={p})")
        if p == target:
            out.append(a)
            target = next(wanted, None)
    if target is not None:
        raise MissingCoefficient(f"coefficient stream ends before p={target}")
    return out


def extend_angle_table(table, source, xmax, workers=1):
    """Extend ``table`` to a larger ``xmax`` (curve sources only recompute new primes)."""
    if xmax <= table.xmax:
        return table
    if not isinstance(source, CurveParams):
        return build_angle_table(source, table.form, xmax, label=table.label)
    new = np.concatenate(list(iter_prime_segments(xmax, start=table.xmax + 1)) or
                         [np.array([], dtype=np.int64)])
    if table.form.N > 1 and new.size:
        new = new[table.form.N % new != 0]
    aps = compute_curve_aps(source, new, workers=workers)
    thetas = _thetas(new.tolist(), aps, table.form.k)
    return AngleTable(table.form, xmax, np.concatenate([table.ps, new]),
                      table.aps + tuple(aps), np.concatenate([table.thetas, thetas]),
                      table.label)


# --- angle cache ------------------------------------------------------------

def _fmt_num(v):
    v = float(v)
    return str(int(v)) if v.is_integer() else repr(v)


def cache_header(form, label, xmax):
    return f"# form k={form.k} N={form.N} Q={_fmt_num(form.Q)} label={label} xmax={xmax}"


def write_angle_cache(table, path):
    """Serialize ``table``; rows are ``p,a_p,theta`` with 17 significant digits."""
    lines = [cache_header(table.form, table.label, table.xmax)]
    lines.extend(f"{p},{a},{t:.17g}" for p, a, t in
                 zip(table.ps.tolist(), table.aps, table.thetas.tolist()))
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_cache_header(line):
    if not line.startswith("# form "):
        raise ParseError("missing '# form' header", 1)
    fields = {}
    for tok in line[len("# form "):].split():
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}", 1)
        key, val = tok.split("=", 1)
        fields[key] = val
    try:
        return int(fields["k"]), int(fields["N"]), float(fields["Q"]), \
            fields.get("label", ""), int(fields["xmax"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"incomplete header: {exc}", 1) from None


def read_angle_cache(path, elliptic=None):
    """Load an angle cache written by :func:`write_angle_cache`."""
    with open(path, encoding="utf-8") as fh:
        k, N, Q, label, xmax = parse_cache_header(fh.readline().rstrip("\n"))
        ps, aps, ths = [], [], []
        for lineno, raw in enumerate(fh, 2):
            raw = raw.strip()
            if not raw or raw.startswith("#"):
                continue
            try:
                p, a, t = raw.split(",")
                ps.append(int(p))
                aps.append(int(a))
                ths.append(float(t))
            except ValueError:
                raise ParseError(f"bad cache row {raw!r}", lineno) from None
    if elliptic is None:
        # rational weight-2 newforms are exactly those attached to elliptic curves
        elliptic = k == 2
    form = FormParams(k=k, N=N, Q=Q, squarefree_level=is_squarefree(N), elliptic=elliptic)
    return AngleTable(form, xmax, np.array(ps, dtype=np.int64), aps,
                      np.array(ths, dtype=np.float64), label)


def default_cache_dir():
    return Path(os.environ.get("SATOTATE_CACHE_DIR", Path.home() / ".cache" / "satotate"))
