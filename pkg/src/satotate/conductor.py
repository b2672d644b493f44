"""Conductor bounds for symmetric powers of elliptic curves, in log space."""
import math
from dataclasses import dataclass

from .errors import InvalidReduction, UnsupportedForm
from .primes import factorize, is_prime, is_squarefree

MULTIPLICATIVE = "multiplicative"
ADDITIVE = "additive"


@dataclass(frozen=True)
class ReductionData:
    """Reduction type and ``v_p(N)`` at each bad prime, as ``{p: (type, v)}``."""

    local: dict

    def __post_init__(self):
        for p, (kind, v) in self.local.items():
            if not is_prime(p):
                raise InvalidReduction(f"{p} is not prime")
            if kind == MULTIPLICATIVE and v != 1:
                raise InvalidReduction(f"multiplicative reduction at {p} needs v_p(N) = 1")
            if kind == ADDITIVE and v < 2:
                raise InvalidReduction(f"additive reduction at {p} needs v_p(N) >= 2")
            if kind not in (MULTIPLICATIVE, ADDITIVE):
                raise InvalidReduction(f"unknown reduction type {kind!r}")

    @property
    def N(self):
        return math.prod(p ** v for p, (_, v) in self.local.items())

    @classmethod
    def from_level(cls, N):
        """Infer reduction types from ``N``: ``v_p = 1`` multiplicative, otherwise additive."""
        return cls({p: (MULTIPLICATIVE if v == 1 else ADDITIVE, v)
                    for p, v in factorize(N).items()})

    @classmethod
    def parse(cls, text):
        """Parse ``"2:additive:5,11:multiplicative:1"``."""
        local = {}
        for item in filter(None, (t.strip() for t in text.split(","))):
            try:
                p, kind, v = item.split(":")
                local[int(p)] = ({"m": MULTIPLICATIVE, "a": ADDITIVE}.get(kind, kind), int(v))
            except ValueError:
                raise InvalidReduction(f"bad reduction item {item!r}") from None
        return cls(local)


def wild_exponent(v, m):
    """``d_p = max(0, v/2 - 1)(m+1)`` for additive reduction at 2 or 3."""
    return max(0.0, v / 2 - 1) * (m + 1)


def sym_conductor_proof_bound(red, m):
    """Log of ``2^{d_2} 3^{d_3} prod_mult p^m prod_add p^{m+1}``."""
    if m < 1:
        raise InvalidReduction("m must be >= 1")
    total = 0.0
    for p, (kind, v) in sorted(red.local.items()):
        lp = math.log(p)
        if kind == MULTIPLICATIVE:
            total += m * lp
        else:
            total += (m + 1) * lp
            if p in (2, 3):
                total += wild_exponent(v, m) * lp
    return total


def sym_conductor_theorem_bound(N, m):
    """Log of ``N^{m+1}``."""
    if m < 1:
        raise InvalidReduction("m must be >= 1")
    return (m + 1) * math.log(N)


def q_proxy(form):
    """A base ``Q`` with ``q_{Sym^m f} <= Q^{m+1}`` for all ``m``; here always ``N``."""
    if form.squarefree_level or form.elliptic or is_squarefree(form.N):
        return float(form.N)
    raise UnsupportedForm(
        f"no bound q <= N^(O(m)) is available for non-squarefree level N={form.N} "
        "outside the elliptic-curve case")
