"""q-expansion of the discriminant form Delta = q prod (1 - q^n)^24."""
import numpy as np


def ramanujan_tau(nmax):
    """Return ``[tau(0), tau(1), ..., tau(nmax)]`` (``tau(0) = 0``) as Python ints.

    Uses ``Delta = q * (eta^3)^8`` with Jacobi's identity
    ``prod (1 - q^n)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}``, so each of
    the eight factors is a sparse multiplication.
    """
    n = int(nmax)
    if n < 1:
        return [0] * (n + 1)
    length = n  # coefficients of q^0..q^(n-1) of (eta^3)^8
    sparse = []
    j = 0
    while j * (j + 1) // 2 < length:
        sparse.append((j * (j + 1) // 2, (-1) ** j * (2 * j + 1)))
        j += 1
    acc = np.zeros(length, dtype=object)
    acc[0] = 1
    for _ in range(8):
        out = np.zeros(length, dtype=object)
        for shift, coeff in sparse:
            out[shift:] += coeff * acc[:length - shift]
        acc = out
    return [0] + [int(c) for c in acc]


def write_delta_coefficients(path, xmax):
    """Write ``p tau(p)`` for primes ``p <= xmax`` in the coefficient-file format."""
    from .primes import sieve_primes

    tau = ramanujan_tau(int(xmax))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# Delta (k=12, N=1): p tau(p) for p <= {int(xmax)}\n")
        for p in sieve_primes(int(xmax)).tolist():
            fh.write(f"{p} {tau[p]}\n")
