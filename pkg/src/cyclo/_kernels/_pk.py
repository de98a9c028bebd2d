"""NumPy implementations of the hot kernels.

Drop-in fallback for the compiled module (same names, same contracts); the
active implementation is chosen in the subpackage __init__.

All coefficient buffers are int64.  Every mul/div pass ends with a range
check against 2**61: inputs within that range cannot wrap in one further
pass, and a wrapped prefix sum necessarily leaves a checked value outside
the range, so silent overflow is impossible.
"""

import numpy as np

from ..errors import OverflowGuardError

BACKEND_NAME = "numpy"

GUARD_LIMIT = 1 << 61


def _guard(c):
    hi = int(c.max()) if c.size else 0
    lo = int(c.min()) if c.size else 0
    worst = max(hi, -lo)
    if worst > GUARD_LIMIT:
        raise OverflowGuardError(
            f"kernel value magnitude {worst} exceeds 2**61 guard"
        )


def mul_one_minus_pass(c, a):
    """In place c(x) *= (1 - x**a), truncated to len(c) coefficients."""
    n = c.shape[0]
    if a < n:
        # RHS is evaluated into a temporary, so the overlap is safe.
        c[a:] = c[a:] - c[: n - a]
    _guard(c)


def div_one_minus_pass(c, a):
    """In place exact c(x) /= (1 - x**a), truncated to len(c) coefficients.

    The quotient satisfies out[k] = c[k] + out[k-a], a prefix sum along each
    residue class mod a.  Small a uses strided accumulate (a vector ops);
    large a adds block b into block b+1 (len(c)/a vector ops).
    """
    n = c.shape[0]
    if a < n:
        if a * a <= n:
            for s in range(a):
                np.add.accumulate(c[s::a], out=c[s::a])
        else:
            for start in range(a, n, a):
                stop = min(start + a, n)
                c[start:stop] += c[start - a : start - a + (stop - start)]
    _guard(c)


def chi_profile(bincoef, p, q, r, deg):
    """Signed window sums out[k] for k in [0, deg].

    out[k] adds bincoef[m] over m >= ceil((k + (p-1)(q-1)) / r) for which
    (k - m*r - q) mod pq < p, and subtracts bincoef[m] for which
    (k - m*r) mod pq < p.  For each offset t in [0, p) the matching m is
    unique mod pq, so the sum reduces to 2p gathered table lookups per k.
    """
    pq = p * q
    assert pq <= (1 << 31)
    rinv = pow(r % pq, -1, pq)
    table = np.ascontiguousarray(bincoef, dtype=np.int64)
    assert table.shape[0] == pq
    ks = np.arange(deg + 1, dtype=np.int64)
    m_floor = (ks + (p - 1) * (q - 1) + r - 1) // r
    out = np.zeros(deg + 1, dtype=np.int64)
    for t in range(p):
        m_plus = (ks - q - t) % pq * rinv % pq
        out += np.where(m_plus >= m_floor, table[m_plus], 0)
        m_minus = (ks - t) % pq * rinv % pq
        out -= np.where(m_minus >= m_floor, table[m_minus], 0)
    return out


def height_scan(c):
    """(height, smallest index attaining it, signed value there)."""
    if c.shape[0] == 0:
        return 0, 0, 0
    hi = int(c.max())
    lo = int(c.min())
    h = max(hi, -lo)
    k = int(np.argmax((c == h) | (c == -h)))
    return h, k, int(c[k])
