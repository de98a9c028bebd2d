# cython: language_level=3
"""Compiled implementations of the hot kernels.

Same names and contracts as the NumPy fallback module; see that module for
the full docstrings.  Coefficient buffers are int64 and every mul/div pass
checks written values against the 2**61 guard, which makes silent wraparound
impossible (a wrapped value would itself fail the check).
"""

import cython

import numpy as np

from ..errors import OverflowGuardError

BACKEND_NAME = "c"

GUARD_LIMIT = 1 << 61

cdef long long _LIM = GUARD_LIMIT


@cython.boundscheck(False)
@cython.wraparound(False)
def mul_one_minus_pass(long long[::1] c, Py_ssize_t a):
    """In place c(x) *= (1 - x**a), truncated to len(c) coefficients."""
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t k
    cdef long long x
    cdef bint bad = False
    if a < n:
        for k in range(n - 1, a - 1, -1):
            x = c[k] - c[k - a]
            c[k] = x
            if x > _LIM or x < -_LIM:
                bad = True
    if bad:
        raise OverflowGuardError("kernel value magnitude exceeds 2**61 guard")


@cython.boundscheck(False)
@cython.wraparound(False)
def div_one_minus_pass(long long[::1] c, Py_ssize_t a):
    """In place exact c(x) /= (1 - x**a), truncated to len(c) coefficients."""
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t k
    cdef long long x
    cdef bint bad = False
    if a < n:
        for k in range(a, n):
            x = c[k] + c[k - a]
            c[k] = x
            if x > _LIM or x < -_LIM:
                bad = True
    if bad:
        raise OverflowGuardError("kernel value magnitude exceeds 2**61 guard")


@cython.boundscheck(False)
@cython.wraparound(False)
def chi_profile(const signed char[::1] bincoef, long long p, long long q,
                long long r, Py_ssize_t deg):
    """Signed window sums out[k] for k in [0, deg]; see the fallback module."""
    cdef long long pq = p * q
    assert pq <= (1 << 31)
    assert bincoef.shape[0] == pq
    cdef long long rinv = pow(r % pq, -1, pq)
    cdef long long e = (p - 1) * (q - 1)
    out_arr = np.zeros(deg + 1, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t k
    cdef long long t, mfloor, acc, mp, mm
    for k in range(deg + 1):
        mfloor = (k + e + r - 1) // r
        acc = 0
        mp = ((k - q) % pq) * rinv % pq
        mm = (k % pq) * rinv % pq
        for t in range(p):
            if mp >= mfloor:
                acc += bincoef[mp]
            if mm >= mfloor:
                acc -= bincoef[mm]
            mp -= rinv
            if mp < 0:
                mp += pq
            mm -= rinv
            if mm < 0:
                mm += pq
        out[k] = acc
    return out_arr


@cython.boundscheck(False)
@cython.wraparound(False)
def height_scan(const long long[::1] c):
    """(height, smallest index attaining it, signed value there)."""
    cdef Py_ssize_t n = c.shape[0]
    if n == 0:
        return 0, 0, 0
    cdef long long best = 0
    cdef Py_ssize_t best_k = 0
    cdef Py_ssize_t k
    cdef long long v, mag
    for k in range(n):
        v = c[k]
        mag = -v if v < 0 else v
        if mag > best:
            best = mag
            best_k = k
    return int(best), int(best_k), int(c[best_k])
