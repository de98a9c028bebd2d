"""Slow reference computations, structurally independent of the fast paths.

The main coefficient builder works on truncated numpy buffers with a
prefix recurrence.  The oracle here shares none of that: it forms the full
product of binomials x**d - 1 over plain Python integer lists and then
strips the denominator binomials by exact synthetic division, checking a
zero remainder at every step.  Python integers cannot overflow, so any
disagreement with the fast path points at the fast path.

chi_by_window_scan is the same idea for the sign indicator: instead of one
modular comparison it searches explicitly for the shift s that places
k + 1 + s*p*q inside a length-p window.
"""

from __future__ import annotations

from .errors import InternalCheckError
from .numtheory import factorize, mobius, totient


def _divisors(n: int) -> list[int]:
    out = [1]
    for prime, exp in factorize(n):
        out = [d * prime**e for d in out for e in range(exp + 1)]
    return sorted(out)


def _mul_binomial(coeffs: list[int], d: int) -> list[int]:
    """Multiply by x**d - 1."""
    out = [0] * (len(coeffs) + d)
    for i, c in enumerate(coeffs):
        out[i + d] += c
        out[i] -= c
    return out


def _div_binomial(coeffs: list[int], d: int) -> list[int]:
    """Exact division by x**d - 1; raises if the remainder is nonzero."""
    work = list(coeffs)
    if len(work) <= d:
        raise InternalCheckError(f"degree too small to divide by x**{d} - 1")
    quot = [0] * (len(work) - d)
    for i in range(len(work) - 1, d - 1, -1):
        t = work[i]
        if t:
            quot[i - d] = t
            work[i - d] += t
            work[i] = 0
    if any(work[:d]):
        raise InternalCheckError(f"nonzero remainder dividing by x**{d} - 1")
    return quot


def cyclotomic_by_division(n: int) -> list[int]:
    """Coefficient list of the n-th cyclotomic polynomial, length phi(n)+1.

    Uses the Moebius product over divisors d of n: binomials x**d - 1
    enter the numerator when mobius(n/d) = 1 and the denominator when
    mobius(n/d) = -1.  All numerators are multiplied out first so that
    every subsequent division is exact.
    """
    if n < 1:
        raise ValueError(f"n={n} must be positive")
    if n == 1:
        return [-1, 1]
    numer = []
    denom = []
    for d in _divisors(n):
        sign = mobius(n // d)
        if sign == 1:
            numer.append(d)
        elif sign == -1:
            denom.append(d)
    coeffs = [1]
    for d in numer:
        coeffs = _mul_binomial(coeffs, d)
    for d in denom:
        coeffs = _div_binomial(coeffs, d)
    expected = totient(n) + 1
    if len(coeffs) != expected:
        raise InternalCheckError(
            f"oracle produced length {len(coeffs)}, expected {expected}"
        )
    if coeffs[0] != 1 or coeffs[-1] != 1:
        raise InternalCheckError("oracle profile must start and end with 1")
    return coeffs


def chi_by_window_scan(p: int, q: int, r: int, k: int, m: int) -> int:
    """Sign indicator by explicit shift search.

    Returns +1 when some shift s places k + 1 + s*p*q in the window
    (m*r + q, m*r + q + p], -1 when some shift places it in
    (m*r, m*r + p], and 0 otherwise.  The two windows can never both
    contain a shifted copy; that exclusion is checked, not assumed.
    """
    pq = p * q
    plus = _window_hit(k, pq, m * r + q, p)
    minus = _window_hit(k, pq, m * r, p)
    if plus and minus:
        raise InternalCheckError(
            f"both sign windows hit for p={p} q={q} r={r} k={k} m={m}"
        )
    if plus:
        return 1
    if minus:
        return -1
    return 0


def _window_hit(k: int, period: int, lo: int, width: int) -> bool:
    """True when k + 1 + s*period lands in (lo, lo + width] for some s."""
    base = (lo - k) // period
    for s in (base, base + 1, base + 2):
        if lo < k + 1 + s * period <= lo + width:
            return True
    return False
