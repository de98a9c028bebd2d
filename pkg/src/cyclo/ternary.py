"""Coefficients of cyclotomic polynomials with up to three odd prime factors.

Two independent routes are provided and cross-checked:

  dense route   exact truncated power series for Phi_n as a product of
                (1 - x**d) factors over the divisors of squarefree n,
                numerator factors first, denominators last.

  chi route     each coefficient of Phi_pqr as a signed sum of coefficients
                of Phi_pq selected by a residue-window indicator chi, summed
                over the tail m >= m_zero(k).

Index reductions (drop even part, drop repeated factors) let a single
coefficient of Phi_n be answered for any n whose odd radical has at most
three prime factors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import prod

import numpy as np

from . import _kernels as kernels
from .binary import binary_coefficient, cached_table
from .config import DEFAULT_DEGREE_CAP
from .errors import (
    DegreeCapExceededError,
    InternalCheckError,
    MismatchError,
    OutOfRangeError,
    PreconditionError,
    TooManyPrimeFactorsError,
    TrivialReductionError,
)
from .numtheory import PrimeTriple, factorize, make_triple


@dataclass(frozen=True)
class CoefficientVector:
    """Full coefficient list of Phi_n: coeffs[k] = a(k), 0 <= k <= degree.

    coeffs is int64 and read-only.
    """

    n: int
    degree: int
    coeffs: np.ndarray

    def height(self) -> int:
        return kernels.height_scan(self.coeffs)[0]


@dataclass(frozen=True)
class CrossValidation:
    """Outcome of computing one profile by both routes and comparing."""

    n: int
    coefficients_checked: int
    height: int
    seconds_dense: float
    seconds_chi: float
    backend: str


def reduce_index(n: int) -> tuple[int, tuple[str, ...]]:
    """Largest odd squarefree divisor of n, plus which reductions applied.

    The height of Phi_n equals the height of Phi_reduced.  Raises
    TrivialReductionError when the reduction hits 1 (height 1 by
    convention, flagged rather than computed).
    """
    if n < 1:
        raise OutOfRangeError(f"n={n} must be positive")
    notes = []
    rad = 1
    for p, e in factorize(n):
        if p == 2:
            notes.append("even-reduction")
            if e >= 2:
                notes.append("square-reduction")
            continue
        if e >= 2 and "square-reduction" not in notes:
            notes.append("square-reduction")
        rad *= p
    if rad == 1:
        raise TrivialReductionError(
            f"n={n} reduces to 1; the height is 1 by convention"
        )
    return rad, tuple(notes)


def _validated_odd_squarefree(n: int) -> list[int]:
    if n < 3:
        raise OutOfRangeError(f"n={n} must be at least 3")
    fact = factorize(n)
    if any(e > 1 for _, e in fact) or any(p == 2 for p, _ in fact):
        raise PreconditionError(
            f"n={n} is not odd squarefree; apply reduce_index first"
        )
    if len(fact) > 3:
        raise TooManyPrimeFactorsError(
            f"n={n} has {len(fact)} prime factors; at most 3 supported"
        )
    return [p for p, _ in fact]


def dense_phi(n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> CoefficientVector:
    """Exact coefficient vector of Phi_n for odd squarefree n, <= 3 factors.

    Multiplies the (1 - x**d) factors with positive Moebius exponent, then
    divides by those with negative exponent, all truncated to the degree.
    """
    primes = _validated_odd_squarefree(n)
    deg = prod(p - 1 for p in primes)
    if deg > degree_cap:
        raise DegreeCapExceededError(n=n, degree=deg, cap=degree_cap)
    t = len(primes)
    numerators, denominators = [], []
    for size in range(t + 1):
        target = numerators if (t - size) % 2 == 0 else denominators
        for subset in combinations(primes, size):
            target.append(prod(subset))
    c = np.zeros(deg + 1, dtype=np.int64)
    c[0] = 1
    for d in sorted(numerators):
        if d <= deg:
            kernels.mul_one_minus_pass(c, d)
    for d in sorted(denominators):
        if d <= deg:
            kernels.div_one_minus_pass(c, d)
    assert int(c[0]) == 1 and int(c[deg]) == 1
    if t >= 2:
        assert int(c.sum()) == 1
    assert bool((c == c[::-1]).all())
    c.flags.writeable = False
    return CoefficientVector(n=n, degree=deg, coeffs=c)


def chi(triple: PrimeTriple, k: int, m: int) -> int:
    """Residue-window indicator in {-1, 0, +1}.

    +1 when (k - m*r - q) mod pq < p, -1 when (k - m*r) mod pq < p.  The two
    windows can never both contain the point; that is asserted, not assumed.
    """
    pq = triple.p * triple.q
    plus = (k - m * triple.r - triple.q) % pq < triple.p
    minus = (k - m * triple.r) % pq < triple.p
    if plus and minus:
        raise InternalCheckError(
            f"chi windows overlap at k={k}, m={m} for {triple}"
        )
    return 1 if plus else -1 if minus else 0


def m_zero(triple: PrimeTriple, k: int) -> int:
    """Smallest m whose window can reach index k: ceil of
    (k + (p-1)(q-1)) / r, computed without floats."""
    num = k + (triple.p - 1) * (triple.q - 1)
    return -((-num) // triple.r)


def ternary_coefficient_chi(triple: PrimeTriple, k: int) -> int:
    """a(k) of Phi_pqr via the signed window sum; 0 outside [0, degree].

    O(pq) per query, so single coefficients of huge-degree polynomials
    stay cheap.
    """
    if k < 0 or k > triple.degree:
        return 0
    pq = triple.p * triple.q
    table = cached_table(triple.p, triple.q)
    lo = max(0, m_zero(triple, k))
    if lo >= pq:
        return 0
    m = np.arange(lo, pq, dtype=np.int64)
    a = table.coeffs[lo:].astype(np.int64)
    in_plus = (k - m * triple.r - triple.q) % pq < triple.p
    in_minus = (k - m * triple.r) % pq < triple.p
    if bool((in_plus & in_minus).any()):
        raise InternalCheckError(f"chi windows overlap at k={k} for {triple}")
    return int(a[in_plus].sum() - a[in_minus].sum())


def sum_zero_check(triple: PrimeTriple, k: int) -> int:
    """Signed window sum over the full period m in [0, pq); always 0."""
    pq = triple.p * triple.q
    table = cached_table(triple.p, triple.q)
    m = np.arange(pq, dtype=np.int64)
    a = table.coeffs.astype(np.int64)
    in_plus = (k - m * triple.r - triple.q) % pq < triple.p
    in_minus = (k - m * triple.r) % pq < triple.p
    if bool((in_plus & in_minus).any()):
        raise InternalCheckError(f"chi windows overlap at k={k} for {triple}")
    return int(a[in_plus].sum() - a[in_minus].sum())


def chi_profile(
    triple: PrimeTriple, degree_cap: int = DEFAULT_DEGREE_CAP
) -> CoefficientVector:
    """Full coefficient vector of Phi_pqr via the window-sum kernel."""
    deg = triple.degree
    if deg > degree_cap:
        raise DegreeCapExceededError(n=triple.n, degree=deg, cap=degree_cap)
    table = cached_table(triple.p, triple.q)
    c = kernels.chi_profile(table.coeffs, triple.p, triple.q, triple.r, deg)
    assert int(c[0]) == 1 and int(c[deg]) == 1
    # Coefficient magnitudes of a three-prime Phi never reach p.
    assert int(np.abs(c).max()) <= triple.p - 1
    assert bool((c == c[::-1]).all())
    c.flags.writeable = False
    return CoefficientVector(n=triple.n, degree=deg, coeffs=c)


def cross_validate(
    triple: PrimeTriple, degree_cap: int = DEFAULT_DEGREE_CAP
) -> CrossValidation:
    """Compute the full profile by both routes; raise on any disagreement."""
    t0 = time.perf_counter()
    dense = dense_phi(triple.n, degree_cap=degree_cap)
    t1 = time.perf_counter()
    windowed = chi_profile(triple, degree_cap=degree_cap)
    t2 = time.perf_counter()
    if not np.array_equal(dense.coeffs, windowed.coeffs):
        k = int(np.nonzero(dense.coeffs != windowed.coeffs)[0][0])
        raise MismatchError(
            n=triple.n,
            k=k,
            dense_value=int(dense.coeffs[k]),
            chi_value=int(windowed.coeffs[k]),
        )
    return CrossValidation(
        n=triple.n,
        coefficients_checked=dense.degree + 1,
        height=dense.height(),
        seconds_dense=t1 - t0,
        seconds_chi=t2 - t1,
        backend=kernels.BACKEND,
    )


def cyclotomic_coefficient(n: int, k: int, method: str = "chi") -> int:
    """a(k) of Phi_n for any n >= 1 whose odd radical has <= 3 prime factors.

    Repeated factors and the even part only stretch and sign-twist the
    index, so the query reduces to a squarefree table lookup.  method
    applies to the three-factor case: "chi" (O(pq) per query), "dense"
    (full profile), or "both" (computes both routes and asserts agreement).
    """
    if n < 1:
        raise OutOfRangeError(f"n={n} must be positive")
    if method not in ("chi", "dense", "both"):
        raise OutOfRangeError(f"unknown method {method!r}")
    if k < 0:
        return 0
    e2 = (n & -n).bit_length() - 1
    m = n >> e2
    flip = False
    if e2 >= 1:
        stretch = 1 << (e2 - 1)
        if k % stretch:
            return 0
        k //= stretch
        if m == 1:
            return 1 if k in (0, 1) else 0
        flip = True
    if m == 1:
        return (-1, 1)[k] if k <= 1 else 0
    sign = -1 if flip and k % 2 else 1
    fact = factorize(m)
    if len(fact) > 3:
        raise TooManyPrimeFactorsError(
            f"odd radical of {n} has {len(fact)} prime factors"
        )
    t = prod(p ** (e - 1) for p, e in fact)
    if k % t:
        return 0
    k //= t
    primes = [p for p, _ in fact]
    if len(primes) == 1:
        return sign if 0 <= k <= primes[0] - 1 else 0
    if len(primes) == 2:
        return sign * binary_coefficient(cached_table(*primes), k)
    triple = make_triple(*primes)
    if method == "dense":
        value = _dense_lookup(triple, k)
    elif method == "both":
        value = _dense_lookup(triple, k)
        alt = ternary_coefficient_chi(triple, k)
        if value != alt:
            raise MismatchError(n=triple.n, k=k, dense_value=value, chi_value=alt)
    else:
        value = ternary_coefficient_chi(triple, k)
    return sign * value


def _dense_lookup(triple: PrimeTriple, k: int) -> int:
    if k > triple.degree:
        return 0
    return int(dense_phi(triple.n).coeffs[k])
