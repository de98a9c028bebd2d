"""Integer primitives: primality, modular inverses, residue-class prime
search, radicals, and the validated prime triple used everywhere else.

All values handled here fit a signed 64-bit word; is_prime enforces that
bound explicitly.  Factoring is plain trial division, which is adequate
because inputs are either built from known primes or small enough for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    EvenPrimeError,
    NonCoprimeError,
    NonInvertibleError,
    NotOrderedError,
    NotPrimeError,
    SearchExhaustedError,
)

_WORD_LIMIT = 1 << 63

# Below this, primality is settled by trial division alone.
_TRIAL_LIMIT = 10_000

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)

# Strong-pseudoprime witness set that is deterministic for all n < 3.3e24,
# which covers the full 63-bit input range with margin.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**63."""
    if not 0 <= n < _WORD_LIMIT:
        raise ValueError(f"n={n} outside supported range [0, 2**63)")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _TRIAL_LIMIT:
        d = _SMALL_PRIMES[-1] + 2
        while d * d <= n:
            if n % d == 0:
                return False
            d += 2
        return True
    return _strong_probable_prime_all(n)


def _strong_probable_prime_all(n: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, in [1, m-1]."""
    if m < 2:
        raise NonInvertibleError(f"modulus {m} must be at least 2")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NonInvertibleError(f"{a} has no inverse modulo {m}") from None


def next_prime_in_class(
    residue: int, modulus: int, lower_bound: int, max_steps: int = 100_000
) -> int:
    """Smallest prime p > lower_bound with p = residue (mod modulus).

    Scans lower_bound + 1, ... one residue step at a time; raises
    SearchExhaustedError after max_steps candidates.
    """
    if modulus < 2:
        raise ValueError(f"modulus {modulus} must be at least 2")
    residue %= modulus
    if math.gcd(residue, modulus) != 1:
        raise NonCoprimeError(
            f"gcd({residue}, {modulus}) > 1: class contains at most one prime"
        )
    # First candidate strictly above lower_bound in the class.
    t = max(0, (lower_bound - residue) // modulus + 1)
    candidate = residue + t * modulus
    for _ in range(max_steps):
        if is_prime(candidate):
            return candidate
        candidate += modulus
    raise SearchExhaustedError(
        f"no prime = {residue} (mod {modulus}) above {lower_bound} "
        f"within {max_steps} steps"
    )


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as (prime, exponent) pairs."""
    if n < 1:
        raise ValueError(f"n={n} must be positive")
    out = []
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        d = _SMALL_PRIMES[-1] + 2
        while d * d <= n:
            if n % d == 0:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                out.append((d, e))
            d += 2
        if n > 1:
            out.append((n, 1))
    out.sort()
    return out


def mobius(n: int) -> int:
    """Moebius function: 0 on squared factors, else (-1)**(number of primes)."""
    out = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        out = -out
    return out


def totient(n: int) -> int:
    """Euler totient via the factorization of n."""
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def odd_squarefree_radical(n: int) -> int:
    """Product of the distinct odd prime divisors of n (1 if none)."""
    r = 1
    for p, _ in factorize(n):
        if p != 2:
            r *= p
    return r


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, b in enumerate(sieve) if b]


@dataclass(frozen=True)
class PrimeTriple:
    """Three odd primes p < q < r plus the inverse residues the coefficient
    formulas consume.

    q_p_star = q**-1 mod p, r_p_star = r**-1 mod p, p_q_star = p**-1 mod q,
    q_bar_p = q mod p.  Construction validates primality, oddness and order,
    and asserts the closing identity p*p_q_star + q*q_p_star = p*q + 1.
    """

    p: int
    q: int
    r: int
    q_p_star: int = field(init=False)
    r_p_star: int = field(init=False)
    p_q_star: int = field(init=False)
    q_bar_p: int = field(init=False)

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        for v in (p, q, r):
            if not is_prime(v):
                raise NotPrimeError(f"{v} is not prime")
        if p == 2:
            raise EvenPrimeError("the smallest prime must be odd")
        if not p < q < r:
            raise NotOrderedError(f"need p < q < r, got {p}, {q}, {r}")
        object.__setattr__(self, "q_p_star", mod_inverse(q, p))
        object.__setattr__(self, "r_p_star", mod_inverse(r, p))
        object.__setattr__(self, "p_q_star", mod_inverse(p, q))
        object.__setattr__(self, "q_bar_p", q % p)
        assert p * self.p_q_star + q * self.q_p_star == p * q + 1

    @property
    def n(self) -> int:
        return self.p * self.q * self.r

    @property
    def degree(self) -> int:
        return (self.p - 1) * (self.q - 1) * (self.r - 1)


@lru_cache(maxsize=4096)
def make_triple(p: int, q: int, r: int) -> PrimeTriple:
    """Validated PrimeTriple; cached because triples are small and reused."""
    return PrimeTriple(p, q, r)
