"""Coefficients of the two-prime cyclotomic polynomial, in closed form.

For odd primes p < q every coefficient of Phi_pq is -1, 0 or +1, and the
nonzero positions are described exactly by the inverse residues
p_q_star = p**-1 mod q and q_p_star = q**-1 mod p:

  a(k) = +1  iff  k = u*p + v*q        with 0 <= u < p_q_star, 0 <= v < q_p_star
  a(k) = -1  iff  k = u*p + v*q - p*q  with p_q_star <= u < q, q_p_star <= v < p

Both index maps are injective, there are p_q_star * q_p_star positive and
(q - p_q_star) * (p - q_p_star) negative positions, and the counts differ
by exactly one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EvenPrimeError, NotOrderedError, NotPrimeError
from .numtheory import is_prime, mod_inverse


@dataclass(frozen=True)
class BinaryTable:
    """Dense coefficient table of Phi_pq, zero padded to length p*q.

    coeffs is int8 and read-only; indices above the degree (p-1)(q-1) are 0.
    """

    p: int
    q: int
    p_q_star: int
    q_p_star: int
    coeffs: np.ndarray

    @property
    def degree(self) -> int:
        return (self.p - 1) * (self.q - 1)


def build_binary_table(p: int, q: int) -> BinaryTable:
    """Construct the coefficient table for odd primes p < q."""
    for v in (p, q):
        if not is_prime(v):
            raise NotPrimeError(f"{v} is not prime")
    if p == 2:
        raise EvenPrimeError("p must be odd")
    if not p < q:
        raise NotOrderedError(f"need p < q, got {p}, {q}")
    p_q_star = mod_inverse(p, q)
    q_p_star = mod_inverse(q, p)
    coeffs = np.zeros(p * q, dtype=np.int8)
    pos = np.add.outer(
        np.arange(p_q_star, dtype=np.int64) * p,
        np.arange(q_p_star, dtype=np.int64) * q,
    ).ravel()
    neg = (
        np.add.outer(
            np.arange(p_q_star, q, dtype=np.int64) * p,
            np.arange(q_p_star, p, dtype=np.int64) * q,
        ).ravel()
        - p * q
    )
    coeffs[pos] = 1
    coeffs[neg] = -1
    # Injectivity and the counting identity; an index collision anywhere
    # would make one of these counts come out short.
    n_pos = int(np.count_nonzero(coeffs == 1))
    n_neg = int(np.count_nonzero(coeffs == -1))
    assert n_pos == p_q_star * q_p_star
    assert n_neg == (q - p_q_star) * (p - q_p_star)
    assert n_pos - n_neg == 1
    assert not coeffs[(p - 1) * (q - 1) + 1 :].any()
    coeffs.flags.writeable = False
    return BinaryTable(p=p, q=q, p_q_star=p_q_star, q_p_star=q_p_star, coeffs=coeffs)


@lru_cache(maxsize=256)
def cached_table(p: int, q: int) -> BinaryTable:
    """Shared immutable table; the hot paths reuse these heavily."""
    return build_binary_table(p, q)


def binary_coefficient(table: BinaryTable, k: int) -> int:
    """a(k) for any integer k; 0 outside [0, degree]."""
    if k < 0 or k >= table.coeffs.shape[0]:
        return 0
    return int(table.coeffs[k])


def representation(table: BinaryTable, k: int) -> tuple[int, int] | None:
    """The (u, v) witness pair for a nonzero coefficient position.

    For a(k) = +1 this is the pair with k = u*p + v*q, for a(k) = -1 the
    pair with k = u*p + v*q - p*q; in both cases u = k*p_q_star mod q and
    v = k*q_p_star mod p.  None when a(k) = 0; IndexError outside [0, pq).
    """
    if k < 0 or k >= table.coeffs.shape[0]:
        raise IndexError(f"k={k} outside [0, {table.p * table.q})")
    if table.coeffs[k] == 0:
        return None
    u = k * table.p_q_star % table.q
    v = k * table.q_p_star % table.p
    return u, v
