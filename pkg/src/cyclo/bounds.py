"""Coefficient bounds for three-prime cyclotomic polynomials.

Two families are provided: residue-derived two-sided bounds on individual
coefficients of Phi_pqr (with an optional cap at floor(2p/3)), and the
per-residue-class ceiling m(j) that bounds the class record M(p;q) purely
in terms of q mod p.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BoundViolatedError,
    EvenPrimeError,
    NotPrimeError,
    OutOfRangeError,
    PreconditionError,
)
from .numtheory import PrimeTriple, is_prime, mod_inverse


def _validate_odd_prime(p: int):
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == 2:
        raise EvenPrimeError("p must be odd")


def w_func(p: int, j: int) -> int:
    """Piecewise ceiling w(j) for 1 <= j <= p-1, symmetric about p/2.

    (p-1)/2 + j below p/4, p - j between p/4 and (p-1)/2, reflected above.
    p prime means p/4 is never an integer, so the split has no boundary
    case; that is asserted rather than branched.
    """
    _validate_odd_prime(p)
    if not 1 <= j <= p - 1:
        raise OutOfRangeError(f"j={j} outside [1, {p - 1}]")
    if 2 * j > p - 1:
        j = p - j
    assert 4 * j != p
    if 4 * j < p:
        return (p - 1) // 2 + j
    return p - j


def m_func(p: int, j: int) -> int:
    """min(w(j), floor(2p/3)): the proved per-class coefficient ceiling."""
    return min(w_func(p, j), 2 * p // 3)


@dataclass(frozen=True)
class BzdegaParams:
    """alpha = min distance of the q and r inverse residues mod p from the
    ends of [0, p]; beta = the unique j in [1, p-1] with alpha*beta*q*r = 1
    (mod p)."""

    p: int
    alpha: int
    beta: int


def bzdega_params(triple: PrimeTriple) -> BzdegaParams:
    p = triple.p
    alpha = min(
        triple.q_p_star,
        p - triple.q_p_star,
        triple.r_p_star,
        p - triple.r_p_star,
    )
    beta = mod_inverse(alpha * triple.q * triple.r % p, p)
    return BzdegaParams(p=p, alpha=alpha, beta=beta)


@dataclass(frozen=True)
class BoundPair:
    positive: int
    negative: int


def bzdega_bounds(triple: PrimeTriple, sharpened: bool = True) -> BoundPair:
    """Two-sided coefficient bounds for Phi_pqr from (alpha, beta).

    positive bounds max a(k), negative bounds -min a(k).  sharpened
    additionally caps both sides at floor(2p/3).
    """
    p = triple.p
    params = bzdega_params(triple)
    a, b = params.alpha, params.beta
    pos = min(2 * a + b, p - b)
    neg = min(p + 2 * a - b, b)
    if sharpened:
        cap = 2 * p // 3
        pos = min(pos, cap)
        neg = min(neg, cap)
    return BoundPair(positive=pos, negative=neg)


def beiter_bound_mpq(p: int, q: int) -> int:
    """Upper bound for the class record M(p;q) that depends only on
    q mod p: m evaluated at the inverse of q mod p."""
    _validate_odd_prime(p)
    if not is_prime(q):
        raise NotPrimeError(f"{q} is not prime")
    if q <= p:
        raise PreconditionError(f"need q > p, got p={p}, q={q}")
    beta = q % p
    return m_func(p, mod_inverse(beta, p))


@dataclass(frozen=True)
class BoundCheckReport:
    n: int
    sharpened: bool
    positive_bound: int
    negative_bound: int
    max_value: int
    min_value: int

    @property
    def positive_slack(self) -> int:
        return self.positive_bound - self.max_value

    @property
    def negative_slack(self) -> int:
        return self.negative_bound - (-self.min_value)

    @property
    def saturated(self) -> bool:
        return self.positive_slack == 0 or self.negative_slack == 0


def verify_bounds_on_profile(
    triple: PrimeTriple, profile, sharpened: bool = True
) -> BoundCheckReport:
    """Assert every coefficient of the given profile obeys the two-sided
    bounds; report the slack on both sides."""
    if profile.n != triple.n:
        raise PreconditionError(
            f"profile is for n={profile.n}, triple is {triple.n}"
        )
    bounds = bzdega_bounds(triple, sharpened=sharpened)
    c = profile.coeffs
    mx = int(c.max())
    mn = int(c.min())
    if mx > bounds.positive:
        k = int((c == mx).argmax())
        raise BoundViolatedError(
            n=triple.n, k=k, value=mx, bound=bounds.positive, side="positive"
        )
    if -mn > bounds.negative:
        k = int((c == mn).argmax())
        raise BoundViolatedError(
            n=triple.n, k=k, value=mn, bound=bounds.negative, side="negative"
        )
    return BoundCheckReport(
        n=triple.n,
        sharpened=sharpened,
        positive_bound=bounds.positive,
        negative_bound=bounds.negative,
        max_value=mx,
        min_value=mn,
    )


def half_range_tight_ratio(p: int) -> float:
    """Fraction (relative to p) of j in [1, (p-1)/2] where the 2p/3 cap
    bites, i.e. m(j) < w(j); hovers near 1/6 for large p."""
    _validate_odd_prime(p)
    count = sum(
        1 for j in range(1, (p - 1) // 2 + 1) if m_func(p, j) < w_func(p, j)
    )
    return count / p
