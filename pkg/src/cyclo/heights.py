"""Heights of cyclotomic polynomials and per-residue-class records.

The height A(n) is the largest coefficient magnitude of Phi_n; it only
depends on the odd squarefree radical of n.  For fixed odd primes p < q the
height of Phi_pqr depends on r only through the residue class of r modulo
pq, up to sign, so the record M(p;q) = max over primes r > q of A(pqr) is
computed exactly by enumerating the (p-1)(q-1)/2 sign-folded unit classes
and measuring one witness prime per class.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _kernels as kernels
from .bounds import beiter_bound_mpq
from .cache import ClassHeightRecord, HeightCache
from .config import DEFAULT_DEGREE_CAP, DEFAULT_SEARCH_STEPS, cache_path_from_env
from .errors import (
    DegreeCapExceededError,
    EvenPrimeError,
    InternalCheckError,
    NotOrderedError,
    NotPrimeError,
    OutOfRangeError,
    PreconditionError,
    TooManyPrimeFactorsError,
)
from .numtheory import (
    factorize,
    is_prime,
    make_triple,
    next_prime_in_class,
    primes_up_to,
)
from .ternary import chi_profile, dense_phi, reduce_index


@dataclass(frozen=True)
class HeightReport:
    """Height of Phi_n with the smallest index attaining it.

    smallest_k and value_at_k refer to Phi of the reduced index; reductions
    lists which index reductions were applied to get there.
    """

    n: int
    reduced_n: int
    reductions: tuple[str, ...]
    height: int
    smallest_k: int
    value_at_k: int
    method: str


def height(
    n: int, method: str = "dense", degree_cap: int = DEFAULT_DEGREE_CAP
) -> HeightReport:
    """A(n) for any n whose odd radical has at most three prime factors.

    method "chi" applies to three-factor radicals; other radicals always
    use the dense route (the report records which one ran).
    """
    if method not in ("dense", "chi"):
        raise OutOfRangeError(f"unknown method {method!r}")
    rad, notes = reduce_index(n)
    primes = [p for p, _ in factorize(rad)]
    if len(primes) > 3:
        raise TooManyPrimeFactorsError(
            f"odd radical {rad} of {n} has {len(primes)} prime factors"
        )
    if method == "chi" and len(primes) == 3:
        profile = chi_profile(make_triple(*primes), degree_cap=degree_cap)
        used = "chi"
    else:
        profile = dense_phi(rad, degree_cap=degree_cap)
        used = "dense"
    h, k, v = kernels.height_scan(profile.coeffs)
    return HeightReport(
        n=n,
        reduced_n=rad,
        reductions=notes,
        height=h,
        smallest_k=k,
        value_at_k=v,
        method=used,
    )


@dataclass(frozen=True)
class KaplanClass:
    """A sign-folded unit class c mod pq (1 <= c <= pq/2) with the smallest
    prime above q lying in c or -c."""

    residue: int
    witness: int


def _validate_pair(p: int, q: int):
    for v in (p, q):
        if not is_prime(v):
            raise NotPrimeError(f"{v} is not prime")
    if p == 2:
        raise EvenPrimeError("p must be odd")
    if not p < q:
        raise NotOrderedError(f"need p < q, got {p}, {q}")


def enumerate_kaplan_classes(
    p: int, q: int, max_steps: int = DEFAULT_SEARCH_STEPS
) -> tuple[KaplanClass, ...]:
    """All (p-1)(q-1)/2 sign-folded unit classes mod pq with witnesses.

    A(pqr) is the same for every prime r > q in a fixed folded class, so
    one witness per class settles the whole class.
    """
    _validate_pair(p, q)
    pq = p * q
    out = []
    for c in range(1, pq // 2 + 1):
        if math.gcd(c, pq) != 1:
            continue
        w_plus = next_prime_in_class(c, pq, q, max_steps=max_steps)
        w_minus = next_prime_in_class(pq - c, pq, q, max_steps=max_steps)
        out.append(KaplanClass(residue=c, witness=min(w_plus, w_minus)))
    assert len(out) == (p - 1) * (q - 1) // 2
    return tuple(out)


@dataclass(frozen=True)
class MpqResult:
    """The class record M(p;q) with the full per-class evidence."""

    p: int
    q: int
    value: int
    attaining: ClassHeightRecord
    rows: tuple[ClassHeightRecord, ...]

    @property
    def per_class_heights(self) -> dict[int, int]:
        return {r.residue: r.height for r in self.rows}


def _compute_class_record(
    p: int, q: int, residue: int, witness: int, degree_cap: int
) -> ClassHeightRecord:
    rep = height(p * q * witness, method="dense", degree_cap=degree_cap)
    return ClassHeightRecord(
        p=p,
        q=q,
        residue=residue,
        witness=witness,
        height=rep.height,
        smallest_k=rep.smallest_k,
        value_at_k=rep.value_at_k,
    )


def _class_row_worker(args) -> ClassHeightRecord:
    return _compute_class_record(*args)


def m_of_p_q(
    p: int,
    q: int,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    cache: HeightCache | None = None,
    jobs: int = 1,
    max_steps: int = DEFAULT_SEARCH_STEPS,
) -> MpqResult:
    """M(p;q): the exact max of A(pqr) over all primes r > q.

    Enumerates every folded class, measures one witness profile per class
    (cache hits are reused when the witness matches), and maxes.  With
    jobs > 1 the per-class profiles run in a process pool; results are
    merged in class order, so the outcome is independent of scheduling.
    """
    classes = enumerate_kaplan_classes(p, q, max_steps=max_steps)
    if cache is None:
        cache = HeightCache(cache_path_from_env())
    # Fail before any heavy work if some class needs a profile over the cap.
    worst = max(classes, key=lambda c: c.witness)
    worst_deg = (p - 1) * (q - 1) * (worst.witness - 1)
    if worst_deg > degree_cap:
        raise DegreeCapExceededError(
            n=p * q * worst.witness,
            degree=worst_deg,
            cap=degree_cap,
            detail=f"class {worst.residue} witness {worst.witness}",
        )
    rows: dict[int, ClassHeightRecord] = {}
    missing = []
    for cls in classes:
        rec = cache.get(p, q, cls.residue)
        if rec is not None and rec.witness == cls.witness:
            rows[cls.residue] = rec
        else:
            missing.append(cls)
    if missing:
        work = [(p, q, cls.residue, cls.witness, degree_cap) for cls in missing]
        if jobs > 1 and len(missing) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                computed = list(pool.map(_class_row_worker, work, chunksize=4))
        else:
            computed = [_class_row_worker(w) for w in work]
        for rec in computed:
            cache.put(rec)
            rows[rec.residue] = rec
    ordered = tuple(rows[cls.residue] for cls in classes)
    value = max(r.height for r in ordered)
    attaining = next(r for r in ordered if r.height == value)
    # Proved ceilings; a failure here is a bug, not bad input.
    if value > 2 * p // 3 or value > beiter_bound_mpq(p, q):
        raise InternalCheckError(
            f"M({p};{q}) = {value} exceeds a proved ceiling"
        )
    return MpqResult(p=p, q=q, value=value, attaining=attaining, rows=ordered)


def mpq_closed_form_residue_one(p: int, q: int) -> int:
    """M(p;q) in closed form for q = 1 (mod p):
    min((q-1)/p + 1, (p+1)/2)."""
    _validate_pair(p, q)
    if q % p != 1:
        raise PreconditionError(f"need q = 1 (mod {p}), got q={q}")
    return min((q - 1) // p + 1, (p + 1) // 2)


@dataclass(frozen=True)
class SearchOutcome:
    """Best class record found over a range of q, with per-residue lower
    bounds certified along the way."""

    p: int
    q_lo: int
    q_hi: int
    best: MpqResult | None
    skipped: tuple[int, ...]
    residue_lower_bounds: dict[int, int]


def mp_lower_bound_search(
    p: int,
    q_lo: int,
    q_hi: int,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    cache: HeightCache | None = None,
    jobs: int = 1,
    max_steps: int = DEFAULT_SEARCH_STEPS,
    on_result=None,
) -> SearchOutcome:
    """Sweep q over primes in (q_lo, q_hi] and maximize M(p;q).

    Every completed q certifies M_beta(p) >= M(p;q) for beta = q mod p; q
    values whose class witnesses exceed the degree cap are skipped and
    reported, not silently dropped.
    """
    if not is_prime(p) or p == 2:
        raise NotPrimeError(f"{p} must be an odd prime")
    best: MpqResult | None = None
    skipped = []
    lower: dict[int, int] = {}
    for q in primes_up_to(q_hi):
        if q <= max(p, q_lo):
            continue
        try:
            res = m_of_p_q(
                p,
                q,
                degree_cap=degree_cap,
                cache=cache,
                jobs=jobs,
                max_steps=max_steps,
            )
        except DegreeCapExceededError:
            skipped.append(q)
            continue
        beta = q % p
        lower[beta] = max(lower.get(beta, 0), res.value)
        if on_result is not None:
            on_result(res)
        if best is None or res.value > best.value:
            best = res
    return SearchOutcome(
        p=p,
        q_lo=q_lo,
        q_hi=q_hi,
        best=best,
        skipped=tuple(skipped),
        residue_lower_bounds=dict(sorted(lower.items())),
    )


def kaplan_invariance_check(
    p: int, q: int, r: int, s: int, degree_cap: int = DEFAULT_DEGREE_CAP
) -> bool:
    """True when A(pqr) = A(pqs); s must be a prime > q with s = r or
    s = -r (mod pq).  The invariance theorem says this never returns False."""
    make_triple(p, q, r)
    if not is_prime(s):
        raise NotPrimeError(f"{s} is not prime")
    if s <= q:
        raise PreconditionError(f"need s > q, got s={s}, q={q}")
    pq = p * q
    if s % pq != r % pq and s % pq != (-r) % pq:
        raise PreconditionError(
            f"s={s} is not congruent to +-{r} mod {pq}"
        )
    h_r = height(p * q * r, degree_cap=degree_cap).height
    h_s = height(p * q * s, degree_cap=degree_cap).height
    return h_r == h_s
