"""Named verification suites behind `cyclo verify`.

Each suite exercises one family of invariants end to end and returns a
SuiteReport with per-check counts and the first counterexamples, if any.
Randomized suites draw every input from a seeded generator, so a report
is reproducible from (suite, trials, seed) alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .binary import build_binary_table
from .bounds import m_func, verify_bounds_on_profile
from .config import DEFAULT_DEGREE_CAP
from .errors import BoundViolatedError, CycloError, OutOfRangeError
from .heights import kaplan_invariance_check
from .numtheory import (
    make_triple,
    mod_inverse,
    next_prime_in_class,
    primes_up_to,
)
from .oracles import cyclotomic_by_division
from .refvalues import CLASS_RECORD_TABLE, HEIGHT_RECORDS, KNOWN_M_P
from .structure import (
    FAILED,
    SKIPPED,
    build_context,
    cancellation_bounds_check,
    chain_holds,
    classify_all,
    conditional_lemma_battery,
    h_spectrum_check,
    normalize_residues,
    shift_lemma_check,
)
from .ternary import cross_validate, dense_phi, sum_zero_check

DEFAULT_CROSS_VALIDATE_MAX_N = 100_000

DEFAULT_TRIALS = {
    "sum-zero": 100,
    "bzdega": 20,
    "kaplan": 20,
    "structure": 50,
}


@dataclass(frozen=True)
class SuiteReport:
    name: str
    passed: bool
    checks: int
    failures: tuple[str, ...]
    details: dict = field(default_factory=dict)


def _odd_primes(lo: int, hi: int) -> list[int]:
    return [p for p in primes_up_to(hi) if p > max(2, lo - 1)]


def suite_binary_oracle(**kw) -> SuiteReport:
    """Every two-prime table for p < q <= 61 against the division oracle."""
    primes = _odd_primes(3, 61)
    failures = []
    checks = 0
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            checks += 1
            table = build_binary_table(p, q)
            expected = cyclotomic_by_division(p * q)
            got = table.coeffs[: len(expected)].tolist()
            if got != expected or table.coeffs[len(expected) :].any():
                failures.append(f"p={p} q={q}: table disagrees with oracle")
    return SuiteReport(
        name="binary-oracle",
        passed=not failures,
        checks=checks,
        failures=tuple(failures),
        details={"pairs": checks, "max_q": primes[-1]},
    )


def suite_sum_zero(trials: int, seed: int, **kw) -> SuiteReport:
    """Full-period window sums vanish for seeded random (triple, k)."""
    rng = random.Random(seed)
    pool = _odd_primes(3, 199)
    failures = []
    for _ in range(trials):
        p, q, r = sorted(rng.sample(pool, 3))
        t = make_triple(p, q, r)
        k = rng.randrange(t.degree + 1)
        total = sum_zero_check(t, k)
        if total != 0:
            failures.append(f"p={p} q={q} r={r} k={k}: sum={total}")
    return SuiteReport(
        name="sum-zero",
        passed=not failures,
        checks=trials,
        failures=tuple(failures),
        details={"prime_limit": 199},
    )


def suite_cross_validate(
    degree_cap: int = DEFAULT_DEGREE_CAP,
    max_n: int = DEFAULT_CROSS_VALIDATE_MAX_N,
    **kw,
) -> SuiteReport:
    """Dense and window routes agree on every triple with p*q*r <= max_n,
    plus the six stored reference triples."""
    triples = _ternary_triples_up_to(max_n)
    known = set(triples)
    for rec in HEIGHT_RECORDS:
        key = (rec.p, rec.q, rec.r)
        if key not in known:
            triples.append(key)
    failures = []
    coefficients = 0
    max_height = 0
    backend = ""
    for p, q, r in triples:
        try:
            out = cross_validate(make_triple(p, q, r), degree_cap=degree_cap)
        except CycloError as exc:
            failures.append(f"p={p} q={q} r={r}: {exc}")
            continue
        coefficients += out.coefficients_checked
        max_height = max(max_height, out.height)
        backend = out.backend
    return SuiteReport(
        name="cross-validate",
        passed=not failures,
        checks=len(triples),
        failures=tuple(failures),
        details={
            "max_n": max_n,
            "coefficients": coefficients,
            "max_height": max_height,
            "backend": backend,
        },
    )


def _ternary_triples_up_to(max_n: int) -> list[tuple[int, int, int]]:
    primes = _odd_primes(3, max(3, max_n // 15))
    out = []
    for i, p in enumerate(primes):
        for j in range(i + 1, len(primes)):
            q = primes[j]
            if p * q * q >= max_n:
                break
            for k in range(j + 1, len(primes)):
                r = primes[k]
                if p * q * r > max_n:
                    break
                out.append((p, q, r))
    return out


def suite_bzdega(trials: int, seed: int, degree_cap: int, **kw) -> SuiteReport:
    """Two-sided coefficient bounds, plain and sharpened, on seeded
    random triples with p <= 31."""
    rng = random.Random(seed)
    p_pool = _odd_primes(3, 31)
    failures = []
    checks = 0
    saturated = 0
    for _ in range(trials):
        p = rng.choice(p_pool)
        q = rng.choice(_odd_primes(p + 1, 150))
        r = rng.choice(_odd_primes(q + 1, 400))
        t = make_triple(p, q, r)
        profile = dense_phi(t.n, degree_cap=degree_cap)
        for sharpened in (False, True):
            checks += 1
            try:
                rep = verify_bounds_on_profile(t, profile, sharpened=sharpened)
            except BoundViolatedError as exc:
                failures.append(f"p={p} q={q} r={r} sharpened={sharpened}: {exc}")
                continue
            if sharpened and rep.saturated:
                saturated += 1
    return SuiteReport(
        name="bzdega",
        passed=not failures,
        checks=checks,
        failures=tuple(failures),
        details={"saturated_sharpened": saturated},
    )


def suite_kaplan(trials: int, seed: int, degree_cap: int, **kw) -> SuiteReport:
    """Height invariance along folded residue classes: A(pqr) = A(pqs)
    for seeded (p, q, r) and the next prime s in the class of +-r."""
    rng = random.Random(seed)
    p_pool = _odd_primes(3, 13)
    failures = []
    for _ in range(trials):
        p = rng.choice(p_pool)
        q = rng.choice(_odd_primes(p + 1, 43))
        r = rng.choice(_odd_primes(q + 1, 199))
        sign = rng.choice((1, -1))
        pq = p * q
        try:
            s = next_prime_in_class(sign * r, pq, r)
            same = kaplan_invariance_check(p, q, r, s, degree_cap=degree_cap)
        except CycloError as exc:
            failures.append(f"p={p} q={q} r={r} sign={sign}: {exc}")
            continue
        if not same:
            failures.append(f"p={p} q={q} r={r} s={s}: heights differ")
    return SuiteReport(
        name="kaplan",
        passed=not failures,
        checks=trials,
        failures=tuple(failures),
        details={"prime_limit": 199},
    )


def suite_structure(trials: int, seed: int, **kw) -> SuiteReport:
    """Per-index combinatorial checks on seeded contexts: the partition,
    the shift characterization, cancellation inequalities, the h residue
    spectrum, and the lemma battery (chain-gated entries may skip)."""
    rng = random.Random(seed)
    p_pool = _odd_primes(3, 19)
    failures = []
    checks = 0
    chain_held = 0
    skipped = 0
    for _ in range(trials):
        p = rng.choice(p_pool)
        q = rng.choice(_odd_primes(p + 1, 60))
        r = rng.choice(_odd_primes(q + 1, 200))
        t = make_triple(p, q, r)
        i = rng.randrange(t.degree + 1)
        tag = f"p={p} q={q} r={r} i={i}"
        try:
            ctx = build_context(t, i)
            analysis = classify_all(ctx)
            checks += 1
            shift = shift_lemma_check(ctx)
            checks += 1
            if not shift.passed:
                failures.append(f"{tag}: shift {shift.failures[:3]}")
            cancel = cancellation_bounds_check(ctx, analysis)
            checks += 1
            if not cancel.passed:
                failures.append(f"{tag}: cancellation {cancel.failures[:3]}")
            spectrum = h_spectrum_check(ctx, analysis)
            checks += 1
            if not spectrum.passed:
                failures.append(f"{tag}: spectrum {spectrum.failures[:3]}")
            battery = conditional_lemma_battery(ctx, analysis)
            checks += 1
            if battery.chain_ok:
                chain_held += 1
            for entry in battery.entries:
                if entry.status == FAILED:
                    failures.append(
                        f"{tag}: {entry.name} {entry.failures[:3]}"
                    )
            skipped += sum(1 for e in battery.entries if e.status == SKIPPED)
        except CycloError as exc:
            failures.append(f"{tag}: {exc}")
    return SuiteReport(
        name="structure",
        passed=not failures,
        checks=checks,
        failures=tuple(failures),
        details={
            "contexts": trials,
            "chain_held": chain_held,
            "gated_skips": skipped,
        },
    )


def suite_chain(**kw) -> SuiteReport:
    """Exhaustive residue normalization for p <= 61: every pair lands on
    the chain in at most three steps."""
    failures = []
    checks = 0
    for p in _odd_primes(3, 61):
        for qs in range(1, p):
            for rs in range(1, p):
                checks += 1
                try:
                    (nq, nr), trace = normalize_residues(p, qs, rs)
                except CycloError as exc:
                    failures.append(f"p={p} ({qs},{rs}): {exc}")
                    continue
                if not chain_holds(p, nq, nr) or len(trace) > 3:
                    failures.append(f"p={p} ({qs},{rs}) -> ({nq},{nr}) {trace}")
    return SuiteReport(
        name="chain",
        passed=not failures,
        checks=checks,
        failures=tuple(failures),
        details={"max_p": 61},
    )


def suite_bounds_table2(**kw) -> SuiteReport:
    """Stored per-class records against the residue-only bound, and the
    per-p maxima against the stored overall records."""
    failures = []
    checks = 0
    per_p_max: dict[int, int] = {}
    for entry in CLASS_RECORD_TABLE:
        checks += 1
        beta_star = mod_inverse(entry.beta, entry.p)
        bound = m_func(entry.p, beta_star)
        if entry.value > bound:
            failures.append(
                f"p={entry.p} beta={entry.beta}: value {entry.value} "
                f"exceeds m({beta_star}) = {bound}"
            )
        prev = per_p_max.get(entry.p, 0)
        per_p_max[entry.p] = max(prev, entry.value)
    for p, expected in sorted(KNOWN_M_P.items()):
        checks += 1
        if per_p_max.get(p) != expected:
            failures.append(
                f"p={p}: table max {per_p_max.get(p)} != record {expected}"
            )
    return SuiteReport(
        name="bounds-table2",
        passed=not failures,
        checks=checks,
        failures=tuple(failures),
        details={"entries": len(CLASS_RECORD_TABLE)},
    )


SUITES = {
    "binary-oracle": suite_binary_oracle,
    "sum-zero": suite_sum_zero,
    "cross-validate": suite_cross_validate,
    "bzdega": suite_bzdega,
    "kaplan": suite_kaplan,
    "structure": suite_structure,
    "chain": suite_chain,
    "bounds-table2": suite_bounds_table2,
}


def run_suite(
    name: str,
    trials: int | None = None,
    seed: int = 0,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    max_n: int = DEFAULT_CROSS_VALIDATE_MAX_N,
) -> SuiteReport:
    """Run one named suite; unknown names raise OutOfRangeError."""
    if name not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise OutOfRangeError(f"unknown suite {name!r}; one of: {known}")
    if trials is None:
        trials = DEFAULT_TRIALS.get(name, 0)
    return SUITES[name](
        trials=trials,
        seed=seed,
        degree_cap=degree_cap,
        max_n=max_n,
    )
