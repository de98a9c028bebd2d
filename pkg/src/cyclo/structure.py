"""Combinatorial window structure behind the ternary height bounds.

For a fixed triple (p, q, r), coefficient index i and split index j, the
signed window sum for a(i) is organized by the bracket function [v]: for
each v in [0, p-1], [v] is the unique u in [0, q-1] whose window contains
the point.  Four C-sets built from brackets and j partition [0, p-1] into
special / plain-plus / plain-minus / null integers; the counting and
shifting lemmas about that partition are instantiated here as executable
checks.

Checks come in two kinds: unconditional ones (they hold for every context
and a failure is a bug) and chain-gated ones (their hypotheses include the
normalized residue chain 1 <= p-q* <= r* < p-r* <= q* <= p-1, so they are
skipped, not failed, when the context's residues violate it).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .binary import cached_table
from .errors import (
    InternalCheckError,
    OutOfRangeError,
    PreconditionError,
)
from .numtheory import PrimeTriple, make_triple, next_prime_in_class
from .ternary import m_zero

PASSED = "passed"
FAILED = "failed"
SKIPPED = "skipped"


@dataclass(frozen=True)
class StructureContext:
    """Bracket table for (triple, i) plus the split index j."""

    triple: PrimeTriple
    i: int
    j: int
    bracket: np.ndarray

    def bracket_at(self, v: int) -> int:
        """[v] for any integer v; the bracket has period p."""
        return int(self.bracket[v % self.triple.p])


def build_context(triple: PrimeTriple, i: int, j: int | None = None) -> StructureContext:
    """Scan out the bracket table and verify it is well defined.

    For each v the scan checks that exactly one u in [0, q-1] has the
    defining window property, and that the q windows of length p tile all
    of Z mod pq; both facts are theorems, so violations raise
    InternalCheckError.
    """
    p, q, r = triple.p, triple.q, triple.r
    pq = p * q
    if not 0 <= i < pq * r:
        raise OutOfRangeError(f"i={i} outside [0, {pq * r})")
    if j is None:
        j = m_zero(triple, i)
    if j < 0:
        raise OutOfRangeError(f"j={j} must be nonnegative")
    us = np.arange(q, dtype=np.int64)
    bracket = np.empty(p, dtype=np.int64)
    full = np.arange(pq, dtype=np.int64)
    for v in range(p):
        starts = (us * p + v * q) * r
        hits = np.nonzero((i - q - starts) % pq < p)[0]
        if hits.size != 1:
            raise InternalCheckError(
                f"bracket at v={v} has {hits.size} candidates for i={i}"
            )
        bracket[v] = hits[0]
        # The q windows {start+1, ..., start+p} tile Z mod pq exactly.
        covered = (starts[:, None] + np.arange(1, p + 1, dtype=np.int64)) % pq
        if not np.array_equal(np.sort(covered.ravel()), full):
            raise InternalCheckError(
                f"windows at v={v} do not tile the residues mod {pq}"
            )
    bracket.flags.writeable = False
    return StructureContext(triple=triple, i=i, j=j, bracket=bracket)


class VKind(Enum):
    SPECIAL = "special"
    PLAIN_PLUS = "plain-plus"
    PLAIN_MINUS = "plain-minus"
    NULL = "null"


@dataclass(frozen=True)
class VClassification:
    v: int
    kind: VKind
    low: bool
    bracket_v: int
    bracket_v_shift: int
    h: int
    h_q: int


@dataclass(frozen=True)
class StructureAnalysis:
    """The C-sets, the partition, and the derived objects v0, f, S0."""

    context: StructureContext
    rows: tuple[VClassification, ...]
    c11: frozenset[int]
    c12: frozenset[int]
    c21: frozenset[int]
    c22: frozenset[int]
    special: frozenset[int]
    plain_plus: frozenset[int]
    plain_minus: frozenset[int]
    null: frozenset[int]
    v0: int | None
    s0: frozenset[int]

    @property
    def sizes(self) -> dict[str, int]:
        return {
            "special": len(self.special),
            "plain_plus": len(self.plain_plus),
            "plain_minus": len(self.plain_minus),
            "null": len(self.null),
        }


def f_shift(triple: PrimeTriple, v: int) -> int:
    """The shift bijection on [0, p-1]: subtract r_p_star, wrapping once."""
    if not 0 <= v <= triple.p - 1:
        raise OutOfRangeError(f"v={v} outside [0, {triple.p - 1}]")
    if v >= triple.r_p_star:
        return v - triple.r_p_star
    return v - triple.r_p_star + triple.p


def g_shift(analysis: StructureAnalysis, v: int) -> int:
    """Reflection through the largest low special integer: 2*v0 + r* - v.

    Only defined when a low special integer exists; may be negative.
    """
    if analysis.v0 is None:
        raise PreconditionError("context has no low special integer")
    return 2 * analysis.v0 + analysis.context.triple.r_p_star - v


def classify_all(ctx: StructureContext) -> StructureAnalysis:
    """Build the four C-sets and the S / P+ / P- / N partition.

    The four sets are built independently from their defining inequalities
    and then checked to be pairwise disjoint; the partition identity
    |S| + |P+| + |P-| + |N| = p is verified, not assumed.
    """
    t = ctx.triple
    p, q = t.p, t.q
    pq = p * q
    qs, rs, ps = t.q_p_star, t.r_p_star, t.p_q_star
    j = ctx.j
    br = ctx.bracket_at

    low_range = range(0, qs)
    high_range = range(qs, p)
    c11 = frozenset(
        v for v in low_range
        if j <= br(v - rs) * p + v * q and br(v - rs) <= ps - 1
    )
    c12 = frozenset(
        v for v in high_range
        if j <= br(v) * p + v * q - pq and br(v) >= ps
    )
    c21 = frozenset(
        v for v in low_range
        if br(v) * p + v * q < j and br(v) <= ps - 1
    )
    c22 = frozenset(
        v for v in high_range
        if br(v - rs) * p + v * q - pq < j and br(v - rs) >= ps
    )
    special = (c11 & c21) | (c12 & c22)
    plain_plus = frozenset(v for v in c11 if br(v) >= ps) | frozenset(
        v for v in c12 if br(v - rs) <= ps - 1
    )
    plain_minus = frozenset(v for v in c21 if br(v - rs) >= ps) | frozenset(
        v for v in c22 if br(v) <= ps - 1
    )
    if (special & plain_plus) or (special & plain_minus) or (
        plain_plus & plain_minus
    ):
        raise InternalCheckError("partition classes are not disjoint")
    null = frozenset(range(p)) - special - plain_plus - plain_minus
    assert len(special) + len(plain_plus) + len(plain_minus) + len(null) == p

    low_specials = [v for v in special if v <= qs - 1]
    v0 = max(low_specials) if low_specials else None
    plain = plain_plus | plain_minus
    s0 = frozenset(v for v in special if f_shift(t, v) in plain)

    rows = []
    for v in range(p):
        if v in special:
            kind = VKind.SPECIAL
        elif v in plain_plus:
            kind = VKind.PLAIN_PLUS
        elif v in plain_minus:
            kind = VKind.PLAIN_MINUS
        else:
            kind = VKind.NULL
        bv = br(v)
        bvs = br(v - rs)
        h = bv - bvs
        rows.append(
            VClassification(
                v=v,
                kind=kind,
                low=v <= qs - 1,
                bracket_v=bv,
                bracket_v_shift=bvs,
                h=h,
                h_q=h % q,
            )
        )
    return StructureAnalysis(
        context=ctx,
        rows=tuple(rows),
        c11=c11,
        c12=c12,
        c21=c21,
        c22=c22,
        special=special,
        plain_plus=plain_plus,
        plain_minus=plain_minus,
        null=null,
        v0=v0,
        s0=s0,
    )


def _chi_arrays(ctx: StructureContext) -> tuple[np.ndarray, np.ndarray]:
    """chi values and table coefficients over one period m in [0, pq)."""
    t = ctx.triple
    pq = t.p * t.q
    m = np.arange(pq, dtype=np.int64)
    in_plus = (ctx.i - m * t.r - t.q) % pq < t.p
    in_minus = (ctx.i - m * t.r) % pq < t.p
    if bool((in_plus & in_minus).any()):
        raise InternalCheckError("chi windows overlap")
    chiv = in_plus.astype(np.int64) - in_minus.astype(np.int64)
    table = cached_table(t.p, t.q).coeffs.astype(np.int64)
    return chiv, table


@dataclass(frozen=True)
class ShiftLemmaReport:
    pairs_checked: int
    passed: bool
    failures: tuple[tuple[int, int], ...]


def shift_lemma_check(ctx: StructureContext) -> ShiftLemmaReport:
    """Exhaustively confirm where chi is +1 and -1 in (u, v) coordinates.

    chi(u*p + v*q) = +1 exactly at u = [v], and -1 exactly at
    u = [v - r_p_star]; always true, checked over all q*p pairs.
    """
    t = ctx.triple
    p, q, r = t.p, t.q, t.r
    pq = p * q
    us = np.arange(q, dtype=np.int64)
    failures = []
    for v in range(p):
        m = us * p + v * q
        plus = np.nonzero((ctx.i - m * r - q) % pq < p)[0]
        minus = np.nonzero((ctx.i - m * r) % pq < p)[0]
        want_plus = ctx.bracket_at(v)
        want_minus = ctx.bracket_at(v - t.r_p_star)
        if plus.size != 1 or int(plus[0]) != want_plus:
            failures.append((v, +1))
        if minus.size != 1 or int(minus[0]) != want_minus:
            failures.append((v, -1))
    return ShiftLemmaReport(
        pairs_checked=p * q,
        passed=not failures,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class CancellationReport:
    tail_sum: int
    head_sum: int
    tail_bound: int
    head_bound: int
    four_cases_ok: bool
    passed: bool
    failures: tuple[str, ...]


def cancellation_bounds_check(
    ctx: StructureContext, analysis: StructureAnalysis
) -> CancellationReport:
    """Verify the tail/head cancellation inequalities and the four-cases
    characterization of the nonzero products a(m) * chi(m).

    Unconditional: -tail <= |S| + |P+|, head <= |S| + |P-|, tail + head = 0,
    and the four nonzero-product patterns land exactly on the C-sets.
    """
    t = ctx.triple
    p, q = t.p, t.q
    pq = p * q
    rs = t.r_p_star
    j = ctx.j
    chiv, table = _chi_arrays(ctx)
    prod = chiv * table
    m = np.arange(pq, dtype=np.int64)
    tail_mask = m >= j
    tail = int(prod[tail_mask].sum())
    head = int(prod[~tail_mask].sum())

    failures = []
    if tail + head != 0:
        failures.append(f"full-period sum {tail + head} is not zero")
    tail_bound = len(analysis.special) + len(analysis.plain_plus)
    head_bound = len(analysis.special) + len(analysis.plain_minus)
    if -tail > tail_bound:
        failures.append(f"-tail {-tail} exceeds |S|+|P+| = {tail_bound}")
    if head > head_bound:
        failures.append(f"head {head} exceeds |S|+|P-| = {head_bound}")

    br = ctx.bracket_at
    want = {
        "tail -1 products": (
            set(np.nonzero((prod == -1) & tail_mask & (table == 1))[0].tolist()),
            {br(v - rs) * p + v * q for v in analysis.c11},
        ),
        "tail -1 products (negative table)": (
            set(np.nonzero((prod == -1) & tail_mask & (table == -1))[0].tolist()),
            {br(v) * p + v * q - pq for v in analysis.c12},
        ),
        "head +1 products": (
            set(np.nonzero((prod == 1) & ~tail_mask & (table == 1))[0].tolist()),
            {br(v) * p + v * q for v in analysis.c21},
        ),
        "head +1 products (negative table)": (
            set(np.nonzero((prod == 1) & ~tail_mask & (table == -1))[0].tolist()),
            {br(v - rs) * p + v * q - pq for v in analysis.c22},
        ),
    }
    four_ok = True
    for name, (scanned, predicted) in want.items():
        if scanned != predicted:
            four_ok = False
            failures.append(
                f"{name}: scan {sorted(scanned)} vs sets {sorted(predicted)}"
            )
    return CancellationReport(
        tail_sum=tail,
        head_sum=head,
        tail_bound=tail_bound,
        head_bound=head_bound,
        four_cases_ok=four_ok,
        passed=not failures,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class SpectrumReport:
    spectrum: tuple[int, ...]
    low_special_h: int | None
    high_special_h: int | None
    passed: bool
    failures: tuple[str, ...]


def h_spectrum_check(
    ctx: StructureContext, analysis: StructureAnalysis
) -> SpectrumReport:
    """Verify the residue spectrum of h(v) = [v] - [v - r_p_star].

    At most two residues mod q occur over all v.  Low special integers
    share one negative h in (-q, 0), high special integers share one
    positive h in (0, q), and when both kinds exist their residues differ.
    """
    t = ctx.triple
    q = t.q
    failures = []
    spectrum = tuple(sorted({row.h_q for row in analysis.rows}))
    if len(spectrum) > 2:
        failures.append(f"h_q spectrum {spectrum} has more than 2 values")

    low_h = sorted({row.h for row in analysis.rows
                    if row.kind is VKind.SPECIAL and row.low})
    high_h = sorted({row.h for row in analysis.rows
                     if row.kind is VKind.SPECIAL and not row.low})
    if len(low_h) > 1:
        failures.append(f"low special h values differ: {low_h}")
    if len(high_h) > 1:
        failures.append(f"high special h values differ: {high_h}")
    for h in low_h:
        if not -q < h < 0:
            failures.append(f"low special h={h} outside (-{q}, 0)")
    for h in high_h:
        if not 0 < h < q:
            failures.append(f"high special h={h} outside (0, {q})")
    for row in analysis.rows:
        if row.kind is not VKind.SPECIAL:
            continue
        bv, bvs = row.bracket_v, row.bracket_v_shift
        if row.low and not bv < bvs <= t.p_q_star - 1:
            failures.append(
                f"low special v={row.v}: need [v] < [v-r*] <= p_q*-1, "
                f"got {bv}, {bvs}"
            )
        if not row.low and not t.p_q_star <= bvs < bv:
            failures.append(
                f"high special v={row.v}: need p_q* <= [v-r*] < [v], "
                f"got {bvs}, {bv}"
            )
    if low_h and high_h and low_h[0] % q == high_h[0] % q:
        failures.append("low and high special residues coincide")
    return SpectrumReport(
        spectrum=spectrum,
        low_special_h=low_h[0] if low_h else None,
        high_special_h=high_h[0] if high_h else None,
        passed=not failures,
        failures=tuple(failures),
    )


def chain_holds(p: int, q_star: int, r_star: int) -> bool:
    """The normalized residue chain 1 <= p-q* <= r* < p-r* <= q* <= p-1."""
    return 1 <= p - q_star <= r_star < p - r_star <= q_star <= p - 1


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    status: str
    instances: int
    failures: tuple[str, ...]


@dataclass(frozen=True)
class BatteryReport:
    chain_ok: bool
    entries: tuple[LemmaCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(e.status != FAILED for e in self.entries)


def conditional_lemma_battery(
    ctx: StructureContext, analysis: StructureAnalysis
) -> BatteryReport:
    """Run the per-v lemma checks, gating chain-dependent ones.

    Unconditional entries: the low blocking interval below a low member of
    S or P-, the v0 interval trapping low specials, and the two-residue
    dichotomy for h(v)*p*r.  Chain-gated entries: the blocking interval
    above a low member of S or P+, and shift-avoids-special; these assume
    the normalized chain and report skipped when it fails.
    """
    t = ctx.triple
    p, q, r = t.p, t.q, t.r
    pq = p * q
    qs, rs = t.q_p_star, t.r_p_star
    s = analysis.special
    sp = s | analysis.plain_plus
    sm = s | analysis.plain_minus
    entries = []

    inst = 0
    fails = []
    for v in sorted(sm):
        if v > qs - 1:
            continue
        for v1 in range(0, v - p + qs + 1):
            inst += 1
            if v1 in sp:
                fails.append(f"v={v}: blocked v1={v1} is in S or P+")
    entries.append(
        LemmaCheck("low-block-below", FAILED if fails else PASSED, inst,
                   tuple(fails))
    )

    inst = 0
    fails = []
    if analysis.v0 is not None:
        lo = analysis.v0 - p + qs + 1
        for v in sorted(s):
            if v > qs - 1:
                continue
            inst += 1
            if not lo <= v <= analysis.v0:
                fails.append(
                    f"low special v={v} outside [{lo}, {analysis.v0}]"
                )
    entries.append(
        LemmaCheck("low-special-interval", FAILED if fails else PASSED, inst,
                   tuple(fails))
    )

    inst = 0
    fails = []
    target_a = (t.q_bar_p - q) % pq
    target_b = (t.q_bar_p - q - p) % pq
    for row in analysis.rows:
        inst += 1
        lhs = row.h * p * r % pq
        hit_a = lhs == target_a
        hit_b = lhs == target_b
        if hit_a == hit_b:
            fails.append(
                f"v={row.v}: h*p*r residue {lhs} matches "
                f"{'both' if hit_a else 'neither'} target"
            )
    entries.append(
        LemmaCheck("window-residue-dichotomy", FAILED if fails else PASSED,
                   inst, tuple(fails))
    )

    gate = chain_holds(p, qs, rs)
    if gate:
        inst = 0
        fails = []
        for v in sorted(sp):
            if v > qs - 1:
                continue
            for v1 in range(v + rs, qs):
                inst += 1
                if v1 in sm:
                    fails.append(f"v={v}: blocked v1={v1} is in S or P-")
        entries.append(
            LemmaCheck("low-block-above", FAILED if fails else PASSED, inst,
                       tuple(fails))
        )
        inst = 0
        fails = []
        for v in sorted(s):
            inst += 1
            if f_shift(t, v) in s:
                fails.append(f"v={v}: f(v)={f_shift(t, v)} is special too")
        entries.append(
            LemmaCheck("shift-avoids-special", FAILED if fails else PASSED,
                       inst, tuple(fails))
        )
    else:
        entries.append(LemmaCheck("low-block-above", SKIPPED, 0, ()))
        entries.append(LemmaCheck("shift-avoids-special", SKIPPED, 0, ()))
    return BatteryReport(chain_ok=gate, entries=tuple(entries))


@dataclass(frozen=True)
class TailDiagnostic:
    """Max over split points of the absolute tail sum, and the tail at the
    context's own j.  The height of Phi_pqr never exceeds the max over
    (i, j) of this quantity; reported for exploration, not asserted."""

    max_abs: int
    best_j: int
    tail_at_j: int


def tail_sum_diagnostic(ctx: StructureContext) -> TailDiagnostic:
    chiv, table = _chi_arrays(ctx)
    prod = chiv * table
    pq = prod.shape[0]
    # suffix[j'] = sum of prod[m] over m >= j', for j' in [0, pq]
    suffix = np.zeros(pq + 1, dtype=np.int64)
    suffix[:pq] = prod[::-1].cumsum()[::-1]
    mags = np.abs(suffix)
    best = int(mags.argmax())
    return TailDiagnostic(
        max_abs=int(mags[best]),
        best_j=best,
        tail_at_j=int(suffix[min(ctx.j, pq)]),
    )


def normalize_residues(
    p: int, q_star: int, r_star: int
) -> tuple[tuple[int, int], tuple[str, ...]]:
    """Three-step swap algorithm on the residue pair (q*, r*).

    Step 1 swaps the pair if q* is closer than r* to the ends of [0, p];
    step 2 flips q* high, step 3 flips r* low.  The result always
    satisfies the normalized chain, in at most three steps.
    """
    for name, v in (("q_star", q_star), ("r_star", r_star)):
        if not 1 <= v <= p - 1:
            raise OutOfRangeError(f"{name}={v} outside [1, {p - 1}]")
    qs, rs = q_star, r_star
    trace = []
    if min(qs, p - qs) > min(rs, p - rs):
        qs, rs = rs, qs
        trace.append("swap-qr")
    if qs <= (p - 1) // 2:
        qs = p - qs
        trace.append("flip-q")
    if rs > (p - 1) // 2:
        rs = p - rs
        trace.append("flip-r")
    if not chain_holds(p, qs, rs):
        raise InternalCheckError(
            f"normalization of ({q_star}, {r_star}) mod {p} "
            f"ended off-chain at ({qs}, {rs})"
        )
    return (qs, rs), tuple(trace)


@dataclass(frozen=True)
class ChainResult:
    p: int
    original: tuple[int, int]
    final: tuple[int, int]
    swap_trace: tuple[str, ...]
    witness_q: int | None
    witness_r: int | None


def _witness_swap(p, q, r, max_steps):
    # New r = q (mod p*r) above r makes the old r the new q; the pair's
    # two inverse residues mod p trade places.
    r_new = next_prime_in_class(q % (p * r), p * r, r, max_steps=max_steps)
    return r, r_new


def _witness_flip_r(p, q, r, max_steps):
    # New r = -r (mod pq) keeps q and replaces r_p_star by p - r_p_star;
    # the height is unchanged by class invariance.
    r_new = next_prime_in_class((-r) % (p * q), p * q, q, max_steps=max_steps)
    return q, r_new


def chain_normalize(
    p: int,
    q1: int,
    r1: int,
    find_witnesses: bool = False,
    max_steps: int = 100_000,
) -> ChainResult:
    """Normalize the residues of (q1, r1) mod p onto the chain.

    With find_witnesses, each step is realized by replacing the pair with
    actual primes whose residues perform that step (swap via a prime in
    the class of q mod p*r; q-flip as swap, r-flip, swap); the witnesses
    never decrease the height of the associated triple.
    """
    t = make_triple(p, q1, r1)
    original = (t.q_p_star, t.r_p_star)
    final, trace = normalize_residues(p, *original)
    wq = wr = None
    if find_witnesses:
        q, r = q1, r1
        for step in trace:
            if step == "swap-qr":
                q, r = _witness_swap(p, q, r, max_steps)
            elif step == "flip-r":
                q, r = _witness_flip_r(p, q, r, max_steps)
            elif step == "flip-q":
                q, r = _witness_swap(p, q, r, max_steps)
                q, r = _witness_flip_r(p, q, r, max_steps)
                q, r = _witness_swap(p, q, r, max_steps)
        realized = make_triple(p, q, r)
        if (realized.q_p_star, realized.r_p_star) != final:
            raise InternalCheckError(
                f"witness residues {(realized.q_p_star, realized.r_p_star)} "
                f"do not match normalized {final}"
            )
        wq, wr = q, r
    return ChainResult(
        p=p,
        original=original,
        final=final,
        swap_trace=trace,
        witness_q=wq,
        witness_r=wr,
    )
