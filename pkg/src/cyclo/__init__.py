"""Exact coefficients, heights, bounds and per-index structure of
cyclotomic polynomials whose odd radical has at most three prime factors.

Two independent computation routes (dense truncated power series and the
residue-window sum) are cross-checked throughout; record tables, class
records M(p;q), two-sided coefficient bounds, and the combinatorial
classification behind the height bounds are all exposed as checkable
objects, with a CLI to drive them.
"""

from .binary import BinaryTable, build_binary_table, representation
from .bounds import (
    beiter_bound_mpq,
    bzdega_bounds,
    half_range_tight_ratio,
    m_func,
    verify_bounds_on_profile,
    w_func,
)
from .config import TOOL_VERSION, RunConfig
from .errors import (
    BoundViolatedError,
    CycloError,
    DegreeCapExceededError,
    MismatchError,
    OverflowGuardError,
    SearchExhaustedError,
    ValidationError,
)
from .heights import (
    HeightReport,
    MpqResult,
    enumerate_kaplan_classes,
    height,
    kaplan_invariance_check,
    m_of_p_q,
    mp_lower_bound_search,
    mpq_closed_form_residue_one,
)
from .numtheory import PrimeTriple, is_prime, make_triple, next_prime_in_class
from .structure import (
    build_context,
    chain_normalize,
    classify_all,
    conditional_lemma_battery,
    normalize_residues,
)
from .ternary import (
    CoefficientVector,
    chi_profile,
    cross_validate,
    cyclotomic_coefficient,
    dense_phi,
    reduce_index,
    ternary_coefficient_chi,
)
from .verify import SUITES, SuiteReport, run_suite

__version__ = TOOL_VERSION

__all__ = [
    "BinaryTable",
    "BoundViolatedError",
    "CoefficientVector",
    "CycloError",
    "DegreeCapExceededError",
    "HeightReport",
    "MismatchError",
    "MpqResult",
    "OverflowGuardError",
    "PrimeTriple",
    "RunConfig",
    "SUITES",
    "SearchExhaustedError",
    "SuiteReport",
    "TOOL_VERSION",
    "ValidationError",
    "beiter_bound_mpq",
    "build_binary_table",
    "build_context",
    "bzdega_bounds",
    "chain_normalize",
    "chi_profile",
    "classify_all",
    "conditional_lemma_battery",
    "cross_validate",
    "cyclotomic_coefficient",
    "dense_phi",
    "enumerate_kaplan_classes",
    "half_range_tight_ratio",
    "height",
    "is_prime",
    "kaplan_invariance_check",
    "m_func",
    "m_of_p_q",
    "make_triple",
    "mp_lower_bound_search",
    "mpq_closed_form_residue_one",
    "next_prime_in_class",
    "normalize_residues",
    "reduce_index",
    "representation",
    "run_suite",
    "ternary_coefficient_chi",
    "verify_bounds_on_profile",
    "w_func",
]
