"""Exception hierarchy.

Every input or resource failure raised by this package derives from
CycloError, so callers can catch a single type at the boundary.  Validation
errors additionally derive from ValueError to behave well in generic code.
"""


class CycloError(Exception):
    """Base class for all package errors."""


class ValidationError(CycloError, ValueError):
    """An argument failed a documented precondition."""


class NotPrimeError(ValidationError):
    """An argument required to be prime is composite (or < 2)."""


class EvenPrimeError(ValidationError):
    """The prime 2 was supplied where an odd prime is required."""


class NotOrderedError(ValidationError):
    """Primes were not supplied in strictly increasing order."""


class NonInvertibleError(ValidationError):
    """No modular inverse exists (arguments share a factor)."""


class NonCoprimeError(ValidationError):
    """Residue and modulus share a factor, so the class has no primes."""


class TooManyPrimeFactorsError(ValidationError):
    """The reduced index has more than three odd prime factors."""


class TrivialReductionError(ValidationError):
    """The reduced index is 1; the height is 1 by convention and is
    flagged rather than computed."""


class PreconditionError(ValidationError):
    """A relation between arguments (ordering, congruence) does not hold."""


class OutOfRangeError(ValidationError):
    """A scalar argument lies outside its documented closed range."""


class SearchExhaustedError(CycloError):
    """A bounded search (prime in a residue class) hit its step limit."""


class DegreeCapExceededError(CycloError):
    """The requested computation needs a coefficient vector longer than
    the configured degree cap."""

    def __init__(self, n, degree, cap, detail=""):
        self.n = n
        self.degree = degree
        self.cap = cap
        msg = f"degree {degree} for n={n} exceeds cap {cap}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class OverflowGuardError(CycloError):
    """A kernel pass produced a magnitude above the 2**61 guard, which
    would risk wraparound on a subsequent pass."""


class MismatchError(CycloError):
    """Two independent computations of the same coefficient disagree."""

    def __init__(self, n, k, dense_value, chi_value):
        self.n = n
        self.k = k
        self.dense_value = dense_value
        self.chi_value = chi_value
        super().__init__(
            f"coefficient mismatch at n={n}, k={k}: "
            f"dense={dense_value}, chi={chi_value}"
        )


class BoundViolatedError(CycloError):
    """A proved coefficient bound failed on a computed profile."""

    def __init__(self, n, k, value, bound, side):
        self.n = n
        self.k = k
        self.value = value
        self.bound = bound
        self.side = side
        super().__init__(
            f"{side} bound {bound} violated at n={n}, k={k}: value {value}"
        )


class InternalCheckError(CycloError):
    """A consistency check that should be unreachable failed; this always
    indicates a bug in the package, never bad input."""
