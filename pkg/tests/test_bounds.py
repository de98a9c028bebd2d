import numpy as np
import pytest

from cyclo.bounds import (
    BoundPair,
    BzdegaParams,
    beiter_bound_mpq,
    bzdega_bounds,
    bzdega_params,
    half_range_tight_ratio,
    m_func,
    verify_bounds_on_profile,
    w_func,
)
from cyclo.errors import (
    BoundViolatedError,
    EvenPrimeError,
    NotPrimeError,
    OutOfRangeError,
    PreconditionError,
)
from cyclo.numtheory import make_triple, primes_up_to
from cyclo.ternary import CoefficientVector, chi_profile, dense_phi


class TestWFunc:
    @pytest.mark.parametrize(
        "p,j,want",
        [
            (19, 3, 12),
            (19, 5, 14),
            (19, 16, 12),
            (3, 1, 2),
            (5, 1, 3),
            (5, 2, 3),
            (7, 1, 4),
            (7, 2, 5),
            (7, 3, 4),
        ],
    )
    def test_examples(self, p, j, want):
        assert w_func(p, j) == want

    @pytest.mark.parametrize("p", [p for p in primes_up_to(200) if p > 2])
    def test_symmetry(self, p):
        for j in range(1, p):
            assert w_func(p, j) == w_func(p, p - j)

    def test_rejects_bad_j(self):
        with pytest.raises(OutOfRangeError):
            w_func(7, 0)
        with pytest.raises(OutOfRangeError):
            w_func(7, 7)

    def test_rejects_bad_p(self):
        with pytest.raises(NotPrimeError):
            w_func(9, 1)
        with pytest.raises(EvenPrimeError):
            w_func(2, 1)


class TestMFunc:
    @pytest.mark.parametrize(
        "p,j,want", [(19, 5, 12), (13, 5, 8), (11, 4, 7), (3, 1, 2)]
    )
    def test_examples(self, p, j, want):
        assert m_func(p, j) == want

    @pytest.mark.parametrize("p", [p for p in primes_up_to(100) if p > 2])
    def test_never_exceeds_cap(self, p):
        cap = 2 * p // 3
        assert all(m_func(p, j) <= cap for j in range(1, p))
        assert max(m_func(p, j) for j in range(1, p)) == cap


class TestBzdegaParams:
    def test_5_7_11(self):
        assert bzdega_params(make_triple(5, 7, 11)) == BzdegaParams(
            p=5, alpha=1, beta=3
        )

    def test_3_5_7(self):
        assert bzdega_params(make_triple(3, 5, 7)) == BzdegaParams(
            p=3, alpha=1, beta=2
        )

    def test_alpha_within_half_range(self):
        for p, q, r in [(5, 11, 13), (7, 17, 23), (11, 19, 601), (13, 73, 307)]:
            params = bzdega_params(make_triple(p, q, r))
            assert 1 <= params.alpha <= (p - 1) // 2
            assert 1 <= params.beta <= p - 1
            assert params.alpha * params.beta * q * r % p == 1


class TestBzdegaBounds:
    def test_unsharpened_examples(self):
        assert bzdega_bounds(make_triple(5, 7, 11), sharpened=False) == BoundPair(
            positive=2, negative=3
        )
        assert bzdega_bounds(make_triple(3, 5, 7), sharpened=False) == BoundPair(
            positive=1, negative=2
        )

    def test_sharpened_caps(self):
        for p, q, r in [(5, 7, 11), (7, 17, 23), (13, 73, 307)]:
            b = bzdega_bounds(make_triple(p, q, r), sharpened=True)
            cap = 2 * p // 3
            assert b.positive <= cap and b.negative <= cap

    def test_sharpened_never_above_unsharpened(self):
        for p, q, r in [(3, 5, 7), (5, 7, 11), (11, 19, 601), (19, 53, 859)]:
            t = make_triple(p, q, r)
            raw = bzdega_bounds(t, sharpened=False)
            capped = bzdega_bounds(t, sharpened=True)
            assert capped.positive <= raw.positive
            assert capped.negative <= raw.negative


class TestBeiterBound:
    @pytest.mark.parametrize(
        "p,q,want", [(19, 61, 12), (11, 71, 7), (3, 7, 2), (13, 73, 8)]
    )
    def test_examples(self, p, q, want):
        assert beiter_bound_mpq(p, q) == want

    def test_depends_only_on_residue(self):
        # 61 and 137 are both 4 mod 19.
        assert beiter_bound_mpq(19, 61) == beiter_bound_mpq(19, 137)

    def test_rejects_composite(self):
        with pytest.raises(NotPrimeError):
            beiter_bound_mpq(9, 11)
        with pytest.raises(NotPrimeError):
            beiter_bound_mpq(7, 15)

    def test_rejects_unordered(self):
        with pytest.raises(PreconditionError):
            beiter_bound_mpq(7, 5)
        with pytest.raises(PreconditionError):
            beiter_bound_mpq(7, 7)


class TestVerifyBoundsOnProfile:
    def test_385_saturates_both_sides(self):
        t = make_triple(5, 7, 11)
        report = verify_bounds_on_profile(t, chi_profile(t), sharpened=False)
        assert report.max_value == 2
        assert report.min_value == -3
        assert report.positive_slack == 0
        assert report.negative_slack == 0
        assert report.saturated

    def test_2737_saturates_sharpened_cap(self):
        t = make_triple(7, 17, 23)
        report = verify_bounds_on_profile(t, chi_profile(t), sharpened=True)
        assert report.positive_bound == 2 * 7 // 3 == 4
        assert report.max_value == 4
        assert report.positive_slack == 0

    def test_rejects_mismatched_profile(self):
        with pytest.raises(PreconditionError):
            verify_bounds_on_profile(make_triple(3, 5, 7), dense_phi(165))

    def test_violation_raises(self):
        t = make_triple(3, 5, 7)
        doctored = np.array(dense_phi(105).coeffs)
        doctored[10] = 50
        fake = CoefficientVector(n=105, degree=48, coeffs=doctored)
        with pytest.raises(BoundViolatedError) as exc:
            verify_bounds_on_profile(t, fake)
        assert exc.value.side == "positive"
        assert exc.value.value == 50
        assert exc.value.k == 10

    def test_negative_violation_raises(self):
        t = make_triple(3, 5, 7)
        doctored = np.array(dense_phi(105).coeffs)
        doctored[11] = -50
        fake = CoefficientVector(n=105, degree=48, coeffs=doctored)
        with pytest.raises(BoundViolatedError) as exc:
            verify_bounds_on_profile(t, fake)
        assert exc.value.side == "negative"


class TestHalfRangeTightRatio:
    def test_examples(self):
        assert half_range_tight_ratio(101) == pytest.approx(16 / 101)
        assert half_range_tight_ratio(13) == pytest.approx(2 / 13)
        assert half_range_tight_ratio(3) == 0.0

    def test_approaches_one_sixth(self):
        for p in (1009, 10007):
            assert abs(half_range_tight_ratio(p) - 1 / 6) < 0.01
