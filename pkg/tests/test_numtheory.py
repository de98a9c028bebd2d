import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclo.errors import (
    EvenPrimeError,
    NonCoprimeError,
    NonInvertibleError,
    NotOrderedError,
    NotPrimeError,
    SearchExhaustedError,
)
from cyclo.numtheory import (
    factorize,
    is_prime,
    make_triple,
    mobius,
    mod_inverse,
    next_prime_in_class,
    odd_squarefree_radical,
    primes_up_to,
    totient,
)


class TestIsPrime:
    def test_examples(self):
        assert is_prime(2)
        assert not is_prime(105)
        assert is_prime(601)

    def test_small_values(self):
        assert not is_prime(0)
        assert not is_prime(1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            is_prime(-1)
        with pytest.raises(ValueError):
            is_prime(1 << 63)

    def test_agrees_with_sieve_to_one_million(self):
        sieve = bytearray(1_000_001)
        for p in primes_up_to(1_000_000):
            sieve[p] = 1
        for n in range(1_000_001):
            assert is_prime(n) == bool(sieve[n]), n

    def test_large_prime_and_composite(self):
        assert is_prime((1 << 61) - 1)
        assert not is_prime((1 << 62) - 1)


class TestModInverse:
    @pytest.mark.parametrize("a,m,want", [(1, 7, 1), (3, 5, 2), (4, 19, 5)])
    def test_examples(self, a, m, want):
        assert mod_inverse(a, m) == want

    def test_not_invertible(self):
        with pytest.raises(NonInvertibleError):
            mod_inverse(2, 4)
        with pytest.raises(NonInvertibleError):
            mod_inverse(5, 1)

    def test_exhaustive_small_moduli(self):
        for m in range(2, 1001):
            for a in range(1, m):
                if math.gcd(a, m) == 1:
                    assert a * mod_inverse(a, m) % m == 1

    @given(st.integers(min_value=2, max_value=10_000), st.data())
    @settings(max_examples=300, deadline=None)
    def test_sampled_large_moduli(self, m, data):
        a = data.draw(st.integers(min_value=1, max_value=m - 1))
        if math.gcd(a, m) == 1:
            inv = mod_inverse(a, m)
            assert 1 <= inv <= m - 1
            assert a * inv % m == 1
        else:
            with pytest.raises(NonInvertibleError):
                mod_inverse(a, m)


class TestNextPrimeInClass:
    def test_examples(self):
        assert next_prime_in_class(1, 15, 15, 100) == 31
        assert next_prime_in_class(7, 15, 7, 100) == 37

    def test_non_coprime(self):
        with pytest.raises(NonCoprimeError):
            next_prime_in_class(2, 4, 1, 100)

    def test_exhausted(self):
        with pytest.raises(SearchExhaustedError):
            next_prime_in_class(1, 3, 3, max_steps=1)

    def test_strictly_above_lower_bound(self):
        # 7 is itself in the class; the search must not return it.
        assert next_prime_in_class(7, 15, 7, 100) > 7

    def test_negative_residue_normalized(self):
        assert next_prime_in_class(-7, 15, 5, 100) == 23


class TestFactorizeAndFriends:
    def test_factorize(self):
        assert factorize(1) == []
        assert factorize(90) == [(2, 1), (3, 2), (5, 1)]
        assert factorize(865013) == [(19, 1), (53, 1), (859, 1)]

    def test_odd_squarefree_radical(self):
        assert odd_squarefree_radical(1) == 1
        assert odd_squarefree_radical(90) == 15
        assert odd_squarefree_radical(105) == 105

    def test_mobius(self):
        assert mobius(1) == 1
        assert mobius(6) == 1
        assert mobius(30) == -1
        assert mobius(12) == 0

    def test_totient(self):
        assert totient(1) == 1
        assert totient(105) == 48
        assert totient(865013) == 18 * 52 * 858

    def test_primes_up_to(self):
        assert primes_up_to(1) == []
        assert primes_up_to(13) == [2, 3, 5, 7, 11, 13]
        assert len(primes_up_to(10_000)) == 1229


class TestMakeTriple:
    def test_residues(self):
        t = make_triple(3, 5, 7)
        assert (t.p_q_star, t.q_p_star, t.r_p_star, t.q_bar_p) == (2, 2, 1, 2)
        assert t.n == 105
        assert t.degree == 48

    def test_second_example(self):
        assert make_triple(7, 17, 23).q_p_star == 5

    def test_order_enforced(self):
        with pytest.raises(NotOrderedError):
            make_triple(5, 3, 7)

    def test_primality_enforced(self):
        with pytest.raises(NotPrimeError):
            make_triple(3, 5, 9)

    def test_odd_enforced(self):
        with pytest.raises(EvenPrimeError):
            make_triple(2, 5, 7)

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_closing_identity(self, data):
        pool = [p for p in primes_up_to(500) if p > 2]
        p, q, r = sorted(
            data.draw(
                st.lists(st.sampled_from(pool), min_size=3, max_size=3, unique=True)
            )
        )
        t = make_triple(p, q, r)
        assert t.p * t.p_q_star + t.q * t.q_p_star == t.p * t.q + 1
        assert t.q * t.q_p_star % t.p == 1
        assert t.r * t.r_p_star % t.p == 1
        assert t.p * t.p_q_star % t.q == 1
