import json

import pytest

from cyclo.bounds import beiter_bound_mpq
from cyclo.cache import ClassHeightRecord, HeightCache
from cyclo.config import TOOL_VERSION
from cyclo.errors import (
    DegreeCapExceededError,
    NotPrimeError,
    OutOfRangeError,
    PreconditionError,
    TooManyPrimeFactorsError,
    TrivialReductionError,
)
from cyclo.heights import (
    enumerate_kaplan_classes,
    height,
    kaplan_invariance_check,
    m_of_p_q,
    mp_lower_bound_search,
    mpq_closed_form_residue_one,
)
from cyclo.numtheory import primes_up_to
from cyclo.refvalues import HEIGHT_RECORDS


class TestHeight:
    def test_105(self):
        rep = height(105)
        assert rep.reduced_n == 105
        assert rep.reductions == ()
        assert (rep.height, rep.smallest_k, rep.value_at_k) == (2, 7, -2)
        assert rep.method == "dense"

    def test_210_reduces(self):
        rep = height(210)
        assert rep.reduced_n == 105
        assert rep.reductions == ("even-reduction",)
        assert rep.height == 2

    def test_420_reduces_twice(self):
        rep = height(420)
        assert rep.reduced_n == 105
        assert set(rep.reductions) == {"even-reduction", "square-reduction"}
        assert rep.height == 2

    @pytest.mark.parametrize("rec", HEIGHT_RECORDS, ids=lambda r: str(r.n))
    def test_record_triples_chi(self, rec):
        rep = height(rec.n, method="chi")
        assert rep.height == rec.m_p
        assert rep.smallest_k == rec.smallest_k
        assert rep.value_at_k == rec.value
        assert rep.method == "chi"

    def test_binary_falls_back_to_dense(self):
        rep = height(35, method="chi")
        assert rep.method == "dense"
        assert rep.height == 1

    def test_trivial_index(self):
        with pytest.raises(TrivialReductionError):
            height(8)
        with pytest.raises(TrivialReductionError):
            height(1)

    def test_unknown_method(self):
        with pytest.raises(OutOfRangeError):
            height(105, method="fast")

    def test_four_factors(self):
        with pytest.raises(TooManyPrimeFactorsError):
            height(3 * 5 * 7 * 11)

    def test_degree_cap(self):
        with pytest.raises(DegreeCapExceededError):
            height(865013, degree_cap=1000)


class TestEnumerateKaplanClasses:
    def test_3_5_exact(self):
        classes = enumerate_kaplan_classes(3, 5)
        assert {c.residue: c.witness for c in classes} == {
            1: 29,
            2: 13,
            4: 11,
            7: 7,
        }

    def test_witness_properties(self):
        pq = 15
        for c in enumerate_kaplan_classes(3, 5):
            assert c.witness > 5
            assert c.witness % pq in (c.residue, pq - c.residue)

    @pytest.mark.parametrize("p,q", [(3, 7), (5, 11), (7, 29)])
    def test_count_formula(self, p, q):
        assert len(enumerate_kaplan_classes(p, q)) == (p - 1) * (q - 1) // 2

    def test_rejects_even_and_unordered(self):
        with pytest.raises(NotPrimeError):
            enumerate_kaplan_classes(3, 9)


class TestMpq:
    @pytest.mark.parametrize(
        "p,q,want",
        [(3, 7, 2), (3, 13, 2), (5, 11, 3), (7, 29, 4), (11, 23, 3)],
    )
    def test_known_values(self, p, q, want):
        assert m_of_p_q(p, q).value == want

    def test_11_19_full_evidence(self):
        res = m_of_p_q(11, 19)
        assert res.value == 7
        assert len(res.rows) == 90
        assert res.attaining.residue == 26
        assert res.attaining.witness == 601
        assert res.attaining.smallest_k == 34884
        assert res.attaining.value_at_k == 7
        histogram = {}
        for h in res.per_class_heights.values():
            histogram[h] = histogram.get(h, 0) + 1
        assert histogram == {1: 1, 2: 13, 3: 45, 4: 18, 5: 10, 6: 1, 7: 2}

    def test_degree_cap_preflight(self):
        with pytest.raises(DegreeCapExceededError):
            m_of_p_q(11, 19, degree_cap=10_000)

    def test_jobs_deterministic(self):
        serial = m_of_p_q(3, 7, cache=HeightCache())
        parallel = m_of_p_q(3, 7, cache=HeightCache(), jobs=2)
        assert serial == parallel


class TestClosedFormResidueOne:
    @pytest.mark.parametrize(
        "p,q,want", [(3, 7, 2), (3, 13, 2), (5, 11, 3), (7, 29, 4), (11, 23, 3)]
    )
    def test_matches_exact_computation(self, p, q, want):
        assert mpq_closed_form_residue_one(p, q) == want

    def test_large_q_saturates(self):
        # (q-1)/p + 1 grows without bound; the (p+1)/2 arm takes over.
        assert mpq_closed_form_residue_one(5, 31) == 3
        assert mpq_closed_form_residue_one(7, 113) == 4

    def test_rejects_wrong_residue(self):
        with pytest.raises(PreconditionError):
            mpq_closed_form_residue_one(5, 7)


class TestBoundSweep:
    def test_small_pairs_obey_all_ceilings(self):
        odd_primes = [p for p in primes_up_to(60) if p > 2]
        cache = HeightCache()
        computed = skipped = 0
        for i, p in enumerate(odd_primes):
            for q in odd_primes[i + 1 :]:
                try:
                    res = m_of_p_q(p, q, degree_cap=2_000_000, cache=cache)
                except DegreeCapExceededError:
                    skipped += 1
                    continue
                computed += 1
                assert res.value <= beiter_bound_mpq(p, q)
                assert res.value <= 2 * p // 3
                if q % p == 1:
                    assert res.value == mpq_closed_form_residue_one(p, q)
        assert computed == 57
        assert skipped == 63


class TestMpLowerBoundSearch:
    def test_p3_is_flat(self):
        out = mp_lower_bound_search(3, 3, 14)
        assert out.best is not None
        assert out.best.value == 2
        assert out.skipped == ()
        assert set(out.residue_lower_bounds) <= {1, 2}
        assert max(out.residue_lower_bounds.values()) == 2

    def test_p11_finds_record(self):
        out = mp_lower_bound_search(11, 12, 19)
        assert out.best.value == 7
        assert out.best.q == 19
        assert out.residue_lower_bounds[19 % 11] == 7

    def test_skips_above_cap(self):
        out = mp_lower_bound_search(11, 12, 19, degree_cap=10_000)
        assert out.best is None
        assert out.skipped == (13, 17, 19)

    def test_rejects_even_p(self):
        with pytest.raises(NotPrimeError):
            mp_lower_bound_search(2, 3, 10)


class TestKaplanInvariance:
    @pytest.mark.parametrize("s", [23, 37, 53])
    def test_holds(self, s):
        assert kaplan_invariance_check(3, 5, 7, s) is True

    def test_rejects_wrong_class(self):
        with pytest.raises(PreconditionError):
            kaplan_invariance_check(3, 5, 7, 11)

    def test_rejects_small_s(self):
        with pytest.raises(PreconditionError):
            kaplan_invariance_check(3, 5, 7, 3)

    def test_rejects_composite_s(self):
        with pytest.raises(NotPrimeError):
            kaplan_invariance_check(3, 5, 7, 22)


class TestHeightCache:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        first = m_of_p_q(3, 7, cache=HeightCache(path))
        size_after_first = path.stat().st_size
        again = m_of_p_q(3, 7, cache=HeightCache(path))
        assert again == first
        # All classes hit the cache, so nothing new is appended.
        assert path.stat().st_size == size_after_first
        assert len(path.read_text().splitlines()) == 6

    def test_stale_witness_recomputed(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        stale = ClassHeightRecord(
            p=3, q=7, residue=1, witness=999983, height=9, smallest_k=0, value_at_k=9
        )
        cache = HeightCache(path)
        cache.put(stale)
        res = m_of_p_q(3, 7, cache=cache)
        assert res.per_class_heights[1] <= 2

    def test_corrupt_lines_skipped(self, tmp_path, caplog):
        path = tmp_path / "cache.jsonl"
        good = {
            "p": 3,
            "q": 7,
            "residue": 1,
            "witness": 29,
            "height": 2,
            "smallest_k": 7,
            "value_at_k": -2,
            "tool_version": TOOL_VERSION,
        }
        path.write_text(
            "not json at all\n"
            + json.dumps({"p": 3}) + "\n"
            + json.dumps(good) + "\n"
        )
        with caplog.at_level("WARNING", logger="cyclo.cache"):
            cache = HeightCache(path)
        assert len(cache) == 1
        assert cache.get(3, 7, 1).witness == 29
        assert (
            sum(
                "skipping corrupt cache line" in r.getMessage()
                for r in caplog.records
            )
            == 2
        )

    def test_env_var_provides_default_path(self, tmp_path, monkeypatch):
        path = tmp_path / "envcache.jsonl"
        monkeypatch.setenv("CYCLO_CACHE", str(path))
        m_of_p_q(3, 7)
        assert path.exists()
        assert len(path.read_text().splitlines()) == 6

    def test_memory_only_by_default(self):
        cache = HeightCache()
        assert cache.path is None
        assert len(cache) == 0
