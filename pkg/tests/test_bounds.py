import math

import numpy as np
import pytest

from abckit import (
    RATIONALS,
    QuadraticField,
    corollary_bound,
    empirical_min_C,
    exponent_term,
    gyory_sunit_bound,
    landau_min_constant,
    lefourn_sunit_bound,
    make_triple,
    thm1_rhs,
    thm2_rhs,
    thm3_rhs,
    tidy_bound,
    yu_ord_bound,
)
from abckit.arith import prime_ideals_in_norm_order
from abckit.bounds import BoundConfig, DEFAULT_CONFIG
from abckit.errors import (
    BadAlpha,
    BadParameter,
    BadRadical,
    EmptyDataset,
    HypothesisFails,
    NotApplicable,
)

from test_radical import random_triple

Q = RATIONALS
T189 = make_triple(1, 8, -9)


class TestExponentTerm:
    def test_reference_value(self):
        # logloglog(30030)/loglog(30030)
        lg = math.log(30030)
        expected = math.log(math.log(lg)) / math.log(lg)
        assert abs(exponent_term(30030, 1.0) - expected) < 1e-12
        assert abs(expected - 0.3632) < 5e-4

    def test_small_radical_guard(self):
        assert exponent_term(6, 1.0) == 0.0
        assert exponent_term(2, 100.0) == 0.0

    def test_boundary_value(self):
        # just above e^(e^e) the term is close to (log e)/e
        assert abs(exponent_term(3814280, 2.0) - 2 / math.e) < 1e-3

    def test_bad_radical(self):
        with pytest.raises(BadRadical):
            exponent_term(1, 1.0)

    def test_scales_linearly_in_C(self):
        assert abs(exponent_term(30030, 3.0) - 3 * exponent_term(30030, 1.0)) < 1e-12

    def test_full_exponent_adds_lower_order_terms(self):
        cfg = BoundConfig(full_exponent=True)
        lg = math.log(30030)
        llg = math.log(lg)
        expected = math.log(llg) / llg + 1 / llg + llg / lg
        assert abs(exponent_term(30030, 1.0, cfg) - expected) < 1e-12


class TestTheoremEvaluators:
    def test_thm1_reference_triple(self):
        report = thm1_rhs(T189)
        assert abs(report.rhs - 54 ** (1 / 3)) < 1e-12
        assert abs(report.lhs - math.log(9)) < 1e-12
        assert report.holds and report.regime == "small-radical"

    def test_thm2_reference_triple(self):
        report = thm2_rhs(T189)
        assert abs(report.rhs - 3 * math.sqrt(2)) < 1e-12
        assert abs(report.margin - 2.0454161097830654) < 1e-9

    def test_thm3_reference_triple(self):
        report = thm3_rhs(T189)
        assert abs(report.rhs - 6 ** (1 / 3)) < 1e-12
        assert abs(report.weak_rhs - 6 ** (1 / 3)) < 1e-12

    def test_selectors_use_height_order(self):
        # storing the coordinates in a different order must not change the rhs
        for perm in [(8, 1, -9), (-9, 8, 1), (1, -9, 8)]:
            assert abs(thm1_rhs(make_triple(*perm)).rhs - 54 ** (1 / 3)) < 1e-12

    def test_thm1_against_brute_force_selector_oracle(self):
        # selectors of (3, 125, -128) recomputed by plain trial division
        def top_prime(n):
            n, best = abs(n), 1
            d = 2
            while d * d <= n:
                while n % d == 0:
                    best, n = d, n // d
                d += 1
            return max(best, n) if n > 1 else best

        coords = sorted((3, 125, -128), key=abs)
        n_a, n_b, n_c = (top_prime(v) for v in coords)
        assert (n_a, n_b, n_c) == (3, 5, 2)
        g = 2 * 3 * 5
        expected = (n_a * n_b * n_c**2 * max(n_b, n_c)) ** (1 / 3) * g ** exponent_term(g, 1.0)
        report = thm1_rhs(make_triple(3, 125, -128))
        assert report.rhs == pytest.approx(expected, rel=1e-12)
        assert report.holds == (report.rhs >= math.log(128))

    def test_monotone_in_C(self, rng):
        for _ in range(40):
            t = random_triple(rng)
            for evaluator in (thm1_rhs, thm2_rhs, thm3_rhs):
                values = [
                    evaluator(t, DEFAULT_CONFIG.with_C(c)).rhs
                    for c in (0.01, 0.5, 1.0, 2.0)
                ]
                assert values == sorted(values)

    def test_rhs_at_least_one(self, rng):
        for _ in range(60):
            t = random_triple(rng)
            assert thm3_rhs(t).rhs >= 1.0

    def test_thm3_weak_form_dominates_product_form(self, rng):
        # the selector product never exceeds G, so G^(1/3) can only be larger
        for _ in range(120):
            report = thm3_rhs(random_triple(rng))
            assert report.weak_rhs >= report.rhs * (1 - 1e-12)


def _top3_and_radical(limit):
    """Per n <= limit: three largest distinct primes (0-padded) and the radical."""
    spf = list(range(limit + 1))
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    top = np.zeros((limit + 1, 3), dtype=np.int64)
    rad = np.ones(limit + 1, dtype=np.int64)
    for n in range(2, limit + 1):
        m, primes = n, []
        while m > 1:
            p = spf[m]
            primes.append(p)
            while m % p == 0:
                m //= p
        primes.sort(reverse=True)
        for i, p in enumerate(primes[:3]):
            top[n, i] = p
        for p in primes:
            rad[n] *= p
    return top, rad


class TestThm3ProductDominatedByRadical:
    def test_exhaustive_height_10000(self):
        # N_a N_b N_c N'_c N_q <= G for every primitive triple with H <= 10^4,
        # in exact integer arithmetic
        limit = 10**4
        top, rad = _top3_and_radical(limit)
        maxp = top[:, 0]
        worst = 0
        for z in range(2, limit + 1):
            xs = np.arange(1, z // 2 + 1)
            xs = xs[np.gcd(xs, z) == 1]
            if xs.size == 0:
                continue
            ys = z - xs
            n_a = np.maximum(maxp[xs], 1)
            n_b = np.maximum(maxp[ys], 1)
            n_c = max(int(maxp[z]), 1)
            n_c3 = max(int(top[z, 2]), 1)
            merged = np.stack(
                [top[ys, 0], top[ys, 1], top[ys, 2],
                 np.full(xs.size, top[z, 0]), np.full(xs.size, top[z, 1]),
                 np.full(xs.size, top[z, 2])],
                axis=1,
            )
            third = np.partition(merged, 3, axis=1)[:, 3]
            n_q = np.maximum(third, 1)
            product = n_a * n_b * n_c * n_c3 * n_q
            g = rad[xs] * rad[ys] * rad[z]
            worst = max(worst, int(product.max()))
            assert np.all(product <= g), f"violation at Z={z}"
        assert worst < 2**62  # int64 never overflowed

    def test_random_triples_all_fields(self, rng):
        from abckit.radical import ordered_selectors

        for _ in range(300):
            t = random_triple(rng)
            sel = ordered_selectors(t)
            assert sel.n_a * sel.n_b * sel.n_c * sel.n_c_third * sel.n_q <= t.G


class TestCorollaries:
    def test_not_applicable_ids(self):
        for cid in (1, 2, 8):
            with pytest.raises(NotApplicable):
                corollary_bound(cid, T189)

    def test_cor3(self):
        t = make_triple(1, -16, 15)  # ordered: N_b = 5 > N_c = 2
        report = corollary_bound(3, t)
        assert report.exponent_used == pytest.approx(2 / 3 + exponent_term(t.G, 1.0))
        with pytest.raises(HypothesisFails):
            corollary_bound(3, T189)  # N_b = 2 < N_c = 3

    def test_cor4_both_branches(self):
        t = make_triple(7, 25, -32)  # 7 > 5 > 2
        report = corollary_bound(4, t)
        assert report.exponent_used == pytest.approx(5 / 9 + exponent_term(t.G, 1.0))
        t = make_triple(11, 16, -27)  # 11 > 3 >= 2
        report = corollary_bound(4, t)
        assert report.exponent_used == pytest.approx(2 / 3 + exponent_term(t.G, 1.0))
        with pytest.raises(HypothesisFails):
            corollary_bound(4, T189)

    def test_cor5(self):
        report = corollary_bound(5, T189, alpha=1.0)
        assert report.exponent_used == pytest.approx(1.0)  # trivial boundary
        report = corollary_bound(5, T189, alpha=0.7)
        assert report.exponent_used == pytest.approx((1 + 1.4) / 3)
        with pytest.raises(BadAlpha):
            corollary_bound(5, T189, alpha=1.5)
        with pytest.raises(BadAlpha):
            corollary_bound(5, T189)

    def test_cor6(self):
        t = make_triple(13, 243, -256)
        report = corollary_bound(6, t, alpha=0.65)
        assert report.exponent_used == pytest.approx(1 / (3 - 1.3) + exponent_term(t.G, 1.0))
        with pytest.raises(HypothesisFails):
            corollary_bound(6, T189, alpha=0.5)
        with pytest.raises(BadAlpha):
            corollary_bound(6, t, alpha=0.7)

    def test_cor7_hypothesis_needs_huge_heights(self):
        with pytest.raises(HypothesisFails):
            corollary_bound(7, T189, alpha=0.5)
        with pytest.raises(BadAlpha):
            corollary_bound(7, T189, alpha=0.61)
        # the scaled exponent it would apply: C/(3 - 5a) doubles at a = 1/2
        scaled = exponent_term(30030, 1.0 / (3 - 5 * 0.5))
        assert scaled == pytest.approx(2 * exponent_term(30030, 1.0), rel=1e-12)
        assert scaled == pytest.approx(2 * 0.3632, abs=2e-3)

    def test_cor9_form_selection(self):
        report = corollary_bound(9, T189, alpha=0.7)  # max(N_b,N_c)=3 < 6^0.7
        assert report.exponent_used == pytest.approx(3 * 0.7 / 2)  # G=6: no extra term
        assert "3a/2" in report.detail
        # at alpha = 0.6 only the max-ord route is open: ord exponents of 9 = 2
        report = corollary_bound(9, T189, alpha=0.6)
        assert report.exponent_used == pytest.approx((1 + 0.6) / 2)
        with pytest.raises(HypothesisFails):
            corollary_bound(9, T189, alpha=0.6, form=2)

    def test_cor10(self):
        t = make_triple(3, 125, -128)
        report = corollary_bound(10, t, alpha=0.5)
        assert report.exponent_used == pytest.approx(1 / (2 - 0.5) + exponent_term(t.G, 1.0))
        with pytest.raises(HypothesisFails):
            corollary_bound(10, t, alpha=0.5, form=2)

    def test_cor11(self):
        t = make_triple(13, 35, -48)  # 13^3 <= 2730
        report = corollary_bound(11, t)
        assert report.exponent_used == pytest.approx(1 / 2 + exponent_term(t.G, 1.0))
        t = make_triple(7, 9, -16)
        report = corollary_bound(11, t, alpha=0.4)
        assert report.exponent_used == pytest.approx((3 - 1.2) / 2 + exponent_term(t.G, 1.0))
        with pytest.raises(HypothesisFails):
            corollary_bound(11, T189, alpha=0.4)

    def test_cor12(self):
        t = make_triple(3, 125, -128)  # ord at top prime of c: 2^7
        term = exponent_term(t.G, 1.0)
        report = corollary_bound(12, t, alpha=1.0)
        assert report.exponent_used == pytest.approx(1.0 + term)
        report = corollary_bound(12, t, alpha=0.8)
        assert report.exponent_used == pytest.approx(0.8 + term)
        with pytest.raises(HypothesisFails):
            corollary_bound(12, t, alpha=0.5)  # 30^0.5 < 7

    def test_cor13(self):
        report = corollary_bound(13, T189, alpha=0.9)  # ord 2 < log(9)^0.9
        expected = max(6 ** 0.75, math.log(6) ** 10)
        assert report.rhs == pytest.approx(expected, rel=1e-9)
        with pytest.raises(HypothesisFails):
            corollary_bound(13, make_triple(3, 125, -128), alpha=0.5)

    def test_unknown_id(self):
        with pytest.raises(BadParameter):
            corollary_bound(14, T189)


class TestYuBound:
    def test_reference_value(self):
        got = yu_ord_bound(1, 1, 1, 2, [math.log(3)], 3)
        expected = (
            (16 * math.e) ** 4
            * math.log(2) ** 2
            * (2 / math.log(2) ** 2)
            * math.log(3)
            * math.log(3)
        )
        assert got == pytest.approx(expected, rel=1e-9)
        assert got == pytest.approx(8.6e6, rel=0.01)

    def test_monotone_in_prime_norm_past_e_squared(self):
        lo = yu_ord_bound(1, 1, 1, 8, [1.0], 3)
        hi = yu_ord_bound(1, 1, 1, 11, [1.0], 3)
        assert hi > lo

    def test_height_floor_applies(self):
        # a zero height is replaced by 1/(16 e^2 d^2), not dropped
        assert yu_ord_bound(1, 1, 1, 2, [0.0], 3) > 0

    def test_parameter_validation(self):
        with pytest.raises(BadParameter):
            yu_ord_bound(0, 1, 1, 2, [], 3)
        with pytest.raises(BadParameter):
            yu_ord_bound(1, 1, 1, 1, [1.0], 3)
        with pytest.raises(BadParameter):
            yu_ord_bound(1, 1, 1, 2, [1.0], 2)
        with pytest.raises(BadParameter):
            yu_ord_bound(1, 1, 1, 2, [1.0, 2.0], 3)


class TestTidyBound:
    def test_examples(self):
        assert tidy_bound(10) == pytest.approx(20 * math.log(10))
        assert tidy_bound(1) == pytest.approx(math.e)
        # a = 35 has a/log a < 10 and is indeed below tidy_bound(10)
        assert 35 / math.log(35) < 10 < 35 < tidy_bound(10)

    def test_contract_100k_random_pairs(self, rng):
        for _ in range(100_000):
            a = rng.uniform(1e-6, 1e9)
            x = rng.uniform(1e-6, 1e6)
            if a != 1.0 and a / math.log(a) < x:
                assert a < tidy_bound(x) * (1 + 1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(BadParameter):
            tidy_bound(0.0)


class TestLandau:
    def test_rationals_first_prime(self):
        assert landau_min_constant(Q, 1) == pytest.approx(math.log(2) / 2, rel=1e-12)

    def test_gaussian_first_three_ideals(self):
        # norms in order are 2, 5, 5: scan the three partial products directly
        ratios = [2 / math.log(2), 5 / math.log(5), 5 / math.log(5)]
        best, prod = 0.0, 1.0
        for r, ratio in enumerate(ratios, start=1):
            prod *= ratio
            best = max(best, r / prod ** (1 / r))
        assert landau_min_constant(QuadraticField(-1), 3) == pytest.approx(best, rel=1e-12)

    def test_certifies_defining_inequality(self):
        for field in (Q, QuadraticField(-1), QuadraticField(-3), QuadraticField(-163)):
            R = 100 if field.degree == 1 else 50
            c = landau_min_constant(field, R)
            log_prod = 0.0
            for r, entry in enumerate(prime_ideals_in_norm_order(field, R), start=1):
                log_prod += math.log(entry.norm) - math.log(math.log(entry.norm))
                assert log_prod >= r * (math.log(r) - math.log(c)) - 1e-9

    def test_monotone_in_R(self):
        values = [landau_min_constant(Q, r) for r in (1, 5, 20, 100)]
        assert values == sorted(values)

    def test_bad_R(self):
        with pytest.raises(BadParameter):
            landau_min_constant(Q, 0)


class TestSUnitEvaluators:
    def test_regulator_is_one_for_rank_zero_fields(self):
        from abckit import regulator

        assert regulator(Q) == 1.0
        assert regulator(QuadraticField(-163)) == 1.0

    def test_gyory_no_finite_places(self):
        assert gyory_sunit_bound(2.0, 3.0) == pytest.approx(3.0)
        assert gyory_sunit_bound(0.1, 0.2) == pytest.approx(1.0)  # max with 1

    def test_gyory_with_finite_places(self):
        v1 = gyory_sunit_bound(2.0, 3.0, t=1, P=7.0, R=2.0, R_S=2.0)
        v2 = gyory_sunit_bound(2.0, 3.0, t=2, P=7.0, R=2.0, R_S=2.0)
        assert 0 < v1 < v2  # extra places only enlarge the bound

    def test_lefourn_branches(self):
        small = lefourn_sunit_bound(1.0, 2.0, degree=2, t=1, R_S=3.0)
        assert small == pytest.approx(DEFAULT_CONFIG.lefourn_C118 * 3.0 * math.log(3.0) * 2.0)
        general = lefourn_sunit_bound(1.0, 2.0, degree=2, t=3, R_S=3.0, P3=5.0)
        expected = 5.0 * 3.0 * (1 + math.log(3.0) / math.log(5.0)) * 2.0
        assert general == pytest.approx(expected)
        with pytest.raises(BadParameter):
            lefourn_sunit_bound(1.0, 2.0, degree=2, t=3, R_S=3.0, P3=1.0)


class TestCalibration:
    def test_already_holds_at_zero(self):
        assert empirical_min_C([T189], 2) == 0.0

    def test_positive_when_needed(self):
        t = make_triple(3, 125, -128)  # log 128 > sqrt(5) * 2
        c = empirical_min_C([t], 2)
        assert c > 0
        report = thm2_rhs(t, DEFAULT_CONFIG.with_C(c))
        assert report.holds
        # 1e-6 bisection tolerance translates to a slim positive margin
        tight = thm2_rhs(t, DEFAULT_CONFIG.with_C(max(c - 1e-4, 0.0)))
        assert not tight.holds

    def test_monotone_under_dataset_growth(self):
        small = empirical_min_C([T189], 2)
        grown = empirical_min_C([T189, make_triple(3, 125, -128)], 2)
        assert grown >= small

    def test_worker_counts_agree(self, rng):
        dataset = [random_triple(rng, Q, 500) for _ in range(80)]
        sequential = empirical_min_C(dataset, 2, workers=1)
        parallel = empirical_min_C(dataset, 2, workers=3)
        assert sequential == parallel

    def test_empty_dataset(self):
        with pytest.raises(EmptyDataset):
            empirical_min_C([], 2)

    def test_thm3_needs_the_radical_guard_respected(self):
        from abckit.radical import enumerate_primitive_triples
        from abckit.errors import BadParameter as BP

        dataset = enumerate_primitive_triples(120)
        # small-radical triples sink the bare product form at every C
        with pytest.raises(BP):
            empirical_min_C(dataset, 3)
        filtered = [t for t in dataset if t.G > DEFAULT_CONFIG.G_min]
        c3 = empirical_min_C(filtered, 3)
        assert c3 >= 0
        config = DEFAULT_CONFIG.with_C(c3)
        from abckit import thm3_rhs as thm3

        assert all(thm3(t, config).holds for t in filtered)
