import math
import time

import pytest

from abckit import (
    AlgebraicInt,
    QuadraticField,
    RATIONALS,
    RecurrenceSpec,
    char_poly,
    decide_zeros,
    degeneracy_check,
    find_roots,
    ideal_coprime,
    solve_coefficients,
    strip_common_primes,
    zero_bound,
)
from abckit.bounds import BoundConfig
from abckit.errors import (
    BadParameter,
    BadRadical,
    DegenerateHeight,
    RepeatedRoots,
    RootsNotCoprime,
    UnsupportedField,
)
from abckit.sml import closed_form_value, _state_at

Q = RATIONALS
FLAGSHIP = RecurrenceSpec(10, -31, 30, 31, 112, 452)


def q_int(v: int) -> AlgebraicInt:
    return AlgebraicInt(Q, v, 0)


def spec_from_roots(r1: int, r2: int, r3: int, a0: int, a1: int, a2: int) -> RecurrenceSpec:
    e1 = r1 + r2 + r3
    e2 = r1 * r2 + r1 * r3 + r2 * r3
    e3 = r1 * r2 * r3
    return RecurrenceSpec(e1, -e2, e3, a0, a1, a2)


def recurrence_values(spec: RecurrenceSpec, count: int) -> list[int]:
    vals = [spec.a0, spec.a1, spec.a2]
    while len(vals) < count:
        vals.append(spec.c1 * vals[-1] + spec.c2 * vals[-2] + spec.c3 * vals[-3])
    return vals[:count]


class TestCharPoly:
    def test_examples(self):
        assert char_poly(FLAGSHIP) == (1, -10, 31, -30)
        assert char_poly(RecurrenceSpec(0, 0, 1, 1, 1, 1)) == (1, 0, 0, -1)
        assert char_poly(RecurrenceSpec(1, 1, -1, 0, 0, 0)) == (1, -1, -1, 1)

    def test_order_three_required(self):
        with pytest.raises(BadParameter):
            RecurrenceSpec(1, 1, 0, 1, 1, 1)


class TestFindRoots:
    def test_three_rational_roots(self):
        roots, field = find_roots((1, -10, 31, -30))
        assert field.degree == 1
        assert sorted(r.x for r in roots) == [2, 3, 5]

    def test_cyclotomic_cubic(self):
        roots, field = find_roots((1, 0, 0, -1))
        assert field.d == -3
        assert any(r == AlgebraicInt(field, 1, 0) for r in roots)
        for r in roots:
            assert (r**3) == AlgebraicInt(field, 1, 0)

    def test_irreducible_rejected(self):
        with pytest.raises(UnsupportedField):
            find_roots((1, 0, 0, -2))

    def test_real_quadratic_rejected(self):
        # (x - 1)(x^2 - x - 1): golden-ratio pair
        with pytest.raises(UnsupportedField):
            find_roots((1, -2, 0, 1))

    def test_off_allowlist_field_rejected(self):
        # (x - 1)(x^2 + x + 6): disc = -23, squarefree, not class number one
        with pytest.raises(UnsupportedField):
            find_roots((1, 0, 5, -6))

    def test_repeated_roots_rejected(self):
        with pytest.raises(RepeatedRoots):
            find_roots((1, -7, 16, -12))  # (x-2)^2 (x-3)
        with pytest.raises(RepeatedRoots):
            find_roots((1, -3, 3, -1))  # (x-1)^3

    def test_roots_satisfy_cubic(self):
        for cubic in [(1, -2, 4, -3), (1, -1, 2, -2), (1, 3, 3, -7)]:
            try:
                roots, field = find_roots(cubic)
            except (UnsupportedField, RepeatedRoots):
                continue
            one, b, c, d = cubic
            for r in roots:
                val = r * r * r + b * (r * r) + c * r + AlgebraicInt(field, d, 0)
                assert val.is_zero()


class TestDegeneracy:
    def test_examples(self):
        assert degeneracy_check((q_int(1), q_int(-1), q_int(2))) is True
        assert degeneracy_check((q_int(2), q_int(3), q_int(5))) is False
        gi = QuadraticField(-1)
        assert degeneracy_check(
            (AlgebraicInt(gi, 1, 0), AlgebraicInt(gi, 0, 1), AlgebraicInt(gi, 2, 0))
        ) is True


class TestSolveCoefficients:
    def test_flagship_example(self):
        roots, _ = find_roots((1, -10, 31, -30))
        ks = solve_coefficients(roots, 31, 112, 452)
        assert [(k.num.x, k.den) for k in ks] == [(7, 1), (11, 1), (13, 1)]

    def test_mixed_signs(self):
        roots, _ = find_roots((1, -10, 31, -30))
        ks = solve_coefficients(roots, 1, 0, -12)
        assert [(k.num.x, k.den) for k in ks] == [(1, 1), (1, 1), (-1, 1)]

    def test_zero_sequence(self):
        roots, _ = find_roots((1, -10, 31, -30))
        assert all(k.is_zero() for k in solve_coefficients(roots, 0, 0, 0))

    def test_rational_coefficients_stay_exact(self):
        roots, _ = find_roots((1, -10, 31, -30))
        ks = solve_coefficients(roots, 1, 1, 1)
        assert [(k.num.x, k.den) for k in ks] == [(8, 3), (-2, 1), (1, 3)]
        for n in range(8):
            v = closed_form_value(ks, roots, n)
            a_n = recurrence_values(RecurrenceSpec(10, -31, 30, 1, 1, 1), n + 1)[n]
            assert v.num == q_int(a_n * v.den)

    def test_quadratic_field_solution_is_exact(self):
        roots, field = find_roots((1, -2, 4, -3))  # 1 and (1 +- sqrt(-11))/2
        assert field.d == -11
        for target in [(3, 2, -4), (1, 0, 0), (5, -7, 11)]:
            ks = solve_coefficients(roots, *target)
            for n, a_n in enumerate(target):
                v = closed_form_value(ks, roots, n)
                assert v.num == AlgebraicInt(field, a_n * v.den, 0)


class TestStripCommonPrimes:
    def test_all_roots_coprime_to_two(self):
        k = tuple(q_int(v) for v in (2, 6, 4))
        r = tuple(q_int(v) for v in (3, 5, 7))
        stripped, cert = strip_common_primes(k, r)
        assert [v.x for v in stripped] == [1, 3, 2]
        assert cert.n0 == 0
        assert [(e.prime.x, e.stripped) for e in cert.events] == [(2, 1)]

    def test_already_coprime_untouched(self):
        k = tuple(q_int(v) for v in (7, 11, 13))
        r = tuple(q_int(v) for v in (2, 3, 5))
        stripped, cert = strip_common_primes(k, r)
        assert [v.x for v in stripped] == [7, 11, 13] and not cert.events

    def test_root_absorbs_deficit(self):
        k = tuple(q_int(v) for v in (1, 2, 4))
        r = tuple(q_int(v) for v in (2, 3, 5))
        stripped, cert = strip_common_primes(k, r)
        assert [v.x for v in stripped] == [1, 1, 2]
        assert cert.n0 == 1
        event = cert.events[0]
        assert event.prime.x == 2 and event.stripped == 1 and event.absorbed_index == 0

    def test_rejects_non_coprime_roots(self):
        k = tuple(q_int(v) for v in (1, 1, 1))
        r = tuple(q_int(v) for v in (2, 6, 5))
        with pytest.raises(RootsNotCoprime):
            strip_common_primes(k, r)

    def test_rejects_zero_coefficient(self):
        with pytest.raises(BadParameter):
            strip_common_primes(
                (q_int(0), q_int(1), q_int(1)), (q_int(2), q_int(3), q_int(5))
            )

    def test_quadratic_field_strip(self):
        # over Q(sqrt(-11)), where 2 is inert: k = (2, -2+2w, -2w) all carry
        # one factor of 2 while the roots (1, w, 1-w) carry none
        field = QuadraticField(-11)
        k = (
            AlgebraicInt(field, 2, 0),
            AlgebraicInt(field, -2, 2),
            AlgebraicInt(field, 0, -2),
        )
        r = (
            AlgebraicInt(field, 1, 0),
            AlgebraicInt(field, 0, 1),
            AlgebraicInt(field, 1, -1),
        )
        stripped, cert = strip_common_primes(k, r)
        assert stripped == (
            AlgebraicInt(field, 1, 0),
            AlgebraicInt(field, -1, 1),
            AlgebraicInt(field, 0, -1),
        )
        assert cert.n0 == 0 and len(cert.events) == 1
        assert cert.events[0].norm == 4  # 2 is inert, so its norm is 4

    def test_no_prime_divides_all_three_terms_afterwards(self, rng):
        for _ in range(100):
            k = tuple(q_int(rng.randint(1, 400)) for _ in range(3))
            r = (q_int(2), q_int(3), q_int(5))
            stripped, cert = strip_common_primes(k, r)
            # reassembly: each coefficient lost exactly its recorded powers
            for i in range(3):
                assert k[i].x % stripped[i].x == 0
                ratio = k[i].x // stripped[i].x
                for event in cert.events:
                    while ratio % event.prime.x == 0:
                        ratio //= event.prime.x
                assert ratio == 1
            n = max(cert.n0, 1)
            terms = [stripped[i].x * r[i].x ** n for i in range(3)]
            g = math.gcd(math.gcd(terms[0], terms[1]), terms[2])
            # the original common power all moved out: nothing divides all three
            assert g == 1, (k, stripped, terms)

    def test_division_by_common_power_preserves_sums(self, rng):
        for _ in range(50):
            k = tuple(q_int(rng.randint(1, 200)) for _ in range(3))
            r = (q_int(3), q_int(5), q_int(14))
            stripped, cert = strip_common_primes(k, r)
            common = 1
            for event in cert.events:
                common *= event.prime.x ** event.stripped
            for n in range(max(cert.n0, 1), max(cert.n0, 1) + 6):
                original = sum(k[i].x * r[i].x ** n for i in range(3))
                assert original % common == 0


class TestZeroBound:
    def test_reference_values(self):
        assert zero_bound(30030, math.log(5), BoundConfig(C_main=1.0)) == pytest.approx(
            816.094179826881, rel=1e-9
        )
        assert zero_bound(30030, math.log(5), BoundConfig(C_main=0.0)) == pytest.approx(
            30030 ** (1 / 3) / math.log(5), rel=1e-12
        )
        # small radical: the exponent collapses to 1/3
        assert zero_bound(2, math.log(2)) == pytest.approx(2 ** (1 / 3) / math.log(2))

    def test_guards(self):
        with pytest.raises(BadRadical):
            zero_bound(1, 1.0)
        with pytest.raises(DegenerateHeight):
            zero_bound(30030, 0.0)


class TestDecideZeros:
    def test_flagship_example(self):
        start = time.monotonic()
        verdict = decide_zeros(FLAGSHIP)
        elapsed = time.monotonic() - start
        assert verdict.status == "NoZerosUpToBound"
        assert verdict.G == 30030
        assert verdict.zeros == ()
        assert abs(verdict.N - zero_bound(30030, math.log(5))) <= 1
        assert elapsed < 1.0

    def test_constructed_zero(self):
        verdict = decide_zeros(RecurrenceSpec(10, -31, 30, 1, 0, -12))
        assert verdict.status == "ZerosFound" and verdict.zeros == (1,)

    def test_degenerate_ratio(self):
        # roots 1, -1, 2
        verdict = decide_zeros(spec_from_roots(1, -1, 2, 5, 7, 9))
        assert verdict.status == "Degenerate"

    def test_identically_zero(self):
        verdict = decide_zeros(RecurrenceSpec(10, -31, 30, 0, 0, 0))
        assert verdict.status == "Degenerate"

    def test_vanishing_coefficient(self):
        # a_n = 2^n + 3^n: the 5-coefficient vanishes
        verdict = decide_zeros(RecurrenceSpec(10, -31, 30, 2, 5, 13))
        assert verdict.status == "Unsupported"

    def test_unsupported_cubic(self):
        verdict = decide_zeros(RecurrenceSpec(0, 0, 2, 1, 1, 1))  # x^3 - 2
        assert verdict.status == "Unsupported"

    def test_repeated_roots_reported(self):
        verdict = decide_zeros(RecurrenceSpec(7, -16, 12, 1, 1, 1))
        assert verdict.status == "Unsupported" and "root" in verdict.reason

    def test_non_coprime_roots_rejected(self):
        with pytest.raises(RootsNotCoprime):
            decide_zeros(spec_from_roots(2, 6, 5, 1, 1, 1))

    def test_quadratic_field_pipeline(self):
        # roots 1 and (1 +- sqrt(-11))/2 with unit coefficients
        verdict = decide_zeros(RecurrenceSpec(2, -4, 3, 3, 2, -4))
        assert verdict.status == "NoZerosUpToBound"
        assert verdict.G == 9  # the split primes over 3 each have norm 3
        assert verdict.h_max == pytest.approx(math.log(3), rel=1e-9)

    def test_zero_in_quadratic_field(self):
        # coefficients (2, -2+2w, -2w) over Q(sqrt(-11)) give a_0 = 0
        roots, field = find_roots((1, -2, 4, -3))
        ks = solve_coefficients(roots, 0, -10, -4)
        assert not any(k.is_zero() for k in ks)
        verdict = decide_zeros(RecurrenceSpec(2, -4, 3, 0, -10, -4))
        assert verdict.status == "ZerosFound" and 0 in verdict.zeros

    def test_cap_and_truncation(self):
        p1, p2, p3 = 1000003, 1000033, 1000037
        spec = spec_from_roots(
            2, 3, 5,
            p1 + p2 + p3, 2 * p1 + 3 * p2 + 5 * p3, 4 * p1 + 9 * p2 + 25 * p3,
        )
        verdict = decide_zeros(spec, cap=50)
        assert verdict.truncated and verdict.N == 50
        assert verdict.bound > 10**9
        assert verdict.status == "NoZerosUpToBound"

    def test_stripping_keeps_radical_small(self):
        # a_n = 1*2^n + 2*3^n + 4*5^n: the 2-part is shared for n >= 1
        spec = spec_from_roots(2, 3, 5, 7, 28, 122)
        verdict = decide_zeros(spec)
        assert verdict.G == 30 and verdict.n0 == 1

    def test_scaling_invariance(self):
        for m in (2, -3, 6):
            scaled = RecurrenceSpec(10, -31, 30, 31 * m, 112 * m, 452 * m)
            verdict = decide_zeros(scaled)
            assert verdict.status == "NoZerosUpToBound"
            assert verdict.G == 30030 and abs(verdict.N - 816) <= 1
            scaled_zero = RecurrenceSpec(10, -31, 30, m, 0, -12 * m)
            assert decide_zeros(scaled_zero).zeros == (1,)

    def test_workers_agree(self):
        seq = decide_zeros(FLAGSHIP, workers=1)
        par = decide_zeros(FLAGSHIP, workers=3)
        assert (seq.status, seq.zeros, seq.N, seq.G) == (par.status, par.zeros, par.N, par.G)

    def test_verdict_soundness_random(self, rng):
        for _ in range(25):
            roots = rng.sample([-5, -4, -3, -2, 2, 3, 4, 5], 3)
            spec = spec_from_roots(*roots, rng.randint(-20, 20),
                                   rng.randint(-20, 20), rng.randint(-20, 20))
            try:
                verdict = decide_zeros(spec, cap=800)
            except RootsNotCoprime:
                continue
            if verdict.status not in ("ZerosFound", "NoZerosUpToBound"):
                continue
            values = recurrence_values(spec, verdict.N + 1)
            expected = tuple(n for n, v in enumerate(values) if v == 0)
            assert verdict.zeros == expected


class TestClosedFormMatchesRecurrence:
    def test_rational_specs(self, rng):
        checked = 0
        while checked < 150:
            roots = rng.sample([-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6], 3)
            spec = spec_from_roots(*roots, rng.randint(-50, 50),
                                   rng.randint(-50, 50), rng.randint(-50, 50))
            root_elements, _ = find_roots(char_poly(spec))
            ks = solve_coefficients(root_elements, spec.a0, spec.a1, spec.a2)
            values = recurrence_values(spec, 201)
            for n in (0, 1, 2, 3, 7, 50, 200):
                v = closed_form_value(ks, root_elements, n)
                assert v.num == q_int(values[n] * v.den)
            checked += 1

    def test_quadratic_specs(self, rng):
        candidates = [
            (p, q)
            for p in range(-6, 7)
            for q in range(1, 8)
            if p * p - 4 * q < 0
        ]
        checked = 0
        for p, q in candidates:
            for r in (1, -1, 2, 3):
                # cubic (x - r)(x^2 + px + q)
                c1, c2, c3 = r - p, r * p - q, r * q
                if c3 == 0:
                    continue
                try:
                    roots, field = find_roots((1, -c1, -c2, -c3))
                except (UnsupportedField, RepeatedRoots):
                    continue
                spec = RecurrenceSpec(c1, c2, c3, 3, -1, 4)
                ks = solve_coefficients(roots, spec.a0, spec.a1, spec.a2)
                values = recurrence_values(spec, 61)
                for n in (0, 1, 2, 5, 20, 60):
                    v = closed_form_value(ks, roots, n)
                    assert v.num == AlgebraicInt(field, values[n] * v.den, 0)
                checked += 1
                if checked >= 50:
                    return
        assert checked >= 20


class TestStateJump:
    def test_matrix_power_matches_iteration(self):
        values = recurrence_values(FLAGSHIP, 40)
        for n in (0, 1, 2, 5, 17, 37):
            assert _state_at(FLAGSHIP, n) == tuple(values[n:n + 3])
