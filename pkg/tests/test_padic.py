import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorint.landau import FactorialRatioSpec, harmonic, q_ratio
from mirrorint.mirror import build_bundle
from mirrorint.padic import (
    INFINITE,
    congruence25_check,
    congruence_star_check,
    dwork_decomposition_check,
    dwork_exp_test,
    dwork_quotient_test,
    is_prime,
    lemma24_check,
    lemma_ablanc_check,
    lemma_harmonic_check,
    mu_and_g,
    phi,
    phi_membership_scan,
    s_membership_scan,
    s_sum,
    vp_q_ratio_via_delta,
    vp_rational,
    w_term,
)
from mirrorint.series import TruncatedSeries

S6 = FactorialRatioSpec((6,), (3, 2, 1))
S2 = FactorialRatioSpec((2,), (1, 1))
S12 = FactorialRatioSpec((12,), (4, 3, 3, 2))
TRIVIAL = FactorialRatioSpec((1,), (1,))
CASE_II = FactorialRatioSpec((30, 1), (15, 10, 6))


class TestValuation:
    def test_factor_seventy(self):
        assert vp_rational(Fraction(70), 7) == 1

    def test_unit(self):
        for p in (2, 3, 5, 7):
            assert vp_rational(Fraction(1), p) == 0

    def test_denominator_power(self):
        assert vp_rational(Fraction(3, 4), 2) == -2

    def test_zero_is_infinite(self):
        v = vp_rational(Fraction(0), 5)
        assert v == INFINITE
        assert v > 10**9

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            vp_rational(Fraction(1), 6)


class TestValuationViaDelta:
    def test_q_of_four(self):
        assert q_ratio(S2, 4) == 70
        assert vp_q_ratio_via_delta(S2, 4, 7) == 1

    def test_n_zero(self):
        assert vp_q_ratio_via_delta(S6, 0, 3) == 0

    def test_q_of_one(self):
        assert vp_q_ratio_via_delta(S6, 1, 5) == 1

    @pytest.mark.parametrize("spec", [S6, S2, S12, TRIVIAL, CASE_II])
    def test_agrees_with_direct_valuation(self, spec):
        for p in (2, 3, 5, 7, 11, 13):
            for n in range(0, 60):
                assert vp_q_ratio_via_delta(spec, n, p) == vp_rational(
                    q_ratio(spec, n), p
                )


class TestDworkQuotient:
    def test_integral_f_passes(self):
        bundle = build_bundle(S2, 27, levels=())
        assert dwork_quotient_test(bundle.F, 3).member

    def test_constant_one(self):
        assert dwork_quotient_test(TruncatedSeries.one(10), 5).member

    def test_non_integral_fails(self):
        bad = TruncatedSeries.from_coeffs([1, Fraction(1, 3)], order=9)
        report = dwork_quotient_test(bad, 3)
        assert not report.member
        assert report.actual_valuation < 1

    @given(
        coeffs=st.lists(
            st.integers(min_value=-9, max_value=9), min_size=12, max_size=12
        ),
        p=st.sampled_from([2, 3, 5]),
    )
    @settings(max_examples=40)
    def test_lemma_both_directions(self, coeffs, p):
        # integral unit series always pass; inserting a denominator p flips it
        ser = TruncatedSeries.from_coeffs([1] + coeffs)
        assert dwork_quotient_test(ser, p).member
        corrupted = TruncatedSeries(
            ser.coeffs[:5] + (ser.coeffs[5] + Fraction(1, p),) + ser.coeffs[6:]
        )
        assert not dwork_quotient_test(corrupted, p).member


class TestDworkExp:
    def test_plain_z_fails(self):
        for p in (2, 3, 5):
            ser = TruncatedSeries.from_coeffs([0, 1], order=p + 2)
            assert not dwork_exp_test(ser, p).member

    def test_pz_passes_below_p(self):
        for p in (3, 5):
            ser = TruncatedSeries.from_coeffs([0, p], order=p - 1)
            assert dwork_exp_test(ser, p).member

    def test_case_i_ratio_passes(self):
        bundle = build_bundle(S6, 30, levels=())
        ratio = bundle.G * bundle.F.reciprocal()
        assert dwork_exp_test(ratio, 5).member

    def test_consistency_with_exponential(self):
        # both routes must agree on exp(f) being p-integral
        bundle = build_bundle(S2, 20, levels=())
        ratio = bundle.G * bundle.F.reciprocal()
        for p in (2, 3, 5):
            direct = all(
                vp_rational(c, p) >= 0 for c in ratio.exp().coeffs
            )
            assert dwork_exp_test(ratio, p).member == direct


class TestPhi:
    def test_origin(self):
        assert phi(S6, 1, 5, 0, 0) == 0

    def test_hand_evaluation(self):
        value = phi(S6, 1, 5, 1, 0)
        assert value == q_ratio(S6, 0) * q_ratio(S6, 1) * (
            harmonic(0) - 5 * harmonic(1)
        )
        assert value == -300
        assert vp_rational(value, 5) >= 1 + vp_rational(Fraction(60), 5)

    def test_brute_force_oracle(self):
        # independent evaluation of the defining sum at L=2, p=3, a=0, K=1
        expected = sum(
            q_ratio(S2, 1 - j)
            * q_ratio(S2, 0 + 3 * j)
            * (harmonic(2 * (1 - j)) - 3 * harmonic(2 * (0 + 3 * j)))
            for j in range(2)
        )
        assert phi(S2, 2, 3, 0, 1) == expected
        assert vp_rational(expected, 3) >= 1

    def test_scan_case_i(self):
        for level in (1, 3, 6):
            for p in (2, 3, 5, 7):
                report = phi_membership_scan(S6, level, p, a_max=p - 1, k_max=8)
                assert report.member, (level, p, report.witness)

    def test_scan_trivial(self):
        report = phi_membership_scan(TRIVIAL, 1, 3, a_max=2, k_max=8)
        assert report.member

    def test_scan_refuses_case_ii(self):
        with pytest.raises(ValueError):
            phi_membership_scan(CASE_II, 1, 3, a_max=2, k_max=5)


class TestSplitSum:
    def test_below_block_is_zero(self):
        assert s_sum(S2, 1, 2, 1, 3, 2) == 0  # K < m p^s

    def test_single_index_block(self):
        j = 2
        expected = q_ratio(S2, 0 + j * 3) * q_ratio(S2, 5 - j) - q_ratio(
            S2, j
        ) * q_ratio(S2, 0 + (5 - j) * 3)
        assert s_sum(S2, 0, 5, 0, 3, j) == expected

    def test_midpoint_antisymmetry(self):
        assert s_sum(S2, 1, 2, 0, 3, 1) == 0

    def test_membership_scan(self):
        for p in (2, 3, 5):
            report = s_membership_scan(
                S6, p, a_max=p - 1, k_max=8, s_max=2, m_max=8
            )
            assert report.member, (p, report.witness)


class TestMuAndG:
    def test_zero(self):
        assert mu_and_g(S6, 5, 0) == (0, 1)

    def test_direct_scan(self):
        assert mu_and_g(S6, 5, 3) == (1, 5)

    def test_prime_power_argument(self):
        # all fractional parts are p^{t-l}; count those >= 1/M exactly
        p, t = 3, 2
        m = p**t
        mu, g = mu_and_g(S6, p, m)
        expected = sum(
            1
            for ell in range(1, 12)
            if Fraction(m % p**ell, p**ell) >= Fraction(1, 6)
        )
        assert (mu, g) == (expected, p**expected)


class TestWTerm:
    def test_m_zero(self):
        assert w_term(S2, 1, 1, 4, 2, 3, 0) == 0

    def test_zero_block(self):
        assert w_term(S2, 1, 1, 2, 1, 3, 2) == 0

    def test_brute_force(self):
        expected = (
            harmonic(1 * 1 * 3**0) - harmonic(1 * 0 * 3**1)
        ) * s_sum(S2, 1, 3, 0, 3, 1)
        assert w_term(S2, 1, 1, 3, 0, 3, 1) == expected


class TestDworkDecomposition:
    def test_k_zero(self):
        assert dwork_decomposition_check(S2, 1, 0, 0, 3)

    def test_worked_small_cases(self):
        assert dwork_decomposition_check(S2, 2, 2, 4, 3)
        assert dwork_decomposition_check(S6, 3, 1, 5, 2)

    def test_small_grid(self):
        for p in (2, 3):
            for a in range(p):
                for big_k in range(0, 7):
                    for level in (1, 2):
                        assert dwork_decomposition_check(S2, level, a, big_k, p)


class TestLemmaAblanc:
    def test_worked_example(self):
        assert lemma_ablanc_check(S6, 2, 1)

    def test_vacuous_when_m_smaller_than_p(self):
        assert lemma_ablanc_check(S2, 3, 7)  # beta = 0, nothing to check

    def test_prime_powers(self):
        for k in range(0, 6):
            assert lemma_ablanc_check(S6, 2, 2**k)

    def test_exhaustive_small(self):
        for p in (2, 3, 5):
            for m in range(1, 80):
                assert lemma_ablanc_check(S12, p, m)


class TestLemma24:
    def test_vacuous_empty_u_range(self):
        assert lemma24_check(3, 1, 0, 6, 4, 2)  # floor(La/p^s) = 0

    def test_single_inequality(self):
        # v_p(Lm+u) = 0 and alpha = 0: one fractional-part comparison
        assert lemma24_check(5, 1, 4, 5, 1, 5, u=3)

    def test_precondition_violations(self):
        with pytest.raises(ValueError):
            lemma24_check(3, 0, 0, 6, 1, 2)
        with pytest.raises(ValueError):
            lemma24_check(3, 1, 3, 6, 1, 2)
        with pytest.raises(ValueError):
            lemma24_check(3, 1, 2, 6, 1, 2, u=5)

    def test_exhaustive_small_grid(self):
        for p in (2, 3):
            for s in (1, 2):
                for big_m in range(1, 7):
                    for level in range(1, big_m + 1):
                        for a in range(p**s):
                            for m in range(0, 12):
                                assert lemma24_check(p, s, a, big_m, m, level)


class TestLemmaHarmonic:
    def test_m_zero(self):
        report = lemma_harmonic_check(S6, 3, 5, 1, 0)
        assert report.member and report.actual_valuation == INFINITE

    def test_scan_level_two(self):
        for m in range(21):
            assert lemma_harmonic_check(S6, 2, 3, 1, m).member

    def test_scan_binomial_spec(self):
        for m in range(41):
            assert lemma_harmonic_check(S2, 1, 2, 0, m).member


class TestCongruences:
    def test_j_zero_a_zero(self):
        assert congruence25_check(S6, 2, 5, 0, 0)

    def test_a_zero(self):
        for j in range(10):
            assert congruence25_check(S6, 3, 3, 0, j)

    def test_scan(self):
        for j in range(16):
            assert congruence25_check(S6, 4, 5, 3, j)

    def test_star_congruence(self):
        for level in (1, 2, 4):
            for p in (2, 3, 5):
                for a in range(p):
                    for big_k in range(6):
                        assert congruence_star_check(S6, level, p, a, big_k)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
