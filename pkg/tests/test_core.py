"""Tests for the degenerate gamma/beta core: closed form, poles, recurrences."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degamma.classical import gamma, sin_pi
from degamma.core import (
    DegenerateParameter,
    EvalStatus,
    PoleFamily,
    degenerate_beta,
    degenerate_beta_classical,
    degenerate_exp,
    degenerate_gamma,
    degenerate_gamma_integer,
    degenerate_gamma_log,
    degenerate_log,
    difference_step,
    falling_factorial,
    falling_factorial_exact,
    lambda_shift_recurrence,
    nearest_pole,
    pole_residue,
    poles,
    symmetry_partner,
)
from degamma.errors import (
    BranchPointError,
    DomainError,
    ParameterRangeError,
    PoleError,
    SingularParameterError,
)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def sample_regular(rng, p, re_range, im_max, min_dist=0.05, shifted_too=False):
    while True:
        s = complex(rng.uniform(*re_range), rng.uniform(-im_max, im_max))
        d, _, _ = nearest_pole(s, p)
        if d < min_dist:
            continue
        if shifted_too:
            d1, _, _ = nearest_pole(s + 1.0, p)
            if d1 < min_dist:
                continue
        return s


class TestDegenerateParameter:
    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.3, 1.7, math.nan])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ParameterRangeError):
            DegenerateParameter(bad)

    def test_caches_derived_quantities(self):
        p = DegenerateParameter(0.3)
        assert p.inv_lambda * p.lam == pytest.approx(1.0, abs=1e-16)
        assert p.log_lambda == math.log(0.3)


class TestDegenerateExpLog:
    def test_unit_case(self):
        assert degenerate_exp(1, 1, 1.0) == pytest.approx(2.0, rel=1e-15)

    def test_power_case(self):
        assert degenerate_exp(2, 3, 0.5) == pytest.approx(39.0625, rel=1e-14)

    def test_limit_recovers_exp(self):
        assert rel(degenerate_exp(1, 1, 1e-8), math.e) <= 1e-6

    def test_branch_point(self):
        with pytest.raises(BranchPointError):
            degenerate_exp(1, -2.0, 0.5)

    def test_log_at_one(self):
        for lam in (0.3, 0.9, -1.5, 2.0):
            assert degenerate_log(1.0, lam) == pytest.approx(0.0, abs=1e-16)

    def test_log_unit_lambda(self):
        assert degenerate_log(2.0, 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_log_limit(self):
        assert rel(degenerate_log(math.e, 1e-8), 1.0) <= 1e-6

    def test_log_domain(self):
        with pytest.raises(DomainError):
            degenerate_log(0.0, 0.5)

    def test_zero_lambda_rejected(self):
        with pytest.raises(ParameterRangeError):
            degenerate_exp(1, 1, 0.0)

    @given(st.floats(0.2, 3.0), st.floats(-2.0, 2.0), st.floats(0.05, 0.95))
    @settings(max_examples=60, deadline=None)
    def test_exp_log_composition(self, tr, ti, lam):
        t = complex(tr, ti)
        # t = log_lam(e_lam(t)) whenever both stay on the principal branch
        e = degenerate_exp(1, t, lam)
        back = degenerate_log(e, lam)
        assert abs(back - t) <= 1e-10 * max(1.0, abs(t))


class TestFallingFactorial:
    def test_examples(self):
        assert falling_factorial(1, 0, 0.3) == 1.0
        assert falling_factorial(1, 3, 0.25) == pytest.approx(0.375, rel=1e-15)
        assert falling_factorial(1, 4, 0.25) == pytest.approx(0.09375, rel=1e-15)

    @given(st.integers(0, 12), st.floats(-2.0, 2.0), st.floats(0.01, 0.99))
    @settings(max_examples=60, deadline=None)
    def test_recursion(self, n, x, lam):
        full = falling_factorial(x, n + 1, lam)
        step = falling_factorial(x, n, lam) * (x - n * lam)
        assert abs(full - step) <= 1e-12 * max(1.0, abs(full))

    def test_exact_matches_float(self):
        f = falling_factorial_exact(1, 5, 0.125)  # dyadic lambda: exact floats
        assert float(f) == falling_factorial(1, 5, 0.125).real


class TestClosedForm:
    def test_value_at_one(self):
        for lam in (0.1, 0.25, 0.5, 0.9):
            p = DegenerateParameter(lam)
            assert rel(degenerate_gamma(1, p).value, 1.0 / (1.0 - lam)) <= 1e-13

    def test_half_half(self):
        p = DegenerateParameter(0.5)
        expected = math.sqrt(2.0) * math.pi / 2.0
        assert rel(degenerate_gamma(0.5, p).value, expected) <= 1e-13

    def test_three_quarter(self):
        p = DegenerateParameter(0.25)
        assert rel(degenerate_gamma(3, p).value, 64.0 / 3.0) <= 1e-13

    def test_pole_reports_residue(self):
        p = DegenerateParameter(0.5)
        res = degenerate_gamma(-1, p)
        assert res.status is EvalStatus.AT_POLE
        assert math.isnan(res.value.real)
        assert res.pole.family is PoleFamily.NON_POSITIVE
        assert res.pole.index == 1
        assert rel(res.pole.residue, -1.0) <= 1e-14

    def test_near_pole_band_inflates_estimate(self):
        p = DegenerateParameter(0.5)
        far = degenerate_gamma(complex(-1.0 + 0.01, 0.0), p)
        near = degenerate_gamma(complex(-1.0 + 1e-6, 0.0), p)
        assert far.status is EvalStatus.REGULAR
        assert near.status is EvalStatus.NEAR_POLE
        assert near.pole is not None
        rel_far = far.abs_error_estimate / abs(far.value)
        rel_near = near.abs_error_estimate / abs(near.value)
        assert rel_near > 50.0 * rel_far

    def test_small_lambda_uses_log_space(self):
        # Gamma(1/lambda) alone overflows here; the ratio must not
        p = DegenerateParameter(1.0 / 2000.0)
        res = degenerate_gamma(0.75, p)
        assert res.status is EvalStatus.REGULAR
        assert rel(res.value, gamma(0.75)) <= 1e-3

    def test_conjugate_symmetry(self):
        p = DegenerateParameter(0.37)
        rng = np.random.default_rng(9)
        for _ in range(50):
            s = sample_regular(rng, p, (-2.0, 2.2), 3.0)
            a = degenerate_gamma(s, p).value
            b = degenerate_gamma(s.conjugate(), p).value
            assert abs(b.conjugate() - a) <= 4.0 * np.spacing(abs(a))

    def test_estimate_within_promised_bound(self):
        # away from poles the reported estimate stays below 1e-12*|value|
        rng = np.random.default_rng(99)
        for _ in range(200):
            lam = rng.uniform(0.05, 0.95)
            p = DegenerateParameter(lam)
            s = sample_regular(rng, p, (-2.5, p.inv_lambda - 1.5), 5.0,
                               min_dist=1e-4)
            res = degenerate_gamma(s, p)
            assert res.abs_error_estimate <= 1e-12 * abs(res.value)

    def test_log_form_matches_value(self):
        p = DegenerateParameter(0.3)
        s = complex(0.8, 0.6)
        assert rel(
            cmath.exp(degenerate_gamma_log(s, p)), degenerate_gamma(s, p).value
        ) <= 1e-14


class TestIntegerValues:
    def test_k1(self):
        assert rel(
            degenerate_gamma_integer(1, DegenerateParameter(0.5)).value, 2.0
        ) <= 1e-15

    def test_k3(self):
        assert rel(
            degenerate_gamma_integer(3, DegenerateParameter(0.25)).value,
            64.0 / 3.0,
        ) <= 1e-14

    def test_k2_tenth(self):
        assert rel(
            degenerate_gamma_integer(2, DegenerateParameter(0.1)).value,
            1.0 / (0.9 * 0.8),
        ) <= 1e-14

    def test_singular_lambda(self):
        with pytest.raises(SingularParameterError):
            degenerate_gamma_integer(2, DegenerateParameter(0.5))
        with pytest.raises(SingularParameterError):
            degenerate_gamma_integer(5, DegenerateParameter(1.0 / 3.0))

    def test_closed_form_marks_singular_cases_as_poles(self):
        res = degenerate_gamma(2, DegenerateParameter(0.5))
        assert res.status is EvalStatus.AT_POLE

    def test_exact_rational_descriptor(self):
        v = degenerate_gamma_integer(2, DegenerateParameter(0.1))
        exact = v.exact()
        assert rel(v.value.real, float(exact)) <= 1e-15

    def test_agreement_with_closed_form(self):
        for lam in (0.05, 0.09, 0.11, 0.3):
            p = DegenerateParameter(lam)
            for k in range(1, 11):
                exact = degenerate_gamma_integer(k, p)
                closed = degenerate_gamma(k, p).value
                assert rel(closed, exact.value) <= 1e-12


class TestDifferenceStep:
    def test_factor(self):
        assert difference_step(1, DegenerateParameter(0.25)) == pytest.approx(
            2.0, rel=1e-15
        )

    def test_pole(self):
        with pytest.raises(PoleError):
            difference_step(1, DegenerateParameter(0.5))

    def test_consistency_with_integer_values(self):
        p = DegenerateParameter(0.25)
        factor = difference_step(2, p)
        assert factor == pytest.approx(8.0, rel=1e-15)
        lhs = degenerate_gamma(3, p).value
        rhs = factor * degenerate_gamma(2, p).value
        assert rel(lhs, rhs) <= 1e-13

    def test_equation_sampled(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            lam = rng.uniform(0.05, 0.95)
            p = DegenerateParameter(lam)
            s = sample_regular(
                rng, p, (-2.5, p.inv_lambda - 1.5), 5.0, shifted_too=True
            )
            lhs = degenerate_gamma(s + 1, p).value
            rhs = difference_step(s, p) * degenerate_gamma(s, p).value
            assert abs(lhs - rhs) <= 1e-10 * abs(lhs)


class TestLambdaShift:
    def test_exact_rational_case(self):
        p = DegenerateParameter(0.25)
        step = lambda_shift_recurrence(1.0, 0, p)
        assert step.factor == pytest.approx(16.0 / 9.0, rel=1e-14)
        assert step.shifted_lambda == pytest.approx(1.0 / 3.0, rel=1e-15)
        assert step.shifted_arg == 1.0
        lhs = degenerate_gamma(2, p).value
        rhs = step.factor * degenerate_gamma(
            step.shifted_arg, DegenerateParameter(step.shifted_lambda)
        ).value
        assert rel(lhs, rhs) <= 1e-13
        assert rel(lhs, 8.0 / 3.0) <= 1e-13

    def test_half_argument(self):
        p = DegenerateParameter(0.25)
        step = lambda_shift_recurrence(0.5, 0, p)
        assert step.factor == pytest.approx(0.5 / 0.75**1.5, rel=1e-14)
        lhs = degenerate_gamma(1.5, p).value
        rhs = step.factor * degenerate_gamma(
            0.5, DegenerateParameter(step.shifted_lambda)
        ).value
        assert rel(lhs, rhs) <= 1e-11

    def test_parameter_range(self):
        with pytest.raises(ParameterRangeError):
            lambda_shift_recurrence(2.0, 1, DegenerateParameter(0.4))

    def test_strip_enforced(self):
        with pytest.raises(ParameterRangeError):
            lambda_shift_recurrence(0.5, 1, DegenerateParameter(0.2))

    def test_k0_invariant_sampled(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            lam = rng.uniform(0.02, 0.48)
            p = DegenerateParameter(lam)
            p_shift = DegenerateParameter(lam / (1.0 - lam))
            while True:
                s = sample_regular(
                    rng, p, (0.1, min(p.inv_lambda - 1.1, 8.0)), 3.0,
                    shifted_too=True,
                )
                d, _, _ = nearest_pole(s, p_shift)
                if d >= 0.05:
                    break
            step = lambda_shift_recurrence(s, 0, p)
            lhs = degenerate_gamma(s + 1, p).value
            rhs = step.factor * degenerate_gamma(s, p_shift).value
            assert abs(lhs - rhs) <= 1e-10 * abs(lhs)


class TestPoles:
    def test_residue_at_zero_exact(self):
        for lam in (0.3, 0.5, 0.7, 0.123):
            assert pole_residue(PoleFamily.NON_POSITIVE, 0,
                                DegenerateParameter(lam)) == 1.0

    def test_residue_nonpositive_one(self):
        assert rel(
            pole_residue(PoleFamily.NON_POSITIVE, 1, DegenerateParameter(0.5)),
            -1.0,
        ) <= 1e-14

    def test_residue_shifted_zero(self):
        assert rel(
            pole_residue(
                PoleFamily.SHIFTED_BY_INV_LAMBDA, 0, DegenerateParameter(0.5)
            ),
            -4.0,
        ) <= 1e-14

    def test_pole_listing(self):
        p = DegenerateParameter(0.25)
        infos = poles(p, 2)
        assert len(infos) == 6
        locations = sorted(i.location.real for i in infos)
        assert locations == [-2.0, -1.0, 0.0, 4.0, 5.0, 6.0]
        for info in infos:
            if info.family is PoleFamily.NON_POSITIVE:
                assert info.location == complex(-info.index, 0.0)
            else:
                expected = p.inv_lambda + info.index
                assert abs(info.location - expected) <= np.spacing(expected)

    def test_four_angle_limit_matches_residue(self):
        for lam in (0.3, 0.5, 0.7):
            p = DegenerateParameter(lam)
            for info in poles(p, 3):
                total = 0.0 + 0.0j
                for k in range(4):
                    off = 1e-4 * cmath.exp(0.5j * math.pi * k)
                    total += off * degenerate_gamma(info.location + off, p).value
                assert rel(total / 4.0, info.residue) <= 1e-6


class TestSymmetry:
    def test_partner(self):
        p = DegenerateParameter(0.5)
        assert symmetry_partner(1.0, p) == 1.0
        assert symmetry_partner(0.5, p) == 1.5

    def test_identity_at_fixed_point_adjacent_case(self):
        p = DegenerateParameter(0.5)
        lhs = 0.5 * degenerate_gamma(1, p).value
        rhs = 0.5 * degenerate_gamma(symmetry_partner(1, p), p).value
        assert rel(lhs, rhs) <= 1e-14

    def test_identity_sampled_log_space(self):
        rng = np.random.default_rng(41)
        for _ in range(100):
            lam = rng.uniform(0.05, 0.95)
            p = DegenerateParameter(lam)
            s = sample_regular(rng, p, (-2.5, p.inv_lambda - 1.5), 5.0)
            partner = symmetry_partner(s, p)
            l1 = s * p.log_lambda + degenerate_gamma_log(s, p)
            l2 = partner * p.log_lambda + degenerate_gamma_log(partner, p)
            diff = l1 - l2
            gap = math.hypot(diff.real, math.remainder(diff.imag, 2 * math.pi))
            assert gap <= 1e-10


class TestLimits:
    def test_lambda_to_zero(self):
        p = DegenerateParameter(1e-6)
        for s in (0.5, 1.5, 2.5, 1 + 1j):
            assert rel(degenerate_gamma(s, p).value, gamma(s)) <= 1e-4

    def test_lambda_to_one(self):
        p = DegenerateParameter(1.0 - 1e-6)
        for z in (0.3, 0.5 + 0.5j):
            expected = math.pi / sin_pi(z)
            assert rel(degenerate_gamma(z, p).value, expected) <= 1e-3


class TestDegenerateBeta:
    def test_quarter_ones(self):
        res = degenerate_beta(1, 1, DegenerateParameter(0.25))
        assert rel(res.value, 2.0 / 3.0) <= 1e-13

    def test_sum_at_pole_returns_zero_with_note(self):
        res = degenerate_beta(1, 1, DegenerateParameter(0.5))
        assert res.value == 0.0
        assert res.note is not None

    def test_integer_formula_example(self):
        # B_lam(2,1) at lambda = 0.1 equals the exact product
        # (1)_{4,lam} / ((1)_{3,lam} (1)_{2,lam}) * B(2,1)
        lam = 0.1
        exact = (
            falling_factorial_exact(1, 4, lam)
            / (falling_factorial_exact(1, 3, lam) * falling_factorial_exact(1, 2, lam))
            * Fraction(1, 2)
        )
        res = degenerate_beta(2, 1, DegenerateParameter(lam))
        assert rel(res.value, float(exact)) <= 1e-12
        # and the exact product is 7/18 up to the binary rounding of 0.1
        assert abs(float(exact) - 7.0 / 18.0) < 1e-15

    def test_ratio_vs_classical_mixed(self):
        p = DegenerateParameter(0.25)
        a = degenerate_beta(0.5, 0.5, p).value
        b = degenerate_beta_classical(0.5, 0.5, p).value
        assert rel(a, b) <= 1e-11

    def test_pole_error_names_argument(self):
        p = DegenerateParameter(0.25)
        with pytest.raises(PoleError) as exc:
            degenerate_beta(-1.0, 0.5, p)
        assert exc.value.argument_name == "alpha"
        with pytest.raises(PoleError) as exc:
            degenerate_beta(0.5, 4.0, p)  # 4 = 1/lambda
        assert exc.value.argument_name == "beta"

    def test_mixed_path_sampled(self):
        rng = np.random.default_rng(55)
        for _ in range(50):
            lam = rng.uniform(0.2, 0.8)
            p = DegenerateParameter(lam)
            a = sample_regular(rng, p, (0.15, 1.2), 0.5, min_dist=0.1)
            while True:
                b = sample_regular(rng, p, (0.15, 1.2), 0.5, min_dist=0.1)
                d, _, _ = nearest_pole(a + b, p)
                if d >= 0.1:
                    break
            assert rel(
                degenerate_beta(a, b, p).value,
                degenerate_beta_classical(a, b, p).value,
            ) <= 1e-11
