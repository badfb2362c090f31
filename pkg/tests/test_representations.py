"""Tests for the product and limit representations."""

import math

import numpy as np
import pytest

from degamma.classical import sin_pi
from degamma.core import DegenerateParameter, degenerate_beta, degenerate_gamma
from degamma.errors import ConvergenceError, PoleError
from degamma.representations import (
    ProductSpec,
    degenerate_beta_product,
    euler_limit_gamma,
    sine_product,
    weierstrass_gamma,
)
from test_core import sample_regular


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def closed(s, p):
    return degenerate_gamma(s, p).value


class TestWeierstrass:
    def test_unit_argument(self):
        p = DegenerateParameter(0.5)
        res = weierstrass_gamma(1.0, p, ProductSpec(n_terms=10**6))
        assert abs(res.value - 2.0) <= 1e-5

    def test_half_argument(self):
        p = DegenerateParameter(0.5)
        res = weierstrass_gamma(0.5, p, ProductSpec(n_terms=10**6))
        assert abs(res.value - math.sqrt(2.0) * math.pi / 2.0) <= 1e-5

    def test_complex_argument_tail_corrected(self):
        p = DegenerateParameter(0.3)
        z = 1.0 + 2.0j
        res = weierstrass_gamma(
            z, p, ProductSpec(n_terms=10**5, use_tail_correction=True)
        )
        assert rel(res.value, closed(z, p)) <= 1e-6

    def test_both_forms_agree(self):
        p = DegenerateParameter(0.3)
        spec = ProductSpec(n_terms=10**4)
        for z in (0.7, 1.0 + 2.0j, 0.5 - 0.25j):
            main = weierstrass_gamma(z, p, spec)
            paired = weierstrass_gamma(z, p, spec, euler_constant_form=True)
            assert rel(main.value, paired.value) <= 1e-12

    def test_pole_rejected(self):
        p = DegenerateParameter(0.5)
        with pytest.raises(PoleError):
            weierstrass_gamma(0.0, p, ProductSpec(n_terms=100))
        with pytest.raises(PoleError):
            weierstrass_gamma(2.0, p, ProductSpec(n_terms=100))

    def test_convergence_error_when_tolerance_unreachable(self):
        p = DegenerateParameter(0.5)
        with pytest.raises(ConvergenceError):
            weierstrass_gamma(
                0.7, p, ProductSpec(n_terms=100, tolerance=1e-12)
            )

    def test_truncation_monotonic_with_slope(self):
        p = DegenerateParameter(0.4)
        z = 0.8 + 0.3j
        target = closed(z, p)
        ns = [10**3, 10**4, 10**5, 10**6]
        errors = [
            rel(weierstrass_gamma(z, p, ProductSpec(n_terms=n)).value, target)
            for n in ns
        ]
        assert all(b < a for a, b in zip(errors, errors[1:]))
        slope = np.polyfit(np.log10(ns), np.log10(errors), 1)[0]
        assert -1.3 <= slope <= -0.7

    def test_tail_correction_improves(self):
        p = DegenerateParameter(0.4)
        z = 0.8 + 0.3j
        target = closed(z, p)
        raw = weierstrass_gamma(z, p, ProductSpec(n_terms=10**4))
        fixed = weierstrass_gamma(
            z, p, ProductSpec(n_terms=10**4, use_tail_correction=True)
        )
        assert rel(fixed.value, target) < 1e-2 * rel(raw.value, target)


class TestEulerLimit:
    def test_unit_argument(self):
        p = DegenerateParameter(0.5)
        res = euler_limit_gamma(1.0, p, ProductSpec(n_terms=10**5))
        assert abs(res.value - 2.0) <= 1e-4

    def test_two_quarter(self):
        p = DegenerateParameter(0.25)
        res = euler_limit_gamma(2.0, p, ProductSpec(n_terms=10**5))
        assert abs(res.value - 8.0 / 3.0) <= 1e-3

    def test_cauchy_self_consistency(self):
        p = DegenerateParameter(0.5)
        z = 0.5 + 1.0j
        v1 = euler_limit_gamma(z, p, ProductSpec(n_terms=5 * 10**4)).value
        v2 = euler_limit_gamma(z, p, ProductSpec(n_terms=10**5)).value
        v4 = euler_limit_gamma(z, p, ProductSpec(n_terms=2 * 10**5)).value
        assert rel(v2, v4) < rel(v1, v2) * 1.2
        assert rel(v2, v4) <= 2e-5

    def test_pole_rejected(self):
        with pytest.raises(PoleError):
            euler_limit_gamma(-2.0, DegenerateParameter(0.3))


class TestPathAgreementHonesty:
    def test_estimates_cover_actual_error(self):
        rng = np.random.default_rng(77)
        spec = ProductSpec(n_terms=10**4)
        dishonest = 0
        total = 0
        for _ in range(100):
            lam = rng.uniform(0.45, 0.9)
            p = DegenerateParameter(lam)
            z = sample_regular(rng, p, (0.2, 1.4), 0.6, min_dist=0.1)
            target = closed(z, p)
            for res in (
                weierstrass_gamma(z, p, spec),
                euler_limit_gamma(z, p, spec),
            ):
                total += 1
                if abs(res.value - target) > res.abs_error_estimate:
                    dishonest += 1
        assert dishonest <= 0.05 * total


class TestSineProduct:
    def test_half(self):
        assert abs(sine_product(0.5, 10**6) - math.pi / 2.0) <= 1e-5

    def test_zero(self):
        assert sine_product(0.0, 100) == 1.0

    def test_quarter(self):
        expected = math.pi * math.sqrt(2.0) / 4.0
        assert abs(sine_product(0.25, 10**6) - expected) <= 1e-5

    def test_integer_pole(self):
        with pytest.raises(PoleError):
            sine_product(3.0, 100)
        with pytest.raises(PoleError):
            sine_product(-1.0, 100)

    def test_error_constant_stable_across_truncations(self):
        z = 0.6 + 0.2j
        target = math.pi * z / sin_pi(z)
        cs = []
        for n in (10**4, 10**5, 10**6):
            cs.append(abs(sine_product(z, n) - target) * n)
        assert max(cs) / min(cs) <= 1.5

    def test_general_z(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            z = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
            if abs(z.real - round(z.real)) < 0.2 and abs(z.imag) < 0.2:
                continue
            target = math.pi * z / sin_pi(z)
            n = 10**5
            assert rel(sine_product(z, n), target) <= 3 * (abs(z) ** 2 + 1) / n


class TestBetaProduct:
    def test_unit_arguments(self):
        p = DegenerateParameter(0.25)
        res = degenerate_beta_product(1, 1, p, ProductSpec(n_terms=10**6))
        assert abs(res.value - 2.0 / 3.0) <= 1e-4

    def test_integer_case(self):
        p = DegenerateParameter(0.1)
        res = degenerate_beta_product(2, 1, p, ProductSpec(n_terms=10**6))
        target = degenerate_beta(2, 1, p).value  # 7/18 up to rounding of 0.1
        assert abs(res.value - target) <= 1e-4

    def test_half_arguments_cross_path(self):
        p = DegenerateParameter(0.25)
        res = degenerate_beta_product(0.5, 0.5, p, ProductSpec(n_terms=10**6))
        target = degenerate_beta(0.5, 0.5, p).value
        assert rel(res.value, target) <= 1e-4

    def test_sum_at_pole_gives_zero(self):
        p = DegenerateParameter(0.5)
        res = degenerate_beta_product(1, 1, p, ProductSpec(n_terms=100))
        assert res.value == 0.0
        assert res.note is not None

    def test_pole_rejected(self):
        p = DegenerateParameter(0.25)
        with pytest.raises(PoleError):
            degenerate_beta_product(-1.0, 1.0, p, ProductSpec(n_terms=100))


class TestProductSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            ProductSpec(n_terms=0)
        with pytest.raises(ValueError):
            ProductSpec(n_terms=10, tolerance=-1.0)
