import math

import numpy as np
import pytest

from utils.config import SeriesConfig
from utils.errors import ConfigError, ConvergenceError, DomainError
from utils.specfun import (
    IM_FLOOR,
    Tau,
    eta,
    eta_norm,
    half_period,
    nome,
    product_truncation,
    sum_log_abs_one_minus_q2n,
    theta_norm,
    theta_product,
    theta_series,
    theta_truncation,
)

CFG = SeriesConfig()


class TestTau:
    def test_rejects_lower_half_plane(self):
        with pytest.raises(DomainError, match="Im tau > 0"):
            Tau(0.0, -1.0)

    def test_rejects_real_axis(self):
        with pytest.raises(DomainError):
            Tau(0.3, 0.0)

    def test_series_reject_below_floor(self):
        tau = Tau(0.0, IM_FLOOR / 10)
        with pytest.raises(DomainError):
            sum_log_abs_one_minus_q2n(tau, CFG)
        with pytest.raises(DomainError):
            theta_series(0.0, tau, CFG)

    def test_series_config_validation(self):
        with pytest.raises(ConfigError):
            SeriesConfig(tol=0.0)
        with pytest.raises(ConfigError):
            SeriesConfig(max_terms=0)


class TestNome:
    def test_pure_imaginary_tau(self):
        q = nome(Tau(0.0, 2.0))
        assert abs(q - math.exp(-2 * math.pi)) < 1e-18
        assert abs(q.imag) < 1e-18

    def test_modulus_at_i(self):
        assert abs(abs(nome(Tau(0.0, 1.0))) - 0.0432139183) < 1e-10

    def test_argument_with_half_real_part(self):
        q = nome(Tau(0.5, 2.0))
        assert abs(np.angle(q) - math.pi / 2) < 1e-12
        assert abs(abs(q) - math.exp(-2 * math.pi)) < 1e-18


class TestThetaSeries:
    def test_value_at_origin(self):
        # theta_3(e^-pi) = pi^(1/4) / Gamma(3/4)
        expected = math.pi ** 0.25 / math.gamma(0.75)
        value = theta_series(0.0, Tau(0.0, 1.0), CFG)
        assert abs(value - expected) < 1e-13
        assert abs(value - 1.0864349) < 1e-7

    def test_vanishes_at_half_period(self):
        tau = Tau(0.0, 2.0)
        assert abs(theta_series(half_period(tau), tau, CFG)) < 1e-12

    def test_one_periodic(self):
        tau = Tau(0.1, 2.0)
        z = 0.3 + 0.2j
        assert abs(theta_series(z + 1, tau, CFG) - theta_series(z, tau, CFG)) < 1e-12

    def test_quasi_periodic(self):
        tau = Tau(0.2, 1.3)
        z = 0.15 + 0.4j
        t = tau.value
        lhs = theta_series(z + t, tau, CFG) * np.exp(1j * np.pi * t + 2j * np.pi * z)
        assert abs(lhs - theta_series(z, tau, CFG)) < 1e-10

    def test_vectorized_matches_scalar(self):
        tau = Tau(0.3, 1.1)
        zs = np.array([0.1 + 0.2j, 0.5 + 0.9j, 0.7])
        out = theta_series(zs, tau, CFG)
        for z, v in zip(zs, out):
            assert abs(v - theta_series(complex(z), tau, CFG)) < 1e-13

    def test_truncation_cap(self):
        with pytest.raises(ConvergenceError):
            theta_series(0.0, Tau(0.0, 0.01), SeriesConfig(max_terms=1))

    def test_truncation_soundness(self):
        tau = Tau(0.25, 0.6)
        z = 0.4 + 0.3j
        cfg = SeriesConfig(tol=1e-8)
        coarse = theta_series(z, tau, cfg)
        fine = theta_series(z, tau, cfg.halved())
        assert abs(coarse - fine) <= cfg.tol

    @pytest.mark.parametrize("func", [
        eta,
        sum_log_abs_one_minus_q2n,
        lambda tau, cfg: theta_product(0.4 + 0.3j, tau, cfg),
    ], ids=["eta", "S", "theta_product"])
    @pytest.mark.parametrize("tau", [Tau(0.25, 0.6), Tau(0.1, 0.08)])
    def test_halving_tol_moves_less_than_tol(self, func, tau):
        cfg = SeriesConfig(tol=1e-8)
        assert abs(func(tau, cfg) - func(tau, cfg.halved())) <= cfg.tol

    def test_truncation_index_monotone_in_tol(self):
        tau = Tau(0.0, 0.3)
        z = 0.2 + 0.25j
        indices = [theta_truncation(z, tau, SeriesConfig(tol=tol)) for tol in (1e-4, 1e-8, 1e-12, 1e-16)]
        assert indices == sorted(indices)

    def test_product_index_monotone_in_tol(self):
        tau = Tau(0.0, 0.3)
        indices = [product_truncation(tau, SeriesConfig(tol=tol), 0.1) for tol in (1e-4, 1e-8, 1e-12, 1e-16)]
        assert indices == sorted(indices)


class TestThetaProduct:
    def test_matches_series_at_origin(self):
        tau = Tau(0.0, 1.0)
        assert abs(theta_product(0.0, tau, CFG) - theta_series(0.0, tau, CFG)) <= 1e-12

    def test_exact_zero_at_half_period(self):
        tau = Tau(0.0, 2.0)
        assert theta_product(half_period(tau), tau, CFG) == 0

    def test_matches_series_near_optimum(self):
        tau = Tau(0.5, 1.9192)
        assert abs(theta_product(0.3, tau, CFG) - theta_series(0.3, tau, CFG)) <= 1e-12

    def test_dual_representation_random(self):
        rng = np.random.default_rng(2024)
        worst = 0.0
        for _ in range(200):
            tau = Tau(rng.uniform(-0.5, 0.5), rng.uniform(0.25, 5.0))
            z = rng.random() + rng.random() * tau.value
            diff = abs(theta_series(z, tau, CFG) - theta_product(z, tau, CFG))
            # mesmo peso gaussiano de ||theta||
            worst = max(worst, diff * math.exp(-math.pi * z.imag ** 2 / tau.im))
        assert worst <= 1e-10


class TestEta:
    def test_eta_at_i(self):
        # Gamma(1/4) / (2 pi^(3/4))
        expected = math.gamma(0.25) / (2 * math.pi ** 0.75)
        assert abs(abs(eta(Tau(0.0, 1.0), CFG)) - expected) < 1e-13
        assert abs(abs(eta(Tau(0.0, 1.0), CFG)) - 0.7682254) < 1e-7

    def test_eta_at_2i(self):
        assert abs(abs(eta(Tau(0.0, 2.0), CFG)) - 0.5923828) < 1e-6

    def test_modulus_one_periodic(self):
        tau = Tau(0.3, 1.5)
        assert abs(abs(eta(tau.shifted(), CFG)) - abs(eta(tau, CFG))) < 1e-14

    def test_norms(self):
        assert abs(eta_norm(Tau(0.0, 1.0), CFG) - 0.7682254) < 1e-7
        tau = Tau(0.0, 2.0)
        assert abs(eta_norm(tau, CFG) - 2 ** 0.25 * abs(eta(tau, CFG))) < 1e-15
        assert abs(eta_norm(tau, CFG) - 0.7044659) < 1e-6
        assert abs(eta_norm(Tau(0.3, 1.5).shifted(), CFG) - eta_norm(Tau(0.3, 1.5), CFG)) < 1e-14


class TestQSum:
    def test_pure_imaginary(self):
        x = math.exp(-4 * math.pi)
        expected = math.log1p(-x) + math.log1p(-x * x) + math.log1p(-x ** 3)
        value = sum_log_abs_one_minus_q2n(Tau(0.0, 2.0), CFG)
        assert abs(value - expected) < 1e-16
        assert abs(value + 3.4873e-6) < 1e-9

    def test_half_real_part_flips_sign(self):
        x = math.exp(-4 * math.pi)
        expected = math.log1p(x) + math.log1p(-x * x) + math.log1p(x ** 3)
        value = sum_log_abs_one_minus_q2n(Tau(0.5, 2.0), CFG)
        assert abs(value - expected) < 1e-16
        assert abs(value - 3.4873e-6) < 1e-9

    def test_one_periodic(self):
        tau = Tau(0.25, 1.2)
        assert abs(sum_log_abs_one_minus_q2n(tau.shifted(), CFG) - sum_log_abs_one_minus_q2n(tau, CFG)) < 1e-15

    def test_near_floor_is_finite(self):
        assert math.isfinite(sum_log_abs_one_minus_q2n(Tau(0.1, IM_FLOOR), CFG))


class TestThetaNorm:
    def test_invariant_under_unit_shift(self):
        tau = Tau(0.2, 1.4)
        z = 0.35 + 0.5j
        assert abs(theta_norm(z + 1, tau, CFG) - theta_norm(z, tau, CFG)) < 1e-12

    def test_invariant_under_tau_shift(self):
        tau = Tau(0.0, 2.0)
        z = 0.2 + 0.3j
        assert abs(theta_norm(z + tau.value, tau, CFG) - theta_norm(z, tau, CFG)) < 1e-10

    def test_zero_at_half_period(self):
        tau = Tau(0.0, 2.0)
        assert theta_norm(half_period(tau), tau, CFG) < 1e-12
