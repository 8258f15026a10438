import mpmath as mp
import pytest

from tools.golden_oracle import (
    oracle_capacity,
    oracle_eta,
    oracle_f_ratio,
    oracle_green,
    oracle_qsum,
    oracle_theta,
)
from utils.config import SeriesConfig
from utils.specfun import Tau, eta, sum_log_abs_one_minus_q2n, theta_product, theta_series
from utils.torus import TorusPoint, capacity, f_ratio, green_function

CFG = SeriesConfig()

TAUS = [(0.0, 1.0), (0.0, 2.0), (0.5, 1.9192), (0.3, 0.6), (-0.4, 3.5)]


@pytest.mark.parametrize("tau_re, tau_im", TAUS)
class TestAgainstOracle:
    def test_theta(self, tau_re, tau_im):
        tau = Tau(tau_re, tau_im)
        z = 0.3 + 0.4 * tau.value
        expected = complex(oracle_theta(mp.mpc(z.real, z.imag), tau_re, tau_im))
        assert abs(theta_series(z, tau, CFG) - expected) <= 1e-12
        assert abs(theta_product(z, tau, CFG) - expected) <= 1e-12

    def test_eta(self, tau_re, tau_im):
        expected = complex(oracle_eta(tau_re, tau_im))
        assert abs(eta(Tau(tau_re, tau_im), CFG) - expected) <= 1e-13

    def test_qsum(self, tau_re, tau_im):
        expected = float(oracle_qsum(tau_re, tau_im))
        assert abs(sum_log_abs_one_minus_q2n(Tau(tau_re, tau_im), CFG) - expected) <= 1e-13

    def test_f_ratio_and_capacity(self, tau_re, tau_im):
        tau = Tau(tau_re, tau_im)
        assert abs(f_ratio(tau, CFG).f - float(oracle_f_ratio(tau_re, tau_im))) <= 1e-12
        expected = float(oracle_capacity(tau_re, tau_im))
        assert abs(capacity(tau, CFG) - expected) <= 1e-12 * expected

    def test_green(self, tau_re, tau_im):
        tau = Tau(tau_re, tau_im)
        z = 0.35 + 0.6 * tau.value
        expected = float(oracle_green(mp.mpc(z.real, z.imag), 0, tau_re, tau_im))
        assert abs(green_function(TorusPoint(z, tau), TorusPoint(0j, tau), CFG) - expected) <= 1e-12


def test_eta_at_2i_golden():
    assert abs(float(abs(oracle_eta(0, 2))) - 0.5923828) < 1e-6
