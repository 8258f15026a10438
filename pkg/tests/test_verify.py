import math

import pytest

from utils.config import SeriesConfig
from utils.errors import PreconditionError
from utils.specfun import Tau
from utils.verify import (
    SUITE_TAUS,
    CheckReport,
    _log_abs_cell_average,
    check_capacity_limit,
    check_divergence,
    check_laplacian,
    check_mean_zero,
    check_symmetry,
    check_theta_identity,
    default_laplacian_offsets,
    neville_at_zero,
    run_suite,
    suite_passed,
)

CFG = SeriesConfig()


class TestCheckReport:
    def test_build_sets_passed(self):
        ok = CheckReport.build("x", 1.0, 1.0 + 1e-7, 1e-6)
        bad = CheckReport.build("x", 1.0, 1.1, 1e-6)
        assert ok.passed and not bad.passed
        assert ok.is_consistent() and bad.is_consistent()

    def test_soft_failures_do_not_fail_suite(self):
        reports = [
            CheckReport.build("hard", 0.0, 0.0, 1e-12),
            CheckReport.build("soft", 1.0, 0.0, 1e-3, hard=False),
        ]
        assert suite_passed(reports)
        assert not suite_passed(reports + [CheckReport.build("hard2", 1.0, 0.0, 1e-3)])


class TestLaplacian:
    @pytest.mark.parametrize("tau", SUITE_TAUS["laplacian"])
    def test_matches_bergman_density(self, tau):
        reports = check_laplacian(tau, default_laplacian_offsets(tau), 1e-3, CFG)
        assert len(reports) >= 10
        for r in reports:
            assert r.passed, r
            assert r.expected == -2 * math.pi / tau.im

    def test_offset_too_close_to_pole(self):
        tau = Tau(0.0, 1.0)
        with pytest.raises(PreconditionError):
            check_laplacian(tau, [0.01 + 0.0j], 1e-3, CFG)
        with pytest.raises(PreconditionError):
            check_laplacian(tau, [1.02 + 1.0j], 1e-3, CFG)

    def test_step_out_of_range(self):
        tau = Tau(0.0, 1.0)
        with pytest.raises(PreconditionError):
            check_laplacian(tau, [0.5 + 0.5j], 0.1, CFG)


class TestCapacityLimit:
    def test_neville_recovers_polynomial_constant(self):
        xs = [1.0, 2.0, 3.0]
        assert abs(neville_at_zero(xs, [2 + 3 * x + x * x for x in xs]) - 2) < 1e-12

    @pytest.mark.parametrize("tau", SUITE_TAUS["capacity"])
    def test_matches_closed_form(self, tau):
        report = check_capacity_limit(tau, cfg=CFG)
        assert report.passed, report

    def test_direction_independent(self):
        report = check_capacity_limit(Tau(0.0, 2.0), cfg=CFG, direction=1 + 1j, tolerance=1e-5)
        assert report.passed, report

    @pytest.mark.parametrize("base", [0.3 + 0.7 * 2.0j, 0.85 + 0.1j])
    def test_base_point_independent(self, base):
        tau = Tau(0.0, 2.0)
        at_origin = check_capacity_limit(tau, cfg=CFG)
        moved = check_capacity_limit(tau, cfg=CFG, base=base)
        assert moved.passed, moved
        assert abs(moved.observed - at_origin.observed) < 1e-6
        assert "base=" in moved.name

    @pytest.mark.parametrize("radii", [
        [],
        [1e-3, 1e-2],
        [1e-2, 0.0],
        [0.1, 1e-2],
    ])
    def test_bad_radii(self, radii):
        with pytest.raises(PreconditionError):
            check_capacity_limit(Tau(0.0, 2.0), radii, CFG)


class TestThetaIdentity:
    def test_seeded_samples(self):
        report = check_theta_identity(200, 42, CFG)
        assert report.passed, report
        assert report.tolerance == 1e-10

    def test_empty_sample(self):
        with pytest.raises(PreconditionError):
            check_theta_identity(0, 42, CFG)


class TestMeanZero:
    def test_cell_average_on_square(self):
        delta = 1.0 / 256
        expected = math.log(delta / 2) + 0.5 * math.log(2) - 1.5 + math.pi / 4
        assert abs(_log_abs_cell_average(delta, Tau(0.0, 1.0)) - expected) < 1e-10

    @pytest.mark.parametrize("tau", SUITE_TAUS["meanzero"])
    def test_integral_vanishes(self, tau):
        report = check_mean_zero(tau, 256, CFG)
        assert not report.hard
        assert report.passed, report

    def test_too_few_points(self):
        with pytest.raises(PreconditionError):
            check_mean_zero(Tau(0.0, 1.0), 32, CFG)


class TestSymmetryAndDivergence:
    def test_symmetry_suite(self):
        reports = check_symmetry(100, 42, CFG)
        assert [r.name for r in reports] == [
            "green_symmetry", "green_lattice_invariance", "f_periodicity", "f_reflection",
        ]
        for r in reports:
            assert r.passed, r

    def test_divergence(self):
        monotone, at_10i = check_divergence(range(3, 21), CFG)
        assert monotone.passed and monotone.observed == 0
        assert at_10i.passed
        assert abs(math.exp(at_10i.observed) - 28.1) < 0.05


class TestRunSuite:
    def test_unknown_suite(self):
        with pytest.raises(PreconditionError):
            run_suite("bogus")

    def test_theta_suite_is_deterministic(self):
        a = run_suite("theta", 7, CFG)
        b = run_suite("theta", 7, CFG)
        assert a == b
        assert suite_passed(a)

    def test_capacity_suite_checks_direction_and_base_point(self):
        reports = run_suite("capacity", cfg=CFG)
        assert len(reports) == 4
        assert "base=0.3+1.4i" in reports[-1].name
        assert suite_passed(reports)

    @pytest.mark.slow
    def test_full_battery(self):
        reports = run_suite("all", 42, CFG)
        assert all(r.is_consistent() for r in reports)
        assert suite_passed(reports)
