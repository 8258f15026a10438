import json

import numpy as np
import pytest

from utils.config import DEFAULT_MAX_TERMS, DEFAULT_TOL, SeriesConfig, resolve_series_config, resolve_workers
from utils.errors import ConfigError
from utils.formatting import fmt, key_value_lines, reports_json, reports_text, surface_csv, to_json
from utils.optimize import FSurface
from utils.verify import CheckReport


class TestResolveSeriesConfig:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("SUITA_TORUS_TOL", raising=False)
        monkeypatch.delenv("SUITA_TORUS_MAX_TERMS", raising=False)
        assert resolve_series_config() == SeriesConfig(DEFAULT_TOL, DEFAULT_MAX_TERMS)

    def test_env_then_flag(self, monkeypatch):
        monkeypatch.setenv("SUITA_TORUS_TOL", "1e-10")
        monkeypatch.setenv("SUITA_TORUS_MAX_TERMS", "500")
        assert resolve_series_config() == SeriesConfig(1e-10, 500)
        assert resolve_series_config(tol=1e-12).tol == 1e-12

    def test_invalid_env(self, monkeypatch):
        monkeypatch.setenv("SUITA_TORUS_MAX_TERMS", "muitos")
        with pytest.raises(ConfigError):
            resolve_series_config()

    def test_halved(self):
        assert SeriesConfig(1e-8, 10).halved() == SeriesConfig(5e-9, 10)

    def test_workers(self, monkeypatch):
        monkeypatch.delenv("SUITA_TORUS_WORKERS", raising=False)
        assert resolve_workers() == 1
        monkeypatch.setenv("SUITA_TORUS_WORKERS", "3")
        assert resolve_workers() == 3
        with pytest.raises(ConfigError):
            resolve_workers(0)


class TestFormatting:
    def test_fmt(self):
        assert fmt(-1.8229095612345) == "-1.822909561"
        assert fmt(True) == "true"
        assert fmt(12) == "12"

    def test_json_is_sorted_and_rounded(self):
        text = to_json({"b": 1 / 3, "a": True})
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text)["b"] == 0.3333333333

    def test_key_value_lines(self):
        assert key_value_lines({"F": 0.5, "n": 3}) == "F = 0.5\nn = 3\n"

    def test_surface_csv(self):
        surface = FSurface(np.array([0.0, 0.5]), np.array([1.0]), np.array([[1.25, -2.0]]))
        assert surface_csv(surface) == "re_tau,im_tau,F\n0,1,1.25\n0.5,1,-2\n"

    def test_reports(self):
        reports = [CheckReport.build("theta_identity", 1e-13, 0.0, 1e-10)]
        assert "theta_identity" in reports_text(reports)
        assert json.loads(reports_json(reports))[0]["passed"] is True
