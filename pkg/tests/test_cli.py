#!/usr/bin/env python3
"""
Tests for the command line front door: reports, exit codes and dataset files
"""

import csv
import logging
import sys
from pathlib import Path
from unittest.mock import patch

import pytest

# Add project root to Python path
sys.path.append(str(Path(__file__).parent.parent))

from commands.oracle import CHECKS
from config.settings import get_settings
from main import create_app, main
from sweeps.export import load_json


@pytest.fixture(autouse=True)
def workspace(tmp_path, monkeypatch):
    """Run every command from a scratch directory so logs and results stay there."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("ENABLE_CONSOLE_LOGGING", "false")
    return tmp_path


def run_cli(capsys, *argv):
    exit_code = main(list(argv))
    lines = capsys.readouterr().out.splitlines()
    report = dict(line.split("=", 1) for line in lines)
    assert report["exit_code"] == str(exit_code)
    return exit_code, report


class TestApp:
    def test_all_commands_registered(self):
        app = create_app()
        assert set(app.commands) == {
            "critical-point", "spectrum", "enhance", "kerr", "sweep", "oracle", "converge"
        }

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["teleport"])
        assert excinfo.value.code == 2

    def test_log_level_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "ERROR")
        monkeypatch.delenv("CRITOPT_LOG_LEVEL", raising=False)
        get_settings.cache_clear()
        try:
            exit_code, _ = run_cli(capsys, "critical-point", "--omega-q", "4")
        finally:
            get_settings.cache_clear()
        assert exit_code == 0
        assert logging.getLogger().level == logging.ERROR

    def test_prefixed_log_level_wins(self, capsys, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "ERROR")
        monkeypatch.setenv("CRITOPT_LOG_LEVEL", "DEBUG")
        get_settings.cache_clear()
        try:
            run_cli(capsys, "critical-point", "--omega-q", "4")
        finally:
            get_settings.cache_clear()
        assert logging.getLogger().level == logging.DEBUG

    def test_config_echo(self, capsys):
        exit_code, report = run_cli(capsys, "critical-point", "--omega-q", "4")
        assert exit_code == 0
        assert report["config.command"] == "critical-point"
        assert report["config.omega_q"] == "4"
        assert report["config.unit"] == "omega_m"


class TestCriticalPoint:
    def test_ratio_ten(self, capsys):
        exit_code, report = run_cli(capsys, "critical-point", "--omega-q", "10")
        assert exit_code == 0
        assert float(report["g_crit_over_omega_m"]) == pytest.approx(1.5811, abs=1e-3)
        assert report["phase"] == "unknown"

    def test_symmetric(self, capsys):
        _, report = run_cli(capsys, "critical-point", "--omega-q", "1")
        assert float(report["g_crit_over_omega_m"]) == 0.5

    def test_phase_from_coupling(self, capsys):
        _, report = run_cli(capsys, "critical-point", "--profile", "fig2")
        assert report["phase"] == "superradiant"
        assert float(report["mu"]) == pytest.approx(0.64)

    def test_required_spin_number(self, capsys):
        _, report = run_cli(capsys, "critical-point", "--profile", "lab_estimate")
        assert 0.5e12 <= float(report["n_required"]) <= 2e12
        assert float(report["g_crit"]) == pytest.approx(1.5811e7, rel=1e-4)
        assert report["config.unit"] == "hz"

    def test_invalid_params(self, capsys):
        exit_code, report = run_cli(capsys, "critical-point", "--omega-q", "-1")
        assert exit_code == 2
        assert "error" in report


class TestEnhance:
    def test_headline_profile(self, capsys):
        exit_code, report = run_cli(capsys, "enhance", "--profile", "lab_estimate")
        assert exit_code == 0
        assert float(report["g_minus_over_g0"]) == pytest.approx(995.0, rel=1e-3)
        assert 8e5 <= float(report["coop_ratio"]) <= 1.1e6

    def test_reference_point(self, capsys):
        _, report = run_cli(capsys, "enhance", "--profile", "mu064")
        assert float(report["omega_minus_over_omega_m"]) == pytest.approx(0.76431761, rel=1e-7)
        assert float(report["g_minus_over_g0"]) == pytest.approx(1.137703, rel=1e-6)
        assert float(report["g_plus_over_g0"]) == pytest.approx(0.041250, rel=1e-4)

    def test_exact_cp(self, capsys):
        exit_code, report = run_cli(capsys, "enhance", "--profile", "symmetric_cp")
        assert exit_code == 3

    def test_normal_phase(self, capsys):
        exit_code, report = run_cli(capsys, "enhance", "--omega-q", "4", "--g-collective", "0.8")
        assert exit_code == 4
        assert "oracle" in report["error"]

    def test_flag_overrides_profile(self, capsys):
        _, report = run_cli(capsys, "enhance", "--profile", "fig2", "--g-collective", "2.0")
        assert float(report["mu"]) == pytest.approx(0.25)


class TestSpectrumAndKerr:
    def test_spectrum(self, capsys):
        exit_code, report = run_cli(capsys, "spectrum", "--profile", "fig2")
        assert exit_code == 0
        assert float(report["omega_plus_over_omega_m"]) == pytest.approx(6.28317743, rel=1e-7)
        assert report["stable"] == "true"

    def test_spectrum_continued_below_threshold(self, capsys):
        exit_code, report = run_cli(capsys, "spectrum", "--omega-q", "4", "--g-collective", "0.9")
        assert exit_code == 0
        assert report["stable"] == "false"
        assert report["omega_minus_over_omega_m"] == ""
        assert float(report["omega_minus_sq_over_omega_m_sq"]) < 0

    def test_kerr_direct(self, capsys):
        exit_code, report = run_cli(capsys, "kerr", "--g-minus", "0.1", "--omega-minus", "1")
        assert exit_code == 0
        assert float(report["chi_over_omega_m"]) == pytest.approx(0.01)
        assert float(report["energy_n2"]) == pytest.approx(-0.04)
        assert "energy_n3" in report and "energy_n4" not in report

    def test_kerr_from_operating_point(self, capsys):
        _, report = run_cli(capsys, "kerr", "--profile", "mu064", "--n-photon-max", "1")
        assert float(report["chi_over_omega_m"]) == pytest.approx(1.137703 ** 2 / 0.76431761,
                                                                  rel=1e-5)


class TestOracle:
    def test_spectrum(self, capsys):
        exit_code, report = run_cli(capsys, "oracle", "spectrum", "--profile", "mu064")
        assert exit_code == 0
        assert float(report["max_delta"]) < 1e-10
        assert report["passed"] == "true"

    def test_couplings(self, capsys):
        exit_code, report = run_cli(capsys, "oracle", "couplings", "--profile", "mu064")
        assert exit_code == 0
        assert float(report["delta_g_minus_over_g0"]) < 1e-10

    def test_kerr(self, capsys):
        exit_code, report = run_cli(capsys, "oracle", "kerr", "--g-minus", "0.1",
                                    "--omega-minus", "1")
        assert exit_code == 0
        assert float(report["oracle_chi"]) == pytest.approx(0.01, abs=1e-8)

    def test_dicke(self, capsys):
        exit_code, report = run_cli(capsys, "oracle", "dicke", "--omega-q", "4",
                                    "--g-collective", "1.25", "--n-spins", "4", "--n-max", "20")
        assert exit_code == 0
        assert float(report["max_delta"]) < 1e-8
        assert report["phase"] == "superradiant"

    def test_breach_exit_code(self, capsys):
        with patch.dict(CHECKS, {"spectrum": lambda config, report: 1.0}):
            exit_code, report = run_cli(capsys, "oracle", "spectrum", "--profile", "mu064")
        assert exit_code == 5
        assert report["passed"] == "false"

    def test_at_cp(self, capsys):
        exit_code, _ = run_cli(capsys, "oracle", "spectrum", "--profile", "symmetric_cp")
        assert exit_code == 3

    def test_normal_phase(self, capsys):
        exit_code, _ = run_cli(capsys, "oracle", "couplings", "--omega-q", "4",
                               "--g-collective", "0.9")
        assert exit_code == 4


class TestSweepCommand:
    def test_fig2(self, capsys, workspace):
        exit_code, report = run_cli(capsys, "sweep", "fig2", "--out", "fig2.csv")
        assert exit_code == 0
        assert report["rows"] == "86"
        with open(workspace / "fig2.csv", newline="") as f:
            rows = list(csv.DictReader(f))
        cp = [row for row in rows
              if row["block"] == "G" and abs(float(row["G_over_omega_m"]) - 1.0) < 1e-9]
        assert len(cp) == 1
        assert float(cp[0]["omega_minus_over_omega_m"]) == 0.0
        assert cp[0]["valid"] == "true"

    def test_default_output_location(self, capsys, workspace):
        exit_code, report = run_cli(capsys, "sweep", "fig3", "--format", "json")
        assert exit_code == 0
        assert Path(report["path"]) == Path("results") / "fig3.json"
        dataset = load_json(workspace / "results" / "fig3.json")
        assert dataset.spec_echo["ratio_omega_q"] == 10.0

    def test_fig3_ratio(self, capsys, workspace):
        run_cli(capsys, "sweep", "fig3", "--ratio", "1", "--out", "low.json", "--format", "json")
        run_cli(capsys, "sweep", "fig3", "--ratio", "10", "--out", "high.json", "--format", "json")
        low = load_json(workspace / "low.json").column("g_minus_over_g0")
        high = load_json(workspace / "high.json").column("g_minus_over_g0")
        assert all(h > lo for h, lo in zip(high, low))

    def test_repeat_runs_identical(self, capsys, workspace):
        run_cli(capsys, "sweep", "fig2", "--out", "first.csv")
        run_cli(capsys, "sweep", "fig2", "--out", "second.csv", "--workers", "3")
        assert (workspace / "first.csv").read_bytes() == (workspace / "second.csv").read_bytes()

    def test_oracle_columns(self, capsys):
        exit_code, report = run_cli(capsys, "sweep", "fig2", "--oracle-check", "--out", "o.csv")
        assert exit_code == 0
        assert float(report["max_oracle_delta"]) < 1e-8

    def test_missing_preset(self, capsys):
        exit_code, _ = run_cli(capsys, "sweep")
        assert exit_code == 2

    def test_unwritable_output(self, capsys, workspace):
        (workspace / "blocker").write_text("")
        exit_code, _ = run_cli(capsys, "sweep", "fig2", "--out", "blocker/fig2.csv")
        assert exit_code == 6

    def test_custom_sweep_from_config(self, capsys, workspace):
        (workspace / "run.yaml").write_text(
            "sweep:\n"
            "  name: mu-scan\n"
            "  axes:\n"
            "    - {name: mu, start: 0.1, stop: 0.9, count: 5}\n"
            "  fixed: {ratio_omega_q: 4.0}\n"
            "  outputs: [omega_minus, g_minus_over_g0]\n"
            "format: json\n"
            "out: custom.json\n"
        )
        exit_code, report = run_cli(capsys, "sweep", "--config", "run.yaml")
        assert exit_code == 0
        assert report["rows"] == "5"
        dataset = load_json(workspace / "custom.json")
        assert dataset.columns[:3] == ["mu", "omega_minus_over_omega_m", "g_minus_over_g0"]


class TestConverge:
    def test_decoupled_converges(self, capsys):
        exit_code, report = run_cli(capsys, "converge", "--omega-q", "4", "--g-collective", "0",
                                    "--N-list", "2", "4", "--n-max", "10")
        assert exit_code == 0
        assert report["converging"] == "true"
        assert float(report["N4.jz_over_j"]) == pytest.approx(-1.0)
        assert float(report["N4.gap"]) == pytest.approx(1.0)

    def test_breach(self, capsys):
        exit_code, report = run_cli(capsys, "converge", "--profile", "fig2", "--N-list", "2", "4",
                                    "--n-max", "20", "--tol", "1e-12")
        assert exit_code == 5
        assert report["converging"] == "false"

    def test_dataset_written(self, capsys, workspace):
        run_cli(capsys, "converge", "--omega-q", "4", "--g-collective", "0", "--N-list", "2",
                "--n-max", "6", "--out", "dicke.csv")
        assert (workspace / "dicke.csv").read_text().startswith("N,n_max,dim,phase")

    def test_dimension_cap(self, capsys):
        exit_code, _ = run_cli(capsys, "converge", "--profile", "fig2", "--N-list", "100",
                               "--n-max", "100", "--dimension-cap", "1000")
        assert exit_code == 2


class TestConfigLayers:
    def test_file_overrides_profile(self, capsys, workspace):
        (workspace / "run.yaml").write_text("profile: fig2\nomega_q: 10\n")
        _, report = run_cli(capsys, "critical-point", "--config", "run.yaml")
        assert report["config.omega_q"] == "10"
        assert report["config.g_collective"] == "1.25"

    def test_flag_overrides_file(self, capsys, workspace):
        (workspace / "run.yaml").write_text("omega_q: 10\n")
        _, report = run_cli(capsys, "critical-point", "--config", "run.yaml", "--omega-q", "4")
        assert float(report["g_crit_over_omega_m"]) == 1.0

    def test_unknown_key(self, capsys, workspace):
        (workspace / "run.yaml").write_text("omega_q: 10\ntemperature: 4\n")
        exit_code, _ = run_cli(capsys, "critical-point", "--config", "run.yaml")
        assert exit_code == 2

    def test_missing_config_file(self, capsys):
        exit_code, _ = run_cli(capsys, "critical-point", "--config", "nowhere.yaml")
        assert exit_code == 6

    def test_unknown_profile(self, capsys):
        exit_code, report = run_cli(capsys, "critical-point", "--profile", "nonesuch")
        assert exit_code == 2
        assert "lab_estimate" in report["error"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
