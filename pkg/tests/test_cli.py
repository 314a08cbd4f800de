import json
import math

import numpy as np
import pytest

from paramp_sim import ConfigError, run_scenario
from paramp_sim.cli import main
from paramp_sim.presets import PRESETS
from paramp_sim.runner import validate_config


class TestConfigValidation:
    def test_unknown_key_reports_path(self):
        cfg = {"action": "trajectory", "params": {"omega_c_hz": 2.5e9},
               "bogus": 1}
        with pytest.raises(ConfigError):
            validate_config(cfg)

    def test_bad_param_type_reports_path(self):
        cfg = {"action": "trajectory",
               "params": {"omega_c_hz": "fast", "omega_s_hz": 3.5e9,
                          "g_hz": 3.5e6, "lambda_hz": 1e9,
                          "omega_drive_hz": 6e9}}
        with pytest.raises(ConfigError) as err:
            validate_config(cfg)
        assert "omega_c_hz" in str(err.value)

    def test_missing_params_rejected(self):
        with pytest.raises(ConfigError):
            run_scenario({"action": "trajectory",
                          "params": {"omega_c_hz": 2.5e9}}, "/tmp/x")

    def test_preset_merge_and_override(self):
        cfg = validate_config({"preset": "fig2", "n_periods": 100})
        assert cfg["action"] == "trajectory"
        assert cfg["n_periods"] == 100
        assert cfg["params"]["g_hz"] == PRESETS["fig2"]["params"]["g_hz"]

    def test_all_presets_validate(self):
        for name in PRESETS:
            validate_config({"preset": name})

    def test_single_point_sweep_rejected(self):
        cfg = validate_config({"preset": "fig3a"})
        cfg["sweep"]["points"] = 1
        with pytest.raises(ConfigError):
            run_scenario(cfg, "/tmp/x")


class TestRunScenario:
    def test_trajectory_outputs_and_determinism(self, tmp_path):
        cfg = {"preset": "fig2", "n_periods": 1500, "stride": 50}
        m1 = run_scenario(cfg, tmp_path / "a")
        m2 = run_scenario(cfg, tmp_path / "b")
        csv1 = (tmp_path / "a" / "fig2_trajectory.csv").read_bytes()
        csv2 = (tmp_path / "b" / "fig2_trajectory.csv").read_bytes()
        assert csv1 == csv2
        header = csv1.decode().splitlines()[0].split(",")
        # time + ten unique covariance entries + four eigen-variances
        assert len(header) == 15
        assert header[0] == "time_s"
        assert not m1["failed_points"]
        assert m1["results"]["monotone"] is True

    def test_trajectory_csv_values_roundtrip(self, tmp_path):
        run_scenario({"preset": "fig2", "n_periods": 200, "stride": 100},
                     tmp_path)
        lines = (tmp_path / "fig2_trajectory.csv").read_text().splitlines()
        row = [float(x) for x in lines[1].split(",")]
        assert row[0] == 0.0
        assert row[1] == 0.25  # vacuum X_a variance, exactly representable

    def test_temperature_sweep_rate_constant_when_undamped(self, tmp_path):
        cfg = {
            "name": "tsweep", "action": "rate-vs-temperature",
            "params": dict(PRESETS["fig4"]["params"], gamma_c_hz=0.0,
                           gamma_l_hz=0.0, kappa_hz=0.0),
            "sweep": {"variable": "temperature_k", "start": 0.01,
                      "stop": 300.0, "points": 3, "scale": "log"},
            "lambda_values_hz": [1.0e9],
            "n_periods": 2000,
        }
        run_scenario(cfg, tmp_path)
        lines = (tmp_path / "tsweep_temperature.csv").read_text().splitlines()
        rates = [float(line.split(",")[1]) for line in lines[1:]]
        assert max(rates) - min(rates) < 1e-9

    def test_failed_sweep_points_flagged_not_fatal(self, tmp_path):
        cfg = {
            "name": "partial", "action": "rate-vs-amplitude",
            "params": dict(PRESETS["fig2"]["params"]),
            "sweep": {"variable": "lambda_hz", "start": 0.05e9, "stop": 5.5e9,
                      "points": 2, "scale": "linear"},
            "n_periods": 200_000, "stride": 2000,
        }
        manifest = run_scenario(cfg, tmp_path)
        assert len(manifest["failed_points"]) == 1
        lines = (tmp_path / "partial_rates.csv").read_text().splitlines()
        assert lines[1].endswith("ok")
        assert lines[2].endswith("failed")
        assert "nan" in lines[2]

    def test_noise_report_action(self, tmp_path):
        run_scenario({"preset": "noise300k"}, tmp_path)
        data = json.loads((tmp_path / "noise300k_noise_report.json").read_text())
        at_thr = data["at_threshold"]
        assert at_thr["n_add"] == pytest.approx(1250.0, abs=1.0)
        assert at_thr["t_amp"] == pytest.approx(150.0, abs=2.0)
        assert at_thr["stable"] is False
        sim = data["from_simulated_rate"]
        assert abs(sim["xi"] - 1.0) < 0.15

    def test_workers_give_identical_output(self, tmp_path):
        cfg = {
            "name": "par", "action": "rate-vs-amplitude",
            "params": dict(PRESETS["fig2"]["params"]),
            "sweep": {"variable": "lambda_hz", "start": 0.2e9, "stop": 1.0e9,
                      "points": 4, "scale": "linear"},
            "n_periods": 2000, "stride": 100,
        }
        run_scenario(cfg, tmp_path / "w1", workers=1)
        run_scenario(cfg, tmp_path / "w4", workers=4)
        assert (tmp_path / "w1" / "par_rates.csv").read_bytes() \
            == (tmp_path / "w4" / "par_rates.csv").read_bytes()


class TestCliEntry:
    def test_power_forward(self, capsys):
        code = main(["power", "--cp", "0.75", "--units", "mt",
                     "--watts", "9.0"])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["lambda_hz"] == pytest.approx(63e6, abs=2e6)

    def test_power_inverse(self, capsys):
        code = main(["power", "--cp", "252e6", "--units", "hz",
                     "--lambda-hz", "500e6"])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert 3.9 <= out["watts"] <= 4.0

    def test_run_config_file(self, tmp_path, capsys):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(
            {"preset": "fig2", "n_periods": 200, "stride": 100}))
        code = main(["run", str(cfg_path), "--out", str(tmp_path)])
        assert code == 0
        assert (tmp_path / "fig2_trajectory.csv").exists()
        assert (tmp_path / "fig2_manifest.json").exists()

    def test_config_error_exit_code(self, tmp_path, capsys):
        cfg_path = tmp_path / "bad.json"
        cfg_path.write_text(json.dumps({"action": "trajectory"}))
        assert main(["run", str(cfg_path), "--out", str(tmp_path)]) == 1

    def test_unreadable_config_exit_code(self, tmp_path):
        assert main(["run", str(tmp_path / "missing.json"),
                     "--out", str(tmp_path)]) == 1

    def test_partial_sweep_exit_code(self, tmp_path, capsys):
        cfg_path = tmp_path / "partial.json"
        cfg_path.write_text(json.dumps({
            "name": "p", "action": "rate-vs-amplitude",
            "params": dict(PRESETS["fig2"]["params"]),
            "sweep": {"variable": "lambda_hz", "start": 0.05e9, "stop": 5.5e9,
                      "points": 2, "scale": "linear"},
            "n_periods": 200_000, "stride": 2000,
        }))
        assert main(["run", str(cfg_path), "--out", str(tmp_path)]) == 3
