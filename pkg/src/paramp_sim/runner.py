"""Scenario execution: configuration ingestion, sweep engine, CSV and
manifest emission.

Configurations are flat JSON documents (see ``CONFIG_SCHEMA``); every
frequency key carries an ``_hz`` suffix and temperatures a ``_k`` suffix.
A ``preset`` key pulls one of the bundled scenarios, with any other keys
acting as overrides.  CSV output uses shortest round-trip float formatting
so identical configurations produce byte-identical files.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import jsonschema

from . import __version__
from .analysis import (amplification_rate, bandwidth_fwhm, eigen_quadratures,
                       optimize_drive, squeezing_db, system_metrics)
from .covariance import Covariance4
from .errors import ConfigError, NumericalError, ParameterError
from .noise import noise_report, paramp_rate_from_db_rate
from .params import SystemParams
from .presets import PRESETS
from .propagator import (DEFAULT_REL_TOL, converged_squeezing_state,
                         evolve_periods, floquet_steady_state, period_map,
                         trajectory)
from .protocol import execute_schedule, plan_conversion

_PARAM_KEYS = {
    "omega_c_hz", "omega_s_hz", "g_hz", "lambda_hz", "omega_drive_hz",
    "gamma_c_hz", "gamma_l_hz", "kappa_hz", "temperature_k", "n_s",
    "polarization",
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "preset": {"type": "string", "enum": sorted(PRESETS)},
        "name": {"type": "string"},
        "action": {"type": "string",
                   "enum": ["trajectory", "steady-state", "rate-vs-amplitude",
                            "rate-vs-temperature", "bandwidth", "optimize",
                            "noise-report", "protocol"]},
        "params": {
            "type": "object",
            "properties": {k: {"type": "number"} for k in _PARAM_KEYS},
            "additionalProperties": False,
        },
        "sweep": {
            "type": "object",
            "properties": {
                "variable": {"type": "string",
                             "enum": ["lambda_hz", "temperature_k",
                                      "omega_c_hz", "omega_s_hz",
                                      "omega_drive_hz"]},
                "start": {"type": "number"},
                "stop": {"type": "number"},
                "points": {"type": "integer", "minimum": 1},
                "scale": {"type": "string", "enum": ["linear", "log"]},
            },
            "required": ["variable", "start", "stop", "points"],
            "additionalProperties": False,
        },
        "curves": {"type": "array"},
        "rel_tol": {"type": "number"},
        "n_periods": {"type": "integer", "minimum": 1},
        "stride": {"type": "integer", "minimum": 1},
        "span_hz": {"type": "number"},
        "points": {"type": "integer", "minimum": 5},
        "temperatures_k": {"type": "array", "items": {"type": "number"}},
        "lambda_values_hz": {"type": "array", "items": {"type": "number"}},
        "undamped_horizon_s": {"type": "number"},
        "rate_amplitude_hz": {"type": "number"},
        "target": {"type": "string",
                   "enum": ["single-mode", "maximal-two-mode"]},
        "samples_per_stage": {"type": "integer", "minimum": 1},
        "objective": {"type": "string",
                      "enum": ["max-amplification", "min-variance"]},
        "box_hz": {"type": "array"},
        "budget": {"type": "integer", "minimum": 0},
        "evolution_time_s": {"type": "number"},
        "allow_single_point": {"type": "boolean"},
        "notes": {"type": "object"},
        "output_path": {"type": "string"},
    },
    "additionalProperties": False,
}


def _json_default(o):
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, (np.floating, float)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _fmt(x) -> str:
    """Shortest round-trip decimal representation (<= 17 significant digits)."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    v = float(x)
    if math.isnan(v):
        return "nan"
    return repr(v)


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n")


def validate_config(config: dict) -> dict:
    """Schema-check a configuration, resolving any preset first."""
    if not isinstance(config, dict):
        raise ConfigError("configuration must be a JSON object")
    if "preset" in config:
        name = config["preset"]
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}", key_path="preset")
        merged = json.loads(json.dumps(PRESETS[name]))
        for key, value in config.items():
            if key == "preset":
                continue
            if key == "params":
                merged["params"].update(value)
            else:
                merged[key] = value
        config = merged
    try:
        jsonschema.validate(config, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = ".".join(str(p) for p in exc.absolute_path)
        raise ConfigError(exc.message, key_path=path) from exc
    for key in ("action", "params"):
        if key not in config:
            raise ConfigError(f"missing required key {key!r}", key_path=key)
    return config


def params_from_config(pdict: dict) -> SystemParams:
    required = {"omega_c_hz", "omega_s_hz", "g_hz", "lambda_hz",
                "omega_drive_hz"}
    missing = required - set(pdict)
    if missing:
        raise ConfigError(f"missing parameter keys {sorted(missing)}",
                          key_path="params")
    try:
        return SystemParams.from_hz(**pdict)
    except ParameterError as exc:
        raise ConfigError(str(exc), key_path="params") from exc


def _sweep_values(sweep: dict) -> np.ndarray:
    n = sweep["points"]
    if sweep.get("scale", "linear") == "log":
        return np.geomspace(sweep["start"], sweep["stop"], n)
    return np.linspace(sweep["start"], sweep["stop"], n)


def _map_ordered(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _upper_triangle(m: np.ndarray) -> list[float]:
    return [m[i, j] for i in range(4) for j in range(i, 4)]


_TRAJ_HEADER = (
    ["time_s"]
    + [f"c_{i}{j}" for i in range(4) for j in range(i, 4)]
    + [f"eigen_variance_{k}" for k in range(1, 5)]
)


class ScenarioRunner:
    """Executes a validated configuration and writes its outputs."""

    def __init__(self, config: dict, out_dir: Path, workers: int = 1,
                 rel_tol: float | None = None):
        self.config = config
        self.out_dir = Path(out_dir)
        self.workers = max(1, workers)
        self.rel_tol = rel_tol if rel_tol is not None \
            else config.get("rel_tol", DEFAULT_REL_TOL)
        self.params = params_from_config(config["params"])
        self.name = config.get("name", config["action"])
        self.outputs: list[str] = []
        self.failed_points: list[dict] = []
        self.results: dict = {}

    # -- helpers ---------------------------------------------------------

    def _curve_params(self, curve: dict) -> SystemParams:
        pdict = dict(self.config["params"])
        pdict.update({k: v for k, v in curve.items() if k != "label"})
        return params_from_config(pdict)

    def _write(self, suffix: str, header: list[str], rows: list[list]) -> Path:
        path = self.out_dir / f"{self.name}_{suffix}.csv"
        write_csv(path, header, rows)
        self.outputs.append(path.name)
        return path

    def _steady_state_sqz(self, params: SystemParams):
        pmap = period_map(params, self.rel_tol)
        if pmap.spectral_radius() < 1.0 - 1e-9:
            c = floquet_steady_state(pmap)
            return c, {"converged": True, "mode": "fixed-point"}
        if params.gamma == 0.0 and params.kappa == 0.0:
            horizon = self.config.get("undamped_horizon_s", 3.0e-6)
            n = max(1, round(horizon / pmap.period))
            c = evolve_periods(Covariance4.vacuum(), pmap, n)
            return c, {"converged": False, "mode": f"fixed-horizon-{n}-periods"}
        c, info = converged_squeezing_state(pmap)
        return c, {"converged": info["converged"], "mode": "iterated"}

    # -- actions ---------------------------------------------------------

    def run(self) -> dict:
        t0 = time.perf_counter()
        action = self.config["action"].replace("-", "_")
        getattr(self, f"_action_{action}")()
        wall = time.perf_counter() - t0
        manifest = {
            "name": self.name,
            "action": self.config["action"],
            "version": __version__,
            "params_hz": self.config["params"],
            "rel_tol": self.rel_tol,
            "workers": self.workers,
            "wall_time_s": wall,
            "defaulted": self.config.get("notes", {}),
            "outputs": self.outputs,
            "results": self.results,
            "failed_points": self.failed_points,
        }
        mpath = self.out_dir / f"{self.name}_manifest.json"
        mpath.write_text(json.dumps(manifest, indent=2, sort_keys=True,
                                    default=_json_default) + "\n")
        self.outputs.append(mpath.name)
        return manifest

    def _action_trajectory(self):
        n = self.config.get("n_periods", 10_000)
        stride = self.config.get("stride", 100)
        traj = trajectory(self.params, n, stride, self.rel_tol)
        rows = []
        for t, c in zip(traj.times, traj.covariances):
            rows.append([t] + _upper_triangle(c.m) + list(c.variances()))
        self._write("trajectory", _TRAJ_HEADER, rows)
        try:
            fit = amplification_rate(traj)
        except ParameterError:
            return  # too few samples for a rate fit; trajectory still written
        self.results["rate_db_per_us"] = fit.rate_db_per_us
        self.results["monotone"] = fit.monotone

    def _sweep_rows(self, values, curves, evaluate):
        """Evaluate every (value, curve) point; failures flag the row."""
        def one(value):
            row = [value]
            failed = False
            for curve in curves:
                try:
                    row.extend(evaluate(value, curve))
                except (NumericalError, ParameterError) as exc:
                    row.extend([math.nan] * self._cols_per_curve)
                    self.failed_points.append(
                        {"value": value, "curve": curve.get("label", ""),
                         "error": str(exc)})
                    failed = True
            row.append("failed" if failed else "ok")
            return row
        return _map_ordered(one, list(values), self.workers)

    def _action_rate_vs_amplitude(self):
        sweep = self.config["sweep"]
        if sweep["points"] < 2 and not self.config.get("allow_single_point"):
            raise ConfigError("sweep needs at least 2 points",
                              key_path="sweep.points")
        values = _sweep_values(sweep)
        curves = self.config.get("curves", [{"label": "rate"}])
        n = self.config.get("n_periods", 10_000)
        stride = self.config.get("stride", 100)
        self._cols_per_curve = 3

        def evaluate(lambda_hz, curve):
            p = self._curve_params(curve).replace(
                lambda_drive=2 * math.pi * lambda_hz)
            traj = trajectory(p, n, stride, self.rel_tol)
            fit = amplification_rate(traj)
            met = system_metrics(traj.covariances[-1])
            return [fit.rate_db_per_us, met.s_sqz, met.s_amp]

        header = ["lambda_hz"]
        for c in curves:
            lbl = c.get("label", "rate")
            header += [f"{lbl}_rate_db_per_us", f"{lbl}_s_sqz_db",
                       f"{lbl}_s_amp_db"]
        header.append("status")
        rows = self._sweep_rows(values, curves, evaluate)
        self._write("rates", header, rows)

    def _action_steady_state(self):
        curves = self.config.get("curves", [{"label": "steady"}])
        sweep = self.config.get("sweep")
        values = _sweep_values(sweep) if sweep else \
            [self.params.lambda_drive / (2 * math.pi)]
        self._cols_per_curve = 3

        def evaluate(lambda_hz, curve):
            p = self._curve_params(curve).replace(
                lambda_drive=2 * math.pi * lambda_hz)
            c, info = self._steady_state_sqz(p)
            met = system_metrics(c)
            return [met.s_sqz, met.s_amp, info["converged"]]

        header = ["lambda_hz"]
        for c in curves:
            lbl = c.get("label", "steady")
            header += [f"{lbl}_s_sqz_db", f"{lbl}_s_amp_db", f"{lbl}_converged"]
        header.append("status")
        rows = self._sweep_rows(values, curves, evaluate)
        self._write("steady_state", header, rows)

    def _action_rate_vs_temperature(self):
        sweep = self.config["sweep"]
        if sweep["points"] < 2:
            raise ConfigError("sweep needs at least 2 points",
                              key_path="sweep.points")
        values = _sweep_values(sweep)
        lambdas = self.config.get("lambda_values_hz",
                                  [self.params.lambda_drive / (2 * math.pi)])
        n = self.config.get("n_periods", 10_200)
        curves = [{"label": f"lambda_{lam/1e6:.0f}mhz", "lambda_hz": lam}
                  for lam in lambdas]
        self._cols_per_curve = 2

        def evaluate(temperature, curve):
            p = self.params.replace(
                temperature=float(temperature),
                lambda_drive=2 * math.pi * curve["lambda_hz"])
            pmap = period_map(p, self.rel_tol)
            # pre-drive equilibrium of whichever channels are damped
            c0 = Covariance4.thermal(p.n_thermal if p.gamma > 0 else 0.0,
                                     p.n_s if p.kappa > 0 else 0.0)
            c = evolve_periods(c0, pmap, n)
            amp_rel = squeezing_db(c.variances()[-1]) \
                - squeezing_db(c0.variances()[-1])
            met = system_metrics(c)
            return [amp_rel, met.s_sqz]

        header = ["temperature_k"]
        for c in curves:
            header += [f"{c['label']}_amp_rel_db", f"{c['label']}_s_sqz_db"]
        header.append("status")
        rows = self._sweep_rows(values, curves, evaluate)
        self._write("temperature", header, rows)

    def _action_bandwidth(self):
        temps = self.config.get("temperatures_k", [self.params.temperature])
        span = self.config.get("span_hz", 1.4e6)
        points = self.config.get("points", 41)
        n = self.config.get("n_periods", 10_000)
        header = ["cavity_offset_hz"]
        curve_data = []
        for temp in temps:
            p = self.params.replace(temperature=float(temp))
            res = bandwidth_fwhm(p, span_hz=span, n_points=points,
                                 n_periods=n, rel_tol=self.rel_tol)
            label = f"t_{temp:g}k"
            header.append(f"{label}_rate_db_per_us")
            curve_data.append(res)
            self.results[f"fwhm_hz_{label}"] = res.fwhm_hz
        rows = []
        for i, off in enumerate(curve_data[0].offsets_hz):
            rows.append([off] + [cd.rates_db_per_us[i] for cd in curve_data])
        self._write("bandwidth", header, rows)

    def _action_optimize(self):
        box = self.config.get("box_hz")
        ranges = tuple((2 * math.pi * lo, 2 * math.pi * hi)
                       for lo, hi in box) if box else None
        res = optimize_drive(
            self.params,
            objective=self.config.get("objective", "max-amplification"),
            ranges=ranges,
            budget=self.config.get("budget", 200),
            evolution_time=self.config.get("evolution_time_s", 0.5e-6))
        row = [res.omega_drive / (2 * math.pi), res.omega_s / (2 * math.pi),
               res.lambda_drive / (2 * math.pi), res.value, res.evaluations,
               "budget-exhausted" if res.budget_exhausted else "ok"]
        self._write("optimize",
                    ["omega_drive_hz", "omega_s_hz", "lambda_hz",
                     "objective_value", "evaluations", "status"], [row])
        self.results["optimum_hz"] = {
            "omega_drive_hz": res.omega_drive / (2 * math.pi),
            "omega_s_hz": res.omega_s / (2 * math.pi),
            "lambda_hz": res.lambda_drive / (2 * math.pi),
        }
        self.results["objective_value"] = res.value

    def _action_noise_report(self):
        p = self.params
        k_threshold = math.sqrt(p.gamma * p.kappa)
        reports = {"at_threshold": noise_report(p, k_threshold).to_dict()}
        rate_amp = self.config.get("rate_amplitude_hz")
        if rate_amp:
            pu = p.replace(gamma_c=0.0, gamma_l=0.0, kappa=0.0,
                           lambda_drive=2 * math.pi * rate_amp)
            traj = trajectory(pu, 10_000, 100, self.rel_tol)
            fit = amplification_rate(traj)
            k_sim = paramp_rate_from_db_rate(fit.rate_db_per_us * 1e6)
            reports["from_simulated_rate"] = noise_report(p, k_sim).to_dict()
            reports["from_simulated_rate"]["rate_db_per_us"] = fit.rate_db_per_us
            reports["from_simulated_rate"]["rate_amplitude_hz"] = rate_amp
        path = self.out_dir / f"{self.name}_noise_report.json"
        path.write_text(json.dumps(reports, indent=2, sort_keys=True,
                                   default=_json_default) + "\n")
        self.outputs.append(path.name)
        self.results["noise"] = reports

    def _action_protocol(self):
        c, info = self._steady_state_sqz(self.params)
        spectrum = eigen_quadratures(c)
        target = self.config.get("target", "single-mode")
        plan = plan_conversion(spectrum, target, detuning=self.params.delta,
                               coupling=self.params.g)
        # equal stage durations: re-plan the detuning so t1 == t2
        if plan.delta_psi > 1e-12 and plan.durations[1] > 0.0:
            detuning = plan.delta_psi / plan.durations[1]
            plan = plan_conversion(spectrum, target, detuning=detuning,
                                   coupling=self.params.g)
        res = execute_schedule(c, plan,
                               self.config.get("samples_per_stage", 200))
        rows = []
        for s in res.path:
            rows.append([s.stage, s.angle] + list(s.std_devs) + [0.5])
        self._write("protocol",
                    ["stage", "angle_rad", "std_squeezed_1", "std_squeezed_2",
                     "std_receiver_1", "std_receiver_2", "std_vacuum_ref"],
                    rows)
        self.results.update({
            "delta_psi_rad": plan.delta_psi,
            "delta_theta_rad": plan.delta_theta,
            "durations_s": list(plan.durations),
            "va_min": res.va_min,
            "vb_min": res.vb_min,
            "input_v_min": float(spectrum.variances[0]),
            "steady_state": info,
        })


def run_scenario(config: dict | str | Path, out_dir: str | Path,
                 workers: int = 1, rel_tol: float | None = None) -> dict:
    """Validate and execute a scenario; returns the run manifest.

    ``config`` may be a dict or a path to a JSON document.
    """
    if isinstance(config, (str, Path)):
        try:
            config = json.loads(Path(config).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read configuration: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"not valid JSON: {exc}") from exc
    config = validate_config(config)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    runner = ScenarioRunner(config, out, workers=workers, rel_tol=rel_tol)
    return runner.run()
