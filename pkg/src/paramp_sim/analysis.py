"""Eigen-quadrature extraction, dB metrics, rate fitting, bandwidth and
drive optimization.

The decibel convention sets 0 dB at the coherent-state standard deviation
sqrt(V0) = 1/2:  S(V) = 10 log10(2 sqrt(V)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .covariance import Covariance4
from .errors import BracketingError, NumericalError, ParameterError
from .params import SystemParams
from .propagator import DEFAULT_REL_TOL, Trajectory, trajectory


def squeezing_db(variance: float) -> float:
    """S(V) = 10 log10(2 sqrt(V)); 0 dB for the vacuum variance 1/4."""
    if variance <= 0.0:
        raise ParameterError(f"variance must be > 0, got {variance}")
    return 10.0 * math.log10(2.0 * math.sqrt(variance))


@dataclass(frozen=True)
class QuadratureSpectrum:
    """Eigen-quadratures of a covariance matrix, ascending by variance.

    ``axes[:, i]`` is the unit quadrature vector (over X_a, Y_a, X_b, Y_b)
    whose variance is ``variances[i]``; ``db`` holds S(V) per axis.
    """

    variances: np.ndarray
    axes: np.ndarray
    db: np.ndarray


def _fix_axis_signs(axes: np.ndarray) -> np.ndarray:
    """First nonzero component of each eigenvector made positive."""
    out = axes.copy()
    for i in range(out.shape[1]):
        col = out[:, i]
        nz = np.nonzero(np.abs(col) > 1e-12)[0]
        if len(nz) and col[nz[0]] < 0:
            out[:, i] = -col
    return out


def eigen_quadratures(c: Covariance4) -> QuadratureSpectrum:
    """Full symmetric eigendecomposition of the covariance, ascending."""
    variances, axes = np.linalg.eigh(c.m)
    axes = _fix_axis_signs(axes)
    db = np.array([squeezing_db(v) for v in variances])
    return QuadratureSpectrum(variances=variances, axes=axes, db=db)


@dataclass(frozen=True)
class SystemMetrics:
    """Two-mode and per-mode amplification/squeezing figures."""

    s_sqz: float
    s_amp: float
    va_min: float
    va_max: float
    vb_min: float
    vb_max: float


def system_metrics(c: Covariance4) -> SystemMetrics:
    """S_sqz = min[0, S(V_min)], S_amp = S(V_max), plus the 2x2 per-mode
    block extrema."""
    v = np.linalg.eigvalsh(c.m)
    va = np.linalg.eigvalsh(c.mode_block("a"))
    vb = np.linalg.eigvalsh(c.mode_block("b"))
    return SystemMetrics(
        s_sqz=min(0.0, squeezing_db(v[0])),
        s_amp=squeezing_db(v[-1]),
        va_min=va[0], va_max=va[-1],
        vb_min=vb[0], vb_max=vb[-1],
    )


@dataclass(frozen=True)
class RateFit:
    """Least-squares amplification rate of S(V_max) against time."""

    rate_db_per_us: float
    intercept_db: float
    monotone: bool
    n_samples: int


def amplification_rate(traj: Trajectory, transient_fraction: float = 0.05) -> RateFit:
    """Fit the slope of S(V_max) vs time, discarding the leading transient.

    A non-monotone S(V_max) series (below threshold, no amplification) is
    flagged through ``monotone=False``; the fitted slope is still returned.
    """
    s_max = np.array([squeezing_db(c.variances()[-1]) for c in traj.covariances])
    t = np.asarray(traj.times)
    keep = t >= transient_fraction * t[-1]
    t, s_max = t[keep], s_max[keep]
    if len(t) < 10:
        raise ParameterError(
            f"need >= 10 samples in the fit window, got {len(t)}")
    slope, intercept = np.polyfit(t, s_max, 1)
    increments = np.diff(s_max)
    monotone = bool(np.all(increments >= -1e-9 * max(1.0, np.abs(s_max).max())))
    return RateFit(rate_db_per_us=slope * 1e-6, intercept_db=intercept,
                   monotone=monotone, n_samples=len(t))


@dataclass(frozen=True)
class BandwidthResult:
    fwhm_hz: float
    peak_rate_db_per_us: float
    peak_offset_hz: float
    offsets_hz: np.ndarray
    rates_db_per_us: np.ndarray


def _crossing(x0, y0, x1, y1, level):
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def bandwidth_fwhm(params: SystemParams, span_hz: float = 1.4e6,
                   n_points: int = 41, n_periods: int = 10_000,
                   stride: int = 100,
                   rel_tol: float = DEFAULT_REL_TOL) -> BandwidthResult:
    """FWHM of the amplification rate as the cavity frequency is swept at
    fixed drive and spin frequencies.

    The sweep must bracket the half-maximum on both sides of the peak,
    otherwise :class:`BracketingError` is raised.
    """
    if n_points < 5:
        raise ParameterError("need at least 5 sweep points")
    offsets = np.linspace(-span_hz / 2.0, span_hz / 2.0, n_points)
    rates = np.empty(n_points)
    for i, d in enumerate(offsets):
        p = params.replace(omega_c=params.omega_c + 2.0 * math.pi * d)
        traj = trajectory(p, n_periods, stride, rel_tol)
        rates[i] = amplification_rate(traj).rate_db_per_us
    ip = int(np.argmax(rates))
    if ip in (0, n_points - 1):
        raise BracketingError("rate peak lies at the edge of the sweep")
    half = rates[ip] / 2.0
    lo = hi = None
    for i in range(ip, 0, -1):
        if rates[i - 1] <= half <= rates[i]:
            lo = _crossing(offsets[i - 1], rates[i - 1], offsets[i], rates[i], half)
            break
    for i in range(ip, n_points - 1):
        if rates[i + 1] <= half <= rates[i]:
            hi = _crossing(offsets[i], rates[i], offsets[i + 1], rates[i + 1], half)
            break
    if lo is None or hi is None:
        raise BracketingError("sweep does not bracket the half maximum on both sides")
    return BandwidthResult(fwhm_hz=float(hi - lo),
                           peak_rate_db_per_us=float(rates[ip]),
                           peak_offset_hz=float(offsets[ip]),
                           offsets_hz=offsets, rates_db_per_us=rates)


@dataclass(frozen=True)
class OptimizeResult:
    omega_drive: float
    omega_s: float
    lambda_drive: float
    value: float
    objective: str
    evaluations: int
    budget_exhausted: bool


_DEFAULT_BOX_HZ = ((1e9, 9e9), (2e9, 4e9), (0.1e9, 1e9))


def optimize_drive(params: SystemParams,
                   objective: str = "max-amplification",
                   ranges: tuple = None,
                   budget: int = 200,
                   grid_shape: tuple[int, int, int] = (9, 9, 5),
                   evolution_time: float = 0.5e-6,
                   rel_tol: float = 1e-8) -> OptimizeResult:
    """Coarse grid scan plus simplex refinement over (omega, omega_s,
    Lambda) for the best amplification or squeezing at a fixed evolution
    time.  ``ranges`` is ((w_lo, w_hi), (ws_lo, ws_hi), (lam_lo, lam_hi))
    in rad/s; defaults to the reference box.  Deterministic for a fixed
    grid.
    """
    from .propagator import evolve_periods, period_map  # cycle-safe

    if objective not in ("max-amplification", "min-variance"):
        raise ParameterError(f"unknown objective {objective!r}")
    if ranges is None:
        ranges = tuple((2.0 * math.pi * lo, 2.0 * math.pi * hi)
                       for lo, hi in _DEFAULT_BOX_HZ)
    evaluations = 0

    def cost(x) -> float:
        nonlocal evaluations
        evaluations += 1
        w, ws, lam = x
        p = params.replace(omega_drive=w, omega_s=ws, lambda_drive=lam)
        pmap = period_map(p, rel_tol)
        n = max(1, round(evolution_time / pmap.period))
        try:
            c = evolve_periods(Covariance4.vacuum(), pmap, n)
        except NumericalError:
            return np.inf
        v = c.variances()
        if objective == "max-amplification":
            return -squeezing_db(v[-1])
        return float(v[0])

    axes = [np.linspace(lo, hi, k) for (lo, hi), k in zip(ranges, grid_shape)]
    best_x, best_f = None, np.inf
    for w in axes[0]:
        for ws in axes[1]:
            for lam in axes[2]:
                f = cost((w, ws, lam))
                if f < best_f:
                    best_f, best_x = f, (w, ws, lam)

    budget_exhausted = False
    if budget > 0:
        evaluations_before = evaluations
        res = minimize(cost, np.array(best_x), method="Nelder-Mead",
                       bounds=ranges,
                       options={"maxfev": budget, "xatol": 1e-3 * 2 * math.pi * 1e6,
                                "fatol": 1e-4})
        if res.fun < best_f:
            best_f, best_x = float(res.fun), tuple(res.x)
        budget_exhausted = not res.success and (evaluations - evaluations_before) >= budget
    value = -best_f if objective == "max-amplification" else best_f
    return OptimizeResult(omega_drive=best_x[0], omega_s=best_x[1],
                          lambda_drive=best_x[2], value=value,
                          objective=objective, evaluations=evaluations,
                          budget_exhausted=budget_exhausted)
