"""Covariance propagation: adaptive integration, period maps, Floquet
steady states and long-horizon iteration.

The workhorse object is the one-drive-period affine map (Phi, D) with

    C(tau) = Phi C(0) Phi^T + D,      tau = 2*pi/omega_drive.

Long evolutions iterate the map instead of re-integrating the ODE, which
is both O(1) per period and free of step-size accumulation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covariance import Covariance4
from .errors import NumericalError, ParameterError, UnstableDynamicsError
from .integrator import integrate_adaptive
from .model import diffusion_matrix, drift_matrix_parts
from .params import SystemParams

DEFAULT_REL_TOL = 1e-10
_ABS_TOL = 1e-14
_REL_TOL_RANGE = (1e-14, 1e-3)
_NORM_OVERFLOW = 1e150


def _check_rel_tol(rel_tol: float):
    lo, hi = _REL_TOL_RANGE
    if not lo <= rel_tol <= hi:
        raise ParameterError(f"rel_tol must be in [{lo:g}, {hi:g}], got {rel_tol:g}")


def integrate_interval(c0: Covariance4, t0: float, t1: float,
                       params: SystemParams,
                       rel_tol: float = DEFAULT_REL_TOL) -> Covariance4:
    """Integrate dC/dt = A(t) C + C A(t)^T + G from t0 to t1."""
    _check_rel_tol(rel_tol)
    if not t1 > t0:
        raise ParameterError(f"t1 must exceed t0, got [{t0}, {t1}]")
    a0, a1 = drift_matrix_parts(params)
    g = diffusion_matrix(params)
    w = params.omega_drive

    def rhs(t, y):
        a = a0 + np.sin(w * t) * a1
        c = y.reshape(4, 4)
        dc = a @ c + c @ a.T + g
        return dc.ravel()

    y = integrate_adaptive(rhs, t0, t1, c0.m.ravel(), rel_tol, _ABS_TOL)
    return Covariance4(y.reshape(4, 4))


@dataclass(frozen=True)
class PeriodMap:
    """Affine covariance propagator over one drive period.

    ``phi`` is the homogeneous propagator, ``dee`` the accumulated
    diffusion:  C -> phi C phi^T + dee.
    """

    phi: np.ndarray
    dee: np.ndarray
    period: float
    tolerance_used: float

    def apply(self, c: Covariance4) -> Covariance4:
        return Covariance4(self.phi @ c.m @ self.phi.T + self.dee)

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvals(self.phi))))

    def stability_margin(self) -> float:
        """1 - max|eig(phi)|; positive for a damped, stable map."""
        return 1.0 - self.spectral_radius()


def period_map(params: SystemParams,
               rel_tol: float = DEFAULT_REL_TOL) -> PeriodMap:
    """Build (Phi, D) by integrating dPhi/dt = A(t) Phi, Phi(0) = I and
    dD/dt = A(t) D + D A(t)^T + G, D(0) = 0 over one drive period."""
    _check_rel_tol(rel_tol)
    a0, a1 = drift_matrix_parts(params)
    g = diffusion_matrix(params)
    w = params.omega_drive
    tau = params.drive_period

    def rhs(t, y):
        a = a0 + np.sin(w * t) * a1
        phi = y[:16].reshape(4, 4)
        dee = y[16:].reshape(4, 4)
        return np.concatenate(((a @ phi).ravel(),
                               (a @ dee + dee @ a.T + g).ravel()))

    y0 = np.concatenate((np.eye(4).ravel(), np.zeros(16)))
    y = integrate_adaptive(rhs, 0.0, tau, y0, rel_tol, _ABS_TOL)
    phi = y[:16].reshape(4, 4)
    dee = y[16:].reshape(4, 4)
    dee = (dee + dee.T) / 2.0
    return PeriodMap(phi=phi, dee=dee, period=tau, tolerance_used=rel_tol)


def compose_maps(first: PeriodMap, second: PeriodMap) -> PeriodMap:
    """Map applying ``first`` then ``second``."""
    with np.errstate(over="raise", invalid="raise"):
        try:
            phi = second.phi @ first.phi
            dee = second.phi @ first.dee @ second.phi.T + second.dee
        except FloatingPointError as exc:
            raise UnstableDynamicsError(
                f"propagator norm overflow while composing maps: {exc}") from exc
    if np.abs(phi).max() > _NORM_OVERFLOW or np.abs(dee).max() > _NORM_OVERFLOW:
        raise UnstableDynamicsError("propagator norm overflow while composing maps")
    return PeriodMap(phi=phi, dee=(dee + dee.T) / 2.0,
                     period=first.period + second.period,
                     tolerance_used=max(first.tolerance_used,
                                        second.tolerance_used))


def map_power(pmap: PeriodMap, n: int) -> PeriodMap:
    """The n-fold composition of ``pmap`` (binary squaring)."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    result = None
    base = pmap
    m = n
    while m:
        if m & 1:
            result = base if result is None else compose_maps(result, base)
        m >>= 1
        if m:
            base = compose_maps(base, base)
    return result


def iterate_periods(c0: Covariance4, pmap: PeriodMap, n: int) -> Covariance4:
    """Apply C <- Phi C Phi^T + D  n times, symmetrizing each step."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    c = c0.m.copy()
    phi, dee = pmap.phi, pmap.dee
    for i in range(n):
        c = phi @ c @ phi.T + dee
        c = (c + c.T) / 2.0
        if not np.isfinite(c).all() or np.abs(c).max() > _NORM_OVERFLOW:
            raise UnstableDynamicsError("covariance norm overflow", index=i + 1)
    return Covariance4(c)


def evolve_periods(c0: Covariance4, pmap: PeriodMap, n: int) -> Covariance4:
    """Same result as :func:`iterate_periods` in O(log n) matrix work."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if n == 0:
        return c0
    big = map_power(pmap, n)
    if not np.isfinite(big.phi).all() or np.abs(big.phi).max() > _NORM_OVERFLOW:
        raise UnstableDynamicsError("propagator norm overflow", index=n)
    return big.apply(c0)


@dataclass(frozen=True)
class Trajectory:
    """Stroboscopic covariance samples (t, C) at multiples of the drive
    period times the sampling stride."""

    times: np.ndarray
    covariances: list[Covariance4]
    params: SystemParams

    def __len__(self):
        return len(self.covariances)


def trajectory(params: SystemParams, n_periods: int, stride: int = 100,
               rel_tol: float = DEFAULT_REL_TOL,
               c0: Covariance4 | None = None) -> Trajectory:
    """Stroboscopic trajectory from ``c0`` (vacuum by default), sampled
    every ``stride`` periods, including t = 0."""
    if stride < 1 or n_periods < stride:
        raise ParameterError("need n_periods >= stride >= 1")
    pmap = period_map(params, rel_tol)
    block = map_power(pmap, stride)
    c = c0 if c0 is not None else Covariance4.vacuum()
    times = [0.0]
    covs = [c]
    n_samples = n_periods // stride
    for i in range(1, n_samples + 1):
        c = block.apply(c)
        covs.append(c)
        times.append(i * stride * pmap.period)
        if np.abs(c.m).max() > _NORM_OVERFLOW:
            raise UnstableDynamicsError("covariance norm overflow",
                                        index=i * stride)
    return Trajectory(times=np.array(times), covariances=covs, params=params)


def floquet_steady_state(pmap: PeriodMap) -> Covariance4:
    """Fixed point of C = Phi C Phi^T + D for a stable (damped) map.

    Solves the 16-dimensional linear system (I - Phi (x) Phi) vec(C) =
    vec(D).  Raises :class:`UnstableDynamicsError` when the spectral
    radius of Phi is >= 1 - 1e-9 (amplifier at or above threshold).
    """
    rho = pmap.spectral_radius()
    if rho >= 1.0 - 1e-9:
        raise UnstableDynamicsError(
            f"no steady state: spectral radius {rho:.12f} >= 1 - 1e-9")
    lhs = np.eye(16) - np.kron(pmap.phi, pmap.phi)
    c = np.linalg.solve(lhs, pmap.dee.ravel()).reshape(4, 4)
    return Covariance4((c + c.T) / 2.0)


def converged_squeezing_state(pmap: PeriodMap,
                              s_tol_db: float = 1e-4,
                              max_periods: int = 2 ** 24) -> tuple[Covariance4, dict]:
    """Evolve vacuum until the smallest eigen-variance stops moving.

    Above the amplification threshold the covariance has no global fixed
    point (the amplified pair grows without bound) but the squeezed pair
    converges within microseconds.  The convergence horizon is taken from
    the Floquet multipliers: a pilot run at 14 contraction e-folds
    estimates the squeezing floor, the horizon needed to settle within
    ``s_tol_db`` follows analytically, and a probe 3 e-folds later
    verifies it.  The horizon is capped where float precision in the
    small eigenvalues would degrade (the amplified pair swamping the
    squeezed pair), flagged as ``precision_limited`` in the info dict.

    Returns (state, info) with info keys ``periods``, ``time_s``,
    ``converged``, ``precision_limited``.
    """
    from .analysis import squeezing_db  # local import to avoid a cycle

    multipliers = np.abs(np.linalg.eigvals(pmap.phi))
    rho_min = float(multipliers.min())
    rho_max = float(multipliers.max())
    if rho_min >= 1.0 - 1e-12:
        raise UnstableDynamicsError(
            "no contracting direction: squeezing never converges")
    c_rate = -2.0 * math.log(rho_min)       # variance contraction / period
    g_rate = 2.0 * math.log(rho_max)        # variance growth / period
    # the floor converges at the contraction rate AND, above threshold,
    # through an eigenvalue-repulsion tail ~ 1/V_max decaying at the
    # growth rate; the slower of the two sets the horizon
    rate_eff = c_rate if g_rate <= 1e-9 else min(c_rate, g_rate)
    delta_rel = s_tol_db * math.log(10.0) / 5.0
    vacuum = Covariance4.vacuum()

    n_pilot = min(math.ceil(14.0 / c_rate), max_periods)
    v_floor = float(np.linalg.eigvalsh(
        evolve_periods(vacuum, pmap, n_pilot).m)[0])
    if v_floor <= 0.0:
        raise NumericalError("squeezing floor lost to rounding in the pilot run")
    ratio = max(0.25 / v_floor - 1.0, 1e-12)
    n_star = max(n_pilot,
                 math.ceil((math.log(ratio) - math.log(delta_rel)) / rate_eff))

    precision_limited = False
    if g_rate > 0.0:
        # keep eigensolver noise (~V_max * 1e-15) well under the floor
        n_precision = math.floor(
            math.log(0.01 * v_floor / (0.4 * 1e-15)) / g_rate)
        if n_star > n_precision:
            n_star = max(n_pilot, n_precision)
            precision_limited = True
    n_star = min(n_star, max_periods)

    n_verify = min(n_star + math.ceil(3.0 / c_rate), max_periods)
    c_star = evolve_periods(vacuum, pmap, n_star)
    c_final = evolve_periods(vacuum, pmap, n_verify)
    v_star = float(np.linalg.eigvalsh(c_star.m)[0])
    v_final = float(np.linalg.eigvalsh(c_final.m)[0])
    if v_star <= 0.0 or v_final <= 0.0:
        raise NumericalError("squeezing floor lost to rounding")
    converged = abs(squeezing_db(v_final) - squeezing_db(v_star)) <= s_tol_db \
        and not precision_limited and n_verify < max_periods
    info = {"periods": n_verify, "time_s": n_verify * pmap.period,
            "converged": converged, "precision_limited": precision_limited}
    return c_final, info
