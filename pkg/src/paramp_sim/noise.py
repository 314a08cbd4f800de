"""Analytic steady-state model of the effective non-degenerate paramp.

The frequency modulation is modeled by a paramp rate constant k obtained
from the simulated undamped amplification rate; gain, output noise
spectrum, added noise photons and noise temperature then follow in closed
form from the input-output treatment of the damped two-mode system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

from .constants import HBAR, K_B
from .errors import ParameterError, UnstableDynamicsError
from .params import SystemParams

#: 5*log10(e); the dB amplification rate is this times k
_DB_RATE_PER_K = 5.0 * math.log10(math.e)


def paramp_rate_from_db_rate(s_dot: float) -> float:
    """Effective paramp rate k from an amplification rate in dB/s.

    Inverse of S-dot = 5 log10(e) k (approximately 2.2 k)."""
    if s_dot < 0.0:
        raise ParameterError(f"s_dot must be >= 0, got {s_dot}")
    return s_dot / _DB_RATE_PER_K


def db_rate_from_paramp_rate(k: float) -> float:
    """Amplification rate in dB/s generated by a paramp of rate k."""
    if k < 0.0:
        raise ParameterError(f"k must be >= 0, got {k}")
    return _DB_RATE_PER_K * k


def stability_margin(k: float, gamma: float, kappa: float) -> tuple[bool, float]:
    """(stable, xi) with xi = k/sqrt(gamma*kappa); stable iff xi < 1."""
    if gamma <= 0.0 or kappa <= 0.0:
        raise ParameterError("gamma and kappa must be > 0")
    if k < 0.0:
        raise ParameterError(f"k must be >= 0, got {k}")
    xi = float(k / math.sqrt(gamma * kappa))
    return xi < 1.0, xi


def steady_state_gain(gamma_c: float, gamma_l: float, kappa: float,
                      k: float) -> float:
    """G_ss = [(gamma_c - gamma_l) kappa + k^2] / [(gamma_c + gamma_l) kappa - k^2].

    Only defined below threshold (k^2 < gamma*kappa); at or above it the
    amplification overwhelms the damping and there is no steady state."""
    gamma = gamma_c + gamma_l
    if gamma <= 0.0 or kappa <= 0.0:
        raise ParameterError("need gamma_c + gamma_l > 0 and kappa > 0")
    if k * k >= gamma * kappa:
        raise UnstableDynamicsError(
            f"k^2 = {k*k:.6e} >= gamma*kappa = {gamma*kappa:.6e}: above threshold")
    return ((gamma_c - gamma_l) * kappa + k * k) / (gamma * kappa - k * k)


def output_noise_spectrum(nu: float, params: SystemParams, k: float) -> float:
    """Added-noise output spectrum S(nu) of the damped paramp model.

    Evaluated exactly in the printed closed form

        S(nu) = (gamma_c/2) [ (kappa^2 + 4 nu^2) gamma_l (2 n_T + 1)
                              + k^2 kappa (2 n_s + 1) ]
                / { [(4 nu^2 + k^2) - gamma kappa]^2 / 2 - nu^2 (gamma+kappa)^2 }

    which at nu = 0 satisfies n_add = S(0)/G_ss^2 - 1/2 identically.  The
    denominator vanishes (a pole) at some nu for any stable parameter set;
    such points are rejected."""
    gamma, kappa = params.gamma, params.kappa
    stable, xi = stability_margin(k, gamma, kappa)
    if not stable:
        raise UnstableDynamicsError(f"xi = {xi:.4f} >= 1: above threshold")
    n_t = params.n_thermal
    num = (params.gamma_c / 2.0) * (
        (kappa ** 2 + 4.0 * nu ** 2) * params.gamma_l * (2.0 * n_t + 1.0)
        + k ** 2 * kappa * (2.0 * params.n_s + 1.0))
    if num == 0.0:
        return 0.0  # no added-noise paths at all
    den = ((4.0 * nu ** 2 + k ** 2) - gamma * kappa) ** 2 / 2.0 \
        - nu ** 2 * (gamma + kappa) ** 2
    if den <= 0.0:
        raise UnstableDynamicsError(
            f"spectrum denominator non-positive at nu = {nu:.6e} (pole)")
    return num / den


def added_noise_photons(params: SystemParams, k: float) -> float:
    """Input-referred added noise photons above the half-photon vacuum:

        n_add = eta [ (gamma_l/gamma)(2 n_T + 1) + xi^2 (2 n_s + 1) ]
                / [eta + xi^2 - gamma_l/gamma]^2  -  1/2

    with eta = gamma_c/gamma and xi = k/sqrt(gamma*kappa).  Defined for
    xi <= 1 (the formula is regular at threshold); rejected above."""
    gamma, kappa = params.gamma, params.kappa
    if gamma <= 0.0 or kappa <= 0.0:
        raise ParameterError("need gamma > 0 and kappa > 0")
    xi2 = k * k / (gamma * kappa)
    if xi2 > 1.0 + 1e-12:
        raise UnstableDynamicsError(
            f"xi = {math.sqrt(xi2):.4f} > 1: above threshold")
    eta = params.gamma_c / gamma
    loss = params.gamma_l / gamma
    den = eta + xi2 - loss
    if den <= 0.0:
        raise ParameterError("vanishing gain: eta + xi^2 <= gamma_l/gamma")
    n_t = params.n_thermal
    num = eta * (loss * (2.0 * n_t + 1.0) + xi2 * (2.0 * params.n_s + 1.0))
    return num / den ** 2 - 0.5


def noise_temperature(n_add: float, omega_c: float) -> float:
    """T_amp = (hbar omega_c / k_B) / ln(1/n_add + 1); 0 at n_add = 0."""
    if n_add < 0.0:
        raise ParameterError(f"n_add must be >= 0, got {n_add}")
    if omega_c <= 0.0:
        raise ParameterError(f"omega_c must be > 0, got {omega_c}")
    if n_add == 0.0:
        return 0.0
    return (HBAR * omega_c / K_B) / math.log1p(1.0 / n_add)


@dataclass(frozen=True)
class NoiseReport:
    """Steady-state amplifier figures at one operating point."""

    k: float
    xi: float
    eta: float
    gain_ss: float
    n_add: float
    t_amp: float
    stable: bool
    margin: float

    def to_dict(self) -> dict:
        return asdict(self)


def noise_report(params: SystemParams, k: float) -> NoiseReport:
    """Assemble the full report; gain is +inf at/above threshold and
    n_add/t_amp are NaN above it (where the formulas lose meaning)."""
    stable, xi = stability_margin(k, params.gamma, params.kappa)
    gain = steady_state_gain(params.gamma_c, params.gamma_l, params.kappa, k) \
        if stable else math.inf
    if xi <= 1.0 + 1e-12:
        n_add = added_noise_photons(params, k)
        t_amp = noise_temperature(max(n_add, 0.0), params.omega_c)
    else:
        n_add = math.nan
        t_amp = math.nan
    return NoiseReport(k=float(k), xi=xi, eta=params.gamma_c / params.gamma,
                       gain_ss=float(gain), n_add=float(n_add),
                       t_amp=float(t_amp), stable=bool(stable),
                       margin=1.0 - xi)
