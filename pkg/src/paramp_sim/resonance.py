"""First-order resonance structure of the modulated coupling.

The oscillatory envelope

    F(x, y, t) = sum_n  i^n J_n(-y/omega) [exp(i(x + n*omega)t) - 1]/(x + n*omega)

(with the exact t-linear branch i^(n+1) J_n(-y/omega) t on resonant terms
x + n*omega = 0) controls which drive frequencies pump the coupled system:
resonances occur when omega divides the sum or the difference of the two
mode frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from .errors import ParameterError
from .params import SystemParams

_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)

#: margin added to |y/omega| for a negligible Bessel tail
_TRUNCATION_MARGIN_MIN = 20
_TRUNCATION_MARGIN_DEFAULT = 40

#: below this fraction of omega, |x + n*omega| is treated as resonant
RESONANT_TOL = 1e-12


@dataclass(frozen=True)
class ResonanceSpec:
    """Predicted resonant drive frequencies omega = Sigma/n and |Delta|/n."""

    sigma: float
    delta: float
    harmonics: list  # of (n, frequency_rad_s, branch)


def resonance_frequencies(omega_c: float, omega_s: float,
                          n_max: int) -> ResonanceSpec:
    """All omega = Sigma/n and |Delta|/n for n = 1..n_max, deduplicated
    (smallest n kept on an exact collision), descending in frequency."""
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    sigma = omega_s + omega_c
    delta = omega_s - omega_c
    entries = []
    for n in range(1, n_max + 1):
        entries.append((n, sigma / n, "sum"))
        if delta != 0.0:
            entries.append((n, abs(delta) / n, "difference"))
    by_freq: dict[float, tuple] = {}
    for n, f, branch in entries:
        if f not in by_freq or n < by_freq[f][0]:
            by_freq[f] = (n, f, branch)
    harmonics = sorted(by_freq.values(), key=lambda e: -e[1])
    return ResonanceSpec(sigma=sigma, delta=delta, harmonics=harmonics)


@dataclass(frozen=True)
class EnvelopeConfig:
    """Bessel-series truncation control for :func:`envelope_F`.

    ``truncation`` is the maximum |n| retained; it must be at least
    ceil(|y/omega|) + 20 so the tail beyond the Bessel turning point is
    negligible.  When None, ceil(|y/omega|) + 40 is used.
    """

    truncation: int | None = None

    def resolve(self, y_over_omega: float) -> int:
        minimum = math.ceil(abs(y_over_omega)) + _TRUNCATION_MARGIN_MIN
        if self.truncation is None:
            return math.ceil(abs(y_over_omega)) + _TRUNCATION_MARGIN_DEFAULT
        if self.truncation < minimum:
            raise ParameterError(
                f"truncation {self.truncation} below the required minimum "
                f"{minimum} for |y/omega| = {abs(y_over_omega):g}")
        return self.truncation


def envelope_F(x: float, y: float, t: float, omega: float,
               config: EnvelopeConfig | None = None) -> complex:
    """Evaluate the truncated envelope sum (see module docstring)."""
    if omega <= 0.0:
        raise ParameterError(f"omega must be > 0, got {omega}")
    arg = -y / omega
    trunc = (config or EnvelopeConfig()).resolve(y / omega)
    ns = np.arange(-trunc, trunc + 1)
    bessel = jv(ns, arg)
    ipow = np.array([_I_POW[n % 4] for n in ns])
    denom = x + ns * omega
    resonant = np.abs(denom) < omega * RESONANT_TOL
    terms = np.empty(len(ns), dtype=complex)
    nz = ~resonant
    terms[nz] = ipow[nz] * bessel[nz] * (np.exp(1j * denom[nz] * t) - 1.0) / denom[nz]
    terms[resonant] = ipow[resonant] * 1j * bessel[resonant] * t
    return complex(terms.sum())


def coupling_coefficient(n_spins: int, s: float) -> float:
    """Collective raising matrix element sqrt((N/2+s+1)(N/2-s)) for the
    spin-N/2 ladder, s in {-N/2, -N/2+1, ..., N/2}."""
    if n_spins < 1:
        raise ParameterError(f"n_spins must be >= 1, got {n_spins}")
    half = n_spins / 2.0
    steps = s + half
    if abs(steps - round(steps)) > 1e-9:
        raise ParameterError(f"s = {s} is not on the ladder for N = {n_spins}")
    if not -half <= s <= half:
        raise ParameterError(f"s = {s} outside [-N/2, N/2] for N = {n_spins}")
    return math.sqrt((half + s + 1.0) * (half - s))


def resonance_strength(params: SystemParams, t: float,
                       config: EnvelopeConfig | None = None) -> tuple[complex, complex, complex, complex]:
    """The four envelope evaluations entering the first-order transition
    amplitudes: F(-Sigma,-Lambda,t), F(-Delta,-Lambda,t), F(Delta,Lambda,t),
    F(Sigma,Lambda,t).  Their magnitudes serve as resonance-strength
    proxies."""
    sig, del_, lam, w = params.sigma, params.delta, params.lambda_drive, params.omega_drive
    return (
        envelope_F(-sig, -lam, t, w, config),
        envelope_F(-del_, -lam, t, w, config),
        envelope_F(del_, lam, t, w, config),
        envelope_F(sig, lam, t, w, config),
    )
