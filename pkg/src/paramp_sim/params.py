"""Physical parameters of the modulated spin-cavity model.

Internally every frequency and rate is angular (rad/s).  Configuration
files and the ``*_hz`` constructors take ordinary frequencies in Hz and
convert by 2*pi, matching the way such parameters are usually quoted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .constants import HBAR, K_B, TWO_PI
from .errors import ParameterError


def thermal_occupation(temperature: float, omega: float) -> float:
    """Bose-Einstein mean occupation 1/(exp(hbar*omega/(kB*T)) - 1).

    Returns 0 at T = 0 (the limit).  ``omega`` is angular (rad/s).
    """
    if omega <= 0.0:
        raise ParameterError(f"omega must be > 0, got {omega}")
    if temperature < 0.0:
        raise ParameterError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega / (K_B * temperature)
    return 1.0 / math.expm1(x)


def spin_occupation_from_polarization(polarization: float) -> float:
    """Effective spin-bath occupation n_s = (1 - P) / (2 P) for P in (0, 1]."""
    if not 0.0 < polarization <= 1.0:
        raise ParameterError(f"polarization must be in (0, 1], got {polarization}")
    return (1.0 - polarization) / (2.0 * polarization)


@dataclass(frozen=True)
class SystemParams:
    """All rates and frequencies of the coupled cavity/spin model (rad/s).

    Attributes
    ----------
    omega_c : cavity angular frequency
    omega_s : spin transition angular frequency (unmodulated)
    g : collective spin-cavity coupling rate
    lambda_drive : frequency-modulation amplitude
    omega_drive : frequency-modulation angular frequency
    gamma_c : cavity input/output coupling rate
    gamma_l : cavity internal loss rate
    kappa : effective spin damping rate (inhomogeneous linewidth)
    temperature : ambient cavity temperature in K
    n_s : spin-bath mean occupation (dimensionless)
    """

    omega_c: float
    omega_s: float
    g: float
    lambda_drive: float
    omega_drive: float
    gamma_c: float = 0.0
    gamma_l: float = 0.0
    kappa: float = 0.0
    temperature: float = 0.0
    n_s: float = 0.0

    def __post_init__(self):
        for name in ("omega_c", "omega_s", "omega_drive"):
            if getattr(self, name) <= 0.0:
                raise ParameterError(f"{name} must be > 0, got {getattr(self, name)}")
        for name in ("g", "lambda_drive", "gamma_c", "gamma_l", "kappa",
                     "temperature", "n_s"):
            if getattr(self, name) < 0.0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)}")

    @property
    def gamma(self) -> float:
        """Total cavity damping rate gamma_c + gamma_l."""
        return self.gamma_c + self.gamma_l

    @property
    def delta(self) -> float:
        """Spin-cavity detuning omega_s - omega_c."""
        return self.omega_s - self.omega_c

    @property
    def sigma(self) -> float:
        """Sum frequency omega_s + omega_c."""
        return self.omega_s + self.omega_c

    @property
    def drive_period(self) -> float:
        """One period of the modulation, 2*pi/omega_drive, in seconds."""
        return TWO_PI / self.omega_drive

    @property
    def n_thermal(self) -> float:
        """Cavity-bath occupation at ``temperature`` (evaluated at omega_c)."""
        return thermal_occupation(self.temperature, self.omega_c)

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    @classmethod
    def from_hz(cls, *, omega_c_hz: float, omega_s_hz: float, g_hz: float,
                lambda_hz: float, omega_drive_hz: float,
                gamma_c_hz: float = 0.0, gamma_l_hz: float = 0.0,
                kappa_hz: float = 0.0, temperature_k: float = 0.0,
                n_s: float | None = None,
                polarization: float | None = None) -> "SystemParams":
        """Build from ordinary frequencies in Hz (converted by 2*pi)."""
        if n_s is not None and polarization is not None:
            raise ParameterError("give n_s or polarization, not both")
        if polarization is not None:
            n_s = spin_occupation_from_polarization(polarization)
        return cls(
            omega_c=TWO_PI * omega_c_hz,
            omega_s=TWO_PI * omega_s_hz,
            g=TWO_PI * g_hz,
            lambda_drive=TWO_PI * lambda_hz,
            omega_drive=TWO_PI * omega_drive_hz,
            gamma_c=TWO_PI * gamma_c_hz,
            gamma_l=TWO_PI * gamma_l_hz,
            kappa=TWO_PI * kappa_hz,
            temperature=temperature_k,
            n_s=0.0 if n_s is None else n_s,
        )

    def to_hz_dict(self) -> dict:
        """Flat Hz/K keyed representation (the configuration file format)."""
        return {
            "omega_c_hz": self.omega_c / TWO_PI,
            "omega_s_hz": self.omega_s / TWO_PI,
            "g_hz": self.g / TWO_PI,
            "lambda_hz": self.lambda_drive / TWO_PI,
            "omega_drive_hz": self.omega_drive / TWO_PI,
            "gamma_c_hz": self.gamma_c / TWO_PI,
            "gamma_l_hz": self.gamma_l / TWO_PI,
            "kappa_hz": self.kappa / TWO_PI,
            "temperature_k": self.temperature,
            "n_s": self.n_s,
        }


def nv_cavity_defaults(**overrides_hz) -> SystemParams:
    """Reference NV/cavity parameter point used by the bundled scenarios.

    omega_c/2pi = 2.5 GHz, omega_s/2pi = 3.5 GHz, drive at the sum frequency
    6 GHz, g/2pi = 3.5 MHz, gamma_c = gamma_l = 2pi*100 kHz,
    kappa = 2pi*200 kHz, T = 10 mK, spins pumped to 80% polarization
    (n_s = 1/8).  Keyword overrides are in the ``from_hz`` key set.

    The coupling default is the one that reproduces the reference
    amplification rate (about 8 dB/us at a 1 GHz modulation amplitude) and
    the instability threshold near a 355 MHz amplitude.
    """
    kw = dict(
        omega_c_hz=2.5e9,
        omega_s_hz=3.5e9,
        g_hz=3.5e6,
        lambda_hz=1.0e9,
        omega_drive_hz=6.0e9,
        gamma_c_hz=100e3,
        gamma_l_hz=100e3,
        kappa_hz=200e3,
        temperature_k=0.010,
        n_s=0.125,
    )
    kw.update(overrides_hz)
    return SystemParams.from_hz(**kw)
