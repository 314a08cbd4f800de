"""paramp-sim: covariance-level simulator and analysis toolkit for a
hybrid non-degenerate parametric amplifier built from a microwave cavity
mode coupled to a frequency-modulated spin ensemble."""

__version__ = "0.1.0"

from .analysis import (BandwidthResult, OptimizeResult, QuadratureSpectrum,
                       RateFit, SystemMetrics, amplification_rate,
                       bandwidth_fwhm, eigen_quadratures, optimize_drive,
                       squeezing_db, system_metrics)
from .covariance import Covariance4, OMEGA_SYMPLECTIC, V0, vacuum_covariance
from .errors import (BracketingError, ConfigError, NumericalError,
                     ParameterError, ParampSimError, StepSizeUnderflowError,
                     UnstableDynamicsError)
from .model import diffusion_matrix, drift_matrix, modulated_spin_frequency
from .noise import (NoiseReport, added_noise_photons, db_rate_from_paramp_rate,
                    noise_report, noise_temperature, output_noise_spectrum,
                    paramp_rate_from_db_rate, stability_margin,
                    steady_state_gain)
from .params import (SystemParams, nv_cavity_defaults,
                     spin_occupation_from_polarization, thermal_occupation)
from .power import (PowerSpec, modulation_amplitude_from_power,
                    required_power)
from .propagator import (PeriodMap, Trajectory, converged_squeezing_state,
                         evolve_periods, floquet_steady_state,
                         integrate_interval, iterate_periods, map_power,
                         period_map, trajectory)
from .protocol import (ProtocolResult, ProtocolSchedule, beamsplitter_rotation,
                       detuning_rotation, execute_schedule, plan_conversion)
from .resonance import (EnvelopeConfig, ResonanceSpec, coupling_coefficient,
                        envelope_F, resonance_frequencies, resonance_strength)
from .runner import run_scenario

__all__ = [
    "BandwidthResult", "BracketingError", "ConfigError", "Covariance4",
    "EnvelopeConfig", "NoiseReport", "NumericalError", "OMEGA_SYMPLECTIC",
    "OptimizeResult", "ParameterError", "ParampSimError", "PeriodMap",
    "PowerSpec", "ProtocolResult", "ProtocolSchedule", "QuadratureSpectrum",
    "RateFit", "ResonanceSpec", "StepSizeUnderflowError", "SystemMetrics",
    "SystemParams", "Trajectory", "UnstableDynamicsError", "V0",
    "added_noise_photons", "amplification_rate", "bandwidth_fwhm",
    "beamsplitter_rotation", "converged_squeezing_state",
    "coupling_coefficient", "db_rate_from_paramp_rate", "detuning_rotation",
    "diffusion_matrix", "drift_matrix", "eigen_quadratures", "envelope_F",
    "evolve_periods", "execute_schedule", "floquet_steady_state",
    "integrate_interval", "iterate_periods", "map_power",
    "modulated_spin_frequency", "modulation_amplitude_from_power",
    "noise_report", "noise_temperature", "nv_cavity_defaults",
    "optimize_drive", "output_noise_spectrum", "paramp_rate_from_db_rate",
    "period_map", "plan_conversion", "required_power",
    "resonance_frequencies", "resonance_strength", "run_scenario",
    "spin_occupation_from_polarization", "squeezing_db", "stability_margin",
    "steady_state_gain", "system_metrics", "thermal_occupation",
    "trajectory", "vacuum_covariance",
]
