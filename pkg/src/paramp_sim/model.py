"""Drift and diffusion matrices of the covariance equation of motion.

The covariance C of the quadratures (X_a, Y_a, X_b, Y_b) obeys

    dC/dt = A(t) C + C A(t)^T + G,

with the drift A(t) below and a time-independent diagonal diffusion G.
The spin frequency is modulated as Omega(t) = omega_s + Lambda*sin(omega*t).
"""

from __future__ import annotations

import numpy as np

from .params import SystemParams


def modulated_spin_frequency(params: SystemParams, t: float) -> float:
    """Omega(t) = omega_s + Lambda * sin(omega_drive * t)."""
    return params.omega_s + params.lambda_drive * np.sin(params.omega_drive * t)


def drift_matrix(params: SystemParams, t: float) -> np.ndarray:
    """Drift A(t) of the covariance equation of motion at time t."""
    a0, a1 = drift_matrix_parts(params)
    return a0 + np.sin(params.omega_drive * t) * a1


def drift_matrix_parts(params: SystemParams) -> tuple[np.ndarray, np.ndarray]:
    """Split A(t) = A0 + sin(omega_drive*t) * A1 into constant parts.

    Useful for integrators that evaluate A(t) many times.
    """
    gamma = params.gamma
    a0 = np.array([
        [-gamma / 2.0, params.omega_c, 0.0, 0.0],
        [-params.omega_c, -gamma / 2.0, -2.0 * params.g, 0.0],
        [0.0, 0.0, -params.kappa / 2.0, params.omega_s],
        [-2.0 * params.g, 0.0, -params.omega_s, -params.kappa / 2.0],
    ])
    a1 = np.zeros((4, 4))
    a1[2, 3] = params.lambda_drive
    a1[3, 2] = -params.lambda_drive
    return a0, a1


def diffusion_matrix(params: SystemParams) -> np.ndarray:
    """Diffusion G = diag(gamma(2n_T+1), gamma(2n_T+1), kappa(2n_s+1),
    kappa(2n_s+1)) / 4 with n_T the cavity-bath thermal occupation."""
    n_t = params.n_thermal
    vc = params.gamma * (2.0 * n_t + 1.0) / 4.0
    vs = params.kappa * (2.0 * params.n_s + 1.0) / 4.0
    return np.diag([vc, vc, vs, vs])
