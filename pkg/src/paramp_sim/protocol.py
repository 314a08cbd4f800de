"""Two-step rotation protocol converting two-mode into single-mode
squeezing (or into maximal two-mode squeezing).

Both steps act as exact orthogonal, symplectic congruences on the
covariance: a phase rotation of the spin mode (generated by a detuning)
followed by a beam-splitter rotation mixing the modes (generated by the
on-resonance exchange coupling).  Neither changes the eigen-spectrum, so
squeezing is relocated between quadratures, never created or destroyed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import QuadratureSpectrum
from .covariance import Covariance4
from .errors import ParameterError

_TWO_PI = 2.0 * math.pi

#: squeezed axes within this relative variance spread count as degenerate
DEGENERACY_RTOL = 1e-3

#: minimum quadrature weight on a mode for phase extraction
_WEIGHT_TOL = 1e-9


def _spin_rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    r = np.eye(4)
    r[2, 2] = c
    r[2, 3] = -s
    r[3, 2] = s
    r[3, 3] = c
    return r


def _beamsplitter(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([
        [c, 0.0, -s, 0.0],
        [0.0, c, 0.0, -s],
        [s, 0.0, c, 0.0],
        [0.0, s, 0.0, c],
    ])


def detuning_rotation(c: Covariance4, phi: float) -> Covariance4:
    """Rotate the (X_b, Y_b) plane by phi; identity on mode a."""
    return c.congruence(_spin_rotation(phi))


def beamsplitter_rotation(c: Covariance4, theta: float) -> Covariance4:
    """Rotate (X_a, X_b) by theta and (Y_a, Y_b) by the same theta."""
    return c.congruence(_beamsplitter(theta))


@dataclass(frozen=True)
class ProtocolSchedule:
    """Angles and durations of the two-step conversion.

    ``delta_psi`` is the spin-phase rotation, ``delta_theta`` the
    beam-splitter rotation (both reported mod 2*pi); durations are
    (delta_psi/|detuning|, delta_theta/coupling).
    """

    delta_psi: float
    delta_theta: float
    detuning: float
    g_used: float
    durations: tuple[float, float]
    target: str


def _axis_angles(axis: np.ndarray) -> tuple[float, float, float]:
    """Decompose a unit quadrature vector as
    cos(theta)(cos(phi) X_a - sin(phi) Y_a) - sin(theta)(cos(psi) X_b - sin(psi) Y_b)
    with theta in [0, pi/2]."""
    xa, ya, xb, yb = axis
    wa = math.hypot(xa, ya)
    wb = math.hypot(xb, yb)
    theta = math.atan2(wb, wa)
    phi = math.atan2(-ya, xa) if wa > _WEIGHT_TOL else None
    psi = math.atan2(yb, -xb) if wb > _WEIGHT_TOL else None
    if phi is None and psi is None:
        raise ParameterError("zero quadrature axis")
    if phi is None:
        phi = psi
    if psi is None:
        psi = phi
    return theta, phi, psi


def plan_conversion(spectrum: QuadratureSpectrum, target: str, *,
                    detuning: float, coupling: float) -> ProtocolSchedule:
    """Plan the spin-phase and beam-splitter angles for ``target`` in
    {"single-mode", "maximal-two-mode"}.

    The planned axis is the most-squeezed one.  A near-degenerate squeezed
    pair spans a plane in which the eigenbasis is arbitrary; the planner
    canonicalizes by taking the unit vector of that plane with the largest
    mode-a weight.  The spin rotation aligns the axis phases (psi -> phi);
    the beam-splitter rotation then drives the mixing angle theta forward
    to the nearest multiple of pi (single-mode, axis ends up entirely in
    mode a) or to pi/4 mod pi/2 (maximal two-mode).
    """
    if target not in ("single-mode", "maximal-two-mode"):
        raise ParameterError(f"unknown target {target!r}")
    if coupling <= 0.0:
        raise ParameterError("coupling must be > 0 to schedule the rotation")
    v_min = spectrum.variances[0]
    group = [i for i, v in enumerate(spectrum.variances)
             if v <= v_min * (1.0 + DEGENERACY_RTOL)]
    basis = spectrum.axes[:, group]
    if len(group) == 1:
        axis = basis[:, 0]
    else:
        weight_a = basis.T @ np.diag([1.0, 1.0, 0.0, 0.0]) @ basis
        _, vecs = np.linalg.eigh(weight_a)
        axis = basis @ vecs[:, -1]
        nz = np.nonzero(np.abs(axis) > 1e-12)[0]
        if len(nz) and axis[nz[0]] < 0:
            axis = -axis

    wa = math.hypot(axis[0], axis[1])
    wb = math.hypot(axis[2], axis[3])
    if target == "single-mode" and min(wa, wb) < 1e-6:
        raise ParameterError(
            "axis already contained in a single mode: nothing to convert")

    theta, phi, psi = _axis_angles(axis)
    delta_psi = (phi - psi) % _TWO_PI
    if target == "single-mode":
        delta_theta = (math.pi - theta) % math.pi
    else:
        delta_theta = (math.pi / 4.0 - theta) % (math.pi / 2.0)

    if delta_psi > 1e-12 and detuning == 0.0:
        raise ParameterError("zero detuning cannot rotate the spin phase")
    t1 = delta_psi / abs(detuning) if detuning != 0.0 else 0.0
    t2 = delta_theta / coupling
    return ProtocolSchedule(delta_psi=delta_psi, delta_theta=delta_theta,
                            detuning=detuning, g_used=coupling,
                            durations=(t1, t2), target=target)


@dataclass(frozen=True)
class ProtocolSample:
    stage: str
    angle: float
    std_devs: tuple[float, float, float, float]


@dataclass(frozen=True)
class ProtocolResult:
    covariance: Covariance4
    va_min: float
    vb_min: float
    path: list  # of ProtocolSample


def execute_schedule(c: Covariance4, schedule: ProtocolSchedule,
                     samples_per_stage: int = 200) -> ProtocolResult:
    """Apply the detuning rotation then the beam-splitter rotation.

    The schedule's angles advance the phases of quadrature forms
    (psi -> psi + delta_psi, theta -> theta + delta_theta); the covariance
    eigen-axes rotate with the transposed matrices, so the congruences are
    applied with negated angles.  The sampled path tracks the standard
    deviations of four fixed quadratures on a uniform angle grid: the two
    most-squeezed input axes and their images under the full schedule (the
    quadratures that receive the squeezing).
    """
    if samples_per_stage < 1:
        raise ParameterError("samples_per_stage must be >= 1")
    alpha1 = -schedule.delta_psi
    alpha2 = -schedule.delta_theta
    r_full = _beamsplitter(alpha2) @ _spin_rotation(alpha1)

    eigvals, eigvecs = np.linalg.eigh(c.m)
    q_in = [eigvecs[:, 0], eigvecs[:, 1]]
    q_out = [r_full @ q for q in q_in]
    tracked = q_in + q_out

    def sample(stage, angle, cov):
        stds = tuple(float(math.sqrt(q @ cov @ q)) for q in tracked)
        return ProtocolSample(stage=stage, angle=angle, std_devs=stds)

    path = [sample("detuning", 0.0, c.m)]
    for j in range(1, samples_per_stage + 1):
        ang = schedule.delta_psi * j / samples_per_stage
        r = _spin_rotation(-ang)
        path.append(sample("detuning", ang, r @ c.m @ r.T))
    c1 = detuning_rotation(c, alpha1)
    for j in range(1, samples_per_stage + 1):
        ang = schedule.delta_theta * j / samples_per_stage
        r = _beamsplitter(-ang)
        path.append(sample("beamsplitter", ang, r @ c1.m @ r.T))
    final = beamsplitter_rotation(c1, alpha2)
    va = float(np.linalg.eigvalsh(final.mode_block("a"))[0])
    vb = float(np.linalg.eigvalsh(final.mode_block("b"))[0])
    return ProtocolResult(covariance=final, va_min=va, vb_min=vb, path=path)
