"""Embedded Dormand-Prince 5(4) integrator with PI step-size control.

A small, deterministic adaptive integrator for the dense matrix ODEs in
this package.  The error estimate of the embedded 4th-order solution is
kept below ``rel_tol`` per step (with an absolute floor ``abs_tol``), and
the step size is driven by a standard PI controller.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import NumericalError, StepSizeUnderflowError

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = _A[6]
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920,
               -17253 / 339200, 22 / 525, -1 / 40])

_SAFETY = 0.9
_ALPHA = 0.17      # ~1/5 - 0.75*beta
_BETA = 0.04
_FAC_MIN = 0.2
_FAC_MAX = 5.0
_MAX_STEPS = 20_000_000


def _initial_step(f, t0, y0, f0, t1, rel_tol, abs_tol):
    span = t1 - t0
    sc = abs_tol + rel_tol * np.abs(y0)
    d0 = np.sqrt(np.mean((y0 / sc) ** 2))
    d1 = np.sqrt(np.mean((f0 / sc) ** 2))
    h0 = 1e-6 * span if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, span)
    f1 = f(t0 + h0, y0 + h0 * f0)
    d2 = np.sqrt(np.mean(((f1 - f0) / sc) ** 2)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6 * span, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, span)


def integrate_adaptive(f: Callable[[float, np.ndarray], np.ndarray],
                       t0: float, t1: float, y0: np.ndarray,
                       rel_tol: float = 1e-10,
                       abs_tol: float = 1e-14) -> np.ndarray:
    """Integrate y' = f(t, y) from t0 to t1 and return y(t1).

    Raises :class:`StepSizeUnderflowError` when the interval cannot be
    resolved at the requested tolerance.
    """
    if not t1 > t0:
        raise NumericalError(f"t1 must exceed t0, got [{t0}, {t1}]")
    y = np.asarray(y0, dtype=float).copy()
    t = t0
    k1 = f(t, y)
    h = _initial_step(f, t0, y, k1, t1, rel_tol, abs_tol)
    err_prev = 1e-4
    h_min_floor = 16.0 * np.finfo(float).eps
    ks = [k1] + [np.empty_like(y) for _ in range(6)]

    for _ in range(_MAX_STEPS):
        remaining = t1 - t
        if remaining <= h_min_floor * max(abs(t1), t1 - t0):
            return y
        h = min(h, remaining)
        if h < h_min_floor * max(abs(t), t1 - t0):
            raise StepSizeUnderflowError(t, h, rel_tol)

        for i in range(1, 7):
            acc = _A[i][0] * ks[0]
            for j in range(1, i):
                if _A[i][j] != 0.0:
                    acc = acc + _A[i][j] * ks[j]
            ks[i] = f(t + _C[i] * h, y + h * acc)

        y_new = y + h * (_B5[0] * ks[0] + _B5[2] * ks[2] + _B5[3] * ks[3]
                         + _B5[4] * ks[4] + _B5[5] * ks[5])
        err_vec = h * (_E[0] * ks[0] + _E[2] * ks[2] + _E[3] * ks[3]
                       + _E[4] * ks[4] + _E[5] * ks[5] + _E[6] * ks[6])
        scale = abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.sqrt(np.mean((err_vec / scale) ** 2)))

        if err <= 1.0:
            t = t + h
            y = y_new
            ks[0] = ks[6].copy()  # FSAL
            err = max(err, 1e-10)
            fac = _SAFETY * err ** (-_ALPHA) * err_prev ** _BETA
            err_prev = err
            h *= min(_FAC_MAX, max(_FAC_MIN, fac))
        else:
            h *= max(_FAC_MIN, _SAFETY * err ** (-0.2))

    raise NumericalError("integrator exceeded the maximum step count")
