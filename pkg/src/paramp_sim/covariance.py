"""Two-mode quadrature covariance matrices.

Quadrature order is (X_a, Y_a, X_b, Y_b) with X = (a + a^dag)/2 and
Y = (a - a^dag)/(2i), so the vacuum variance is V0 = 1/4.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

#: vacuum (coherent-state) variance in this convention
V0 = 0.25

#: symplectic form pairing (X_a, Y_a) and (X_b, Y_b)
OMEGA_SYMPLECTIC = np.array([
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
])

_SYMMETRY_RTOL = 1e-8


@dataclass(frozen=True)
class Covariance4:
    """Symmetric 4x4 covariance matrix of the two-mode quadratures.

    The stored matrix is symmetrized on construction; inputs whose
    asymmetry exceeds a loose relative bound are rejected as corrupted.
    """

    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (4, 4):
            raise ParameterError(f"covariance must be 4x4, got {m.shape}")
        scale = max(np.abs(m).max(), 1.0)
        if np.abs(m - m.T).max() > _SYMMETRY_RTOL * scale:
            raise ParameterError("covariance input is not symmetric")
        sym = (m + m.T) / 2.0
        sym.flags.writeable = False
        object.__setattr__(self, "m", sym)

    @classmethod
    def vacuum(cls) -> "Covariance4":
        return cls(np.eye(4) * V0)

    @classmethod
    def thermal(cls, n_a: float, n_b: float) -> "Covariance4":
        """Uncoupled thermal state: mode a at occupation n_a, mode b at n_b."""
        va = (2.0 * n_a + 1.0) / 4.0
        vb = (2.0 * n_b + 1.0) / 4.0
        return cls(np.diag([va, va, vb, vb]))

    def variances(self) -> np.ndarray:
        """Eigenvalues (eigen-quadrature variances), ascending."""
        return np.linalg.eigvalsh(self.m)

    def symplectic_eigenvalues(self) -> np.ndarray:
        """Moduli of the eigenvalues of Omega^-1 C, ascending (4 values,
        in duplicate pairs).  Physical states have all >= 1/4."""
        ev = np.linalg.eigvals(np.linalg.solve(OMEGA_SYMPLECTIC, self.m))
        return np.sort(np.abs(ev))

    def is_physical(self, tol: float = 1e-6) -> bool:
        """True when every symplectic eigenvalue is >= 1/4 - tol."""
        return bool(self.symplectic_eigenvalues()[0] >= V0 - tol)

    def mode_block(self, mode: str) -> np.ndarray:
        """2x2 covariance of a single mode, ``mode`` in {"a", "b"}."""
        if mode == "a":
            return self.m[:2, :2].copy()
        if mode == "b":
            return self.m[2:, 2:].copy()
        raise ParameterError(f"mode must be 'a' or 'b', got {mode!r}")

    def congruence(self, r: np.ndarray) -> "Covariance4":
        """Return R C R^T for a 4x4 transform R."""
        return Covariance4(r @ self.m @ r.T)


def vacuum_covariance() -> Covariance4:
    """The vacuum initial condition diag(1/4, 1/4, 1/4, 1/4)."""
    return Covariance4.vacuum()
