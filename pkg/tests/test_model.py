import numpy as np
import pytest

from paramp_sim import (Covariance4, OMEGA_SYMPLECTIC, diffusion_matrix,
                        drift_matrix, nv_cavity_defaults, squeezing_db,
                        vacuum_covariance)
from paramp_sim.constants import TWO_PI


class TestDriftMatrix:
    def test_layout_without_modulation(self, default_params):
        p = default_params.replace(lambda_drive=0.0)
        a = drift_matrix(p, t=0.37e-9)
        assert a[2, 3] == pytest.approx(p.omega_s)
        assert a[3, 2] == pytest.approx(-p.omega_s)
        assert a[0, 1] == pytest.approx(p.omega_c)
        assert a[1, 0] == pytest.approx(-p.omega_c)
        assert a[1, 2] == a[3, 0] == pytest.approx(-2.0 * p.g)
        assert a[0, 0] == a[1, 1] == pytest.approx(-p.gamma / 2.0)
        assert a[2, 2] == a[3, 3] == pytest.approx(-p.kappa / 2.0)

    def test_quarter_period_modulation_peak(self):
        # sin(omega t) = 1 a quarter period into the drive
        p = nv_cavity_defaults(g_hz=1.1e6)
        t = 1.0 / (4.0 * 6.0e9)
        a = drift_matrix(p, t)
        assert a[2, 3] == pytest.approx(TWO_PI * 4.5e9, rel=1e-12)
        assert a[3, 2] == pytest.approx(-TWO_PI * 4.5e9, rel=1e-12)

    def test_undamped_flow_is_infinitesimally_symplectic(self, rng,
                                                         undamped_params):
        for t in rng.uniform(0.0, 1e-9, size=8):
            a = drift_matrix(undamped_params, t)
            res = a.T @ OMEGA_SYMPLECTIC + OMEGA_SYMPLECTIC @ a
            assert np.abs(res).max() < 1e-6  # rad/s scale ~1e10

    def test_periodicity(self, default_params):
        tau = default_params.drive_period
        for t in (0.0, 0.21e-10, 0.9e-10):
            a1 = drift_matrix(default_params, t)
            a2 = drift_matrix(default_params, t + tau)
            assert np.abs(a1 - a2).max() <= 1e-5  # sin arg rounding only


class TestDiffusionMatrix:
    def test_zero_occupation(self, default_params):
        p = default_params.replace(temperature=0.0, n_s=0.0)
        g = diffusion_matrix(p)
        expected = np.diag([p.gamma / 4] * 2 + [p.kappa / 4] * 2)
        np.testing.assert_allclose(g, expected, rtol=1e-15)

    def test_room_temperature(self):
        p = nv_cavity_defaults(temperature_k=300.0)
        g = diffusion_matrix(p)
        n_t = p.n_thermal
        assert abs(n_t - 2500.0) < 1.0
        assert g[0, 0] == pytest.approx(p.gamma * (2 * n_t + 1) / 4.0, rel=1e-14)
        assert g[2, 2] == pytest.approx(p.kappa * (2 * p.n_s + 1) / 4.0, rel=1e-14)

    def test_undamped_is_zero(self, undamped_params):
        assert np.all(diffusion_matrix(undamped_params) == 0.0)

    def test_diagonal_psd(self, default_params):
        g = diffusion_matrix(default_params)
        assert np.count_nonzero(g - np.diag(np.diagonal(g))) == 0
        assert np.all(np.diagonal(g) >= 0.0)


class TestVacuumCovariance:
    def test_diagonal_quarter(self):
        c = vacuum_covariance()
        np.testing.assert_array_equal(c.m, np.eye(4) * 0.25)

    def test_symplectic_eigenvalues(self):
        se = vacuum_covariance().symplectic_eigenvalues()
        np.testing.assert_allclose(se, 0.25, rtol=1e-12)

    def test_zero_db(self):
        for v in vacuum_covariance().variances():
            assert squeezing_db(v) == pytest.approx(0.0, abs=1e-12)


class TestCovariance4:
    def test_rejects_asymmetric(self):
        m = np.eye(4)
        m[0, 1] = 1.0
        with pytest.raises(Exception):
            Covariance4(m)

    def test_symmetrizes_roundoff(self):
        m = np.eye(4) * 0.25
        m[0, 1] = 1e-12
        c = Covariance4(m)
        assert c.m[0, 1] == c.m[1, 0]

    def test_thermal_blocks(self):
        c = Covariance4.thermal(2.0, 0.125)
        assert c.m[0, 0] == pytest.approx(1.25)
        assert c.m[2, 2] == pytest.approx(0.3125)
        assert c.is_physical()
