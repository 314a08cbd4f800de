import numpy as np
import pytest

from paramp_sim import nv_cavity_defaults


@pytest.fixture
def default_params():
    """Damped reference point: 2.5/3.5 GHz modes, 6 GHz drive at 1 GHz
    amplitude, g/2pi = 3.5 MHz, gamma = kappa = 2pi*200 kHz, 10 mK."""
    return nv_cavity_defaults()


@pytest.fixture
def undamped_params():
    return nv_cavity_defaults(gamma_c_hz=0.0, gamma_l_hz=0.0, kappa_hz=0.0,
                              temperature_k=0.0, n_s=0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_psd(rng, scale=1.0):
    """Random physical-ish symmetric PSD 4x4 (not necessarily a quantum
    state; fine for algebraic identities)."""
    a = rng.normal(size=(4, 4))
    return scale * (a @ a.T) + 0.25 * np.eye(4)
