import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from paramp_sim import (EnvelopeConfig, ParameterError, coupling_coefficient,
                        envelope_F, nv_cavity_defaults,
                        resonance_frequencies, resonance_strength)
from paramp_sim.constants import TWO_PI


def envelope_quadrature_oracle(x, y, t, omega):
    """i * integral_0^t exp(i x u - i (y/omega) cos(omega u)) du, evaluated
    piecewise per drive period to tame the oscillatory integrand."""
    period = TWO_PI / omega
    edges = list(np.arange(0.0, t, period)) + [t]
    re = im = 0.0
    for a, b in zip(edges, edges[1:]):
        re += quad(lambda u: math.cos(x * u - (y / omega) * math.cos(omega * u)),
                   a, b, epsabs=1e-15, epsrel=1e-13, limit=200)[0]
        im += quad(lambda u: math.sin(x * u - (y / omega) * math.cos(omega * u)),
                   a, b, epsabs=1e-15, epsrel=1e-13, limit=200)[0]
    return 1j * (re + 1j * im)


class TestResonanceFrequencies:
    def test_reference_harmonics(self):
        spec = resonance_frequencies(TWO_PI * 2.5e9, TWO_PI * 3.5e9, 3)
        freqs = {(b, round(f / TWO_PI / 1e9, 9)) for _, f, b in spec.harmonics}
        assert ("sum", 6.0) in freqs and ("sum", 3.0) in freqs \
            and ("sum", 2.0) in freqs
        assert ("difference", 1.0) in freqs and ("difference", 0.5) in freqs
        got_third = [f for n, f, b in spec.harmonics
                     if b == "difference" and n == 3]
        assert got_third[0] == TWO_PI * 1e9 / 3  # exact division, no drift

    def test_degenerate_modes_have_no_difference_branch(self):
        spec = resonance_frequencies(TWO_PI * 3e9, TWO_PI * 3e9, 4)
        assert all(b == "sum" for _, _, b in spec.harmonics)

    def test_n_max_one(self):
        spec = resonance_frequencies(TWO_PI * 2.5e9, TWO_PI * 3.5e9, 1)
        assert [(n, b) for n, _, b in spec.harmonics] \
            == [(1, "sum"), (1, "difference")]

    def test_descending_and_exact_closure(self):
        spec = resonance_frequencies(TWO_PI * 2.5e9, TWO_PI * 3.5e9, 5)
        freqs = [f for _, f, _ in spec.harmonics]
        assert all(a > b for a, b in zip(freqs, freqs[1:]))
        for n, f, branch in spec.harmonics:
            base = spec.sigma if branch == "sum" else abs(spec.delta)
            assert f == base / n  # bitwise: computed by exact division

    def test_collision_deduplicated(self):
        # sigma/6 coincides exactly with |delta|/1 for the 2.5/3.5 split
        spec = resonance_frequencies(TWO_PI * 2.5e9, TWO_PI * 3.5e9, 6)
        at_1ghz = [h for h in spec.harmonics if h[1] == TWO_PI * 1e9]
        assert len(at_1ghz) == 1
        assert at_1ghz[0][0] == 1  # smallest n kept


class TestEnvelope:
    def test_zero_argument_reduces_to_single_term(self):
        x, t, w = TWO_PI * 1.3e9, 0.7e-9, TWO_PI * 6e9
        got = envelope_F(x, 0.0, t, w)
        expected = (cmath.exp(1j * x * t) - 1.0) / x
        assert got == pytest.approx(expected, rel=1e-12)

    def test_double_resonance_at_zero(self):
        w = TWO_PI * 6e9
        assert envelope_F(0.0, 0.0, 0.9e-9, w) == pytest.approx(1j * 0.9e-9)

    def test_zero_time_is_exactly_zero(self):
        assert envelope_F(TWO_PI * 1e9, TWO_PI * 0.5e9, 0.0, TWO_PI * 6e9) == 0.0

    def test_resonant_branch_continuity(self):
        w = TWO_PI * 6e9
        y, t = TWO_PI * 1e9, 2e-9
        exact = envelope_F(-w, y, t, w)
        prev_err = None
        for eps in (1e-3, 1e-6, 1e-9):
            approx = envelope_F(-w * (1.0 - eps), y, t, w)
            err = abs(approx - exact)
            if prev_err is not None:
                assert err < prev_err
            prev_err = err
        assert prev_err / abs(exact) < 1e-6

    @pytest.mark.parametrize("x_hz,y_hz,t", [
        (1.3e9, -1.0e9, 3.7e-10),
        (-6.0e9, 0.8e9, 1.0e-9),
        (2.0e9, 2.5e9, 5.0e-10),
    ])
    def test_matches_quadrature_oracle(self, x_hz, y_hz, t):
        w = TWO_PI * 6e9
        x, y = TWO_PI * x_hz, TWO_PI * y_hz
        series = envelope_F(x, y, t, w)
        oracle = envelope_quadrature_oracle(x, y, t, w)
        assert abs(series - oracle) <= 1e-9 * max(abs(oracle), t)

    def test_truncation_convergence(self):
        w = TWO_PI * 6e9
        x, y, t = TWO_PI * 1.7e9, TWO_PI * 6e9, 1.3e-9  # |y/omega| = 1
        base = envelope_F(x, y, t, w, EnvelopeConfig(truncation=41))
        doubled = envelope_F(x, y, t, w, EnvelopeConfig(truncation=82))
        assert abs(base - doubled) < 1e-10 * abs(doubled)

    def test_truncation_validation(self):
        w = TWO_PI * 6e9
        with pytest.raises(ParameterError):
            envelope_F(0.0, TWO_PI * 6e9, 1e-9, w, EnvelopeConfig(truncation=5))


class TestCouplingCoefficient:
    def test_top_of_ladder(self):
        assert coupling_coefficient(10, 5.0) == 0.0

    def test_ground_state_element(self):
        assert coupling_coefficient(10, -5.0) == pytest.approx(math.sqrt(10))

    def test_two_spin_midpoint(self):
        # angular momentum ladder: <j, m+1|J+|j, m> with j = 1, m = 0
        j, m = 1.0, 0.0
        expected = math.sqrt(j * (j + 1) - m * (m + 1))
        assert coupling_coefficient(2, 0.0) == pytest.approx(expected)
        assert expected == pytest.approx(math.sqrt(2))

    @pytest.mark.parametrize("n,s", [(4, 2.3), (4, 3.0), (4, -2.5), (3, 0.0)])
    def test_rejects_off_ladder(self, n, s):
        with pytest.raises(ParameterError):
            coupling_coefficient(n, s)


class TestResonanceStrength:
    def test_resonant_linear_growth(self):
        p = nv_cavity_defaults()  # drive exactly at the sum frequency
        ts = np.array([0.5e-9, 1e-9, 2e-9, 4e-9, 8e-9])
        mags = np.array([abs(resonance_strength(p, t)[0]) for t in ts])
        ratio = mags / ts
        assert ratio.std() / ratio.mean() < 0.05

    def test_off_resonance_bounded(self):
        # non-commensurate probe times (round multiples of every period
        # would sit at phase revivals where the envelope returns to zero)
        p = nv_cavity_defaults(omega_drive_hz=5.37e9)
        ts = (1.3e-9, 1.07e-8, 2.31e-7, 3.637e-6)
        mags = [max(abs(f) for f in resonance_strength(p, t)) for t in ts]
        assert max(mags) < 100.0 * min(mags)

    def test_zero_amplitude_reduces_componentwise(self):
        p = nv_cavity_defaults(lambda_hz=0.0)
        t = 0.8e-9
        got = resonance_strength(p, t)
        for val, x in zip(got, (-p.sigma, -p.delta, p.delta, p.sigma)):
            expected = (cmath.exp(1j * x * t) - 1.0) / x if x != 0.0 else 1j * t
            assert val == pytest.approx(expected, rel=1e-10)
