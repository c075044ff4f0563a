import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad
from scipy.linalg import expm

from phonon_designer.dynamics import (
    ModeSet,
    PulseEnvelope,
    WaveState,
    crosstalk_experiment,
    crosstalk_modes,
    evolve,
    evolve_fixed,
    two_level_rabi,
    uniform_ladder,
)
from phonon_designer.exceptions import DomainError, IntegrationError
from phonon_designer.params import effective_min_detuning, mechanical_baseline

G = 1.0


def single(g=G):
    return ModeSet((0.0,), (g,), 0)


class TestRabiOracle:
    def test_resonant_half_period(self):
        assert two_level_rabi(G, 0.0, math.pi / (2 * G)) == pytest.approx(1.0, rel=1e-15)

    def test_off_resonant_hand_value(self):
        # 4/104 * sin^2(sqrt(104) pi/4)
        assert two_level_rabi(G, 10 * G, math.pi / (2 * G)) == pytest.approx(0.0375, abs=1e-4)

    @pytest.mark.parametrize("ratio", [20, 50, 200])
    def test_envelope_is_four_times_perturbative(self, ratio):
        env = 4 * G**2 / (4 * G**2 + (ratio * G) ** 2)
        assert env == pytest.approx(4 * (G / (ratio * G)) ** 2, rel=4 / ratio**2 * 1.01)

    def test_rejects_zero_coupling(self):
        with pytest.raises(DomainError):
            two_level_rabi(0.0, 1.0, 1.0)


class TestGates:
    def test_resonant_swap(self):
        final = evolve(WaveState.mode_excited(1, 0), single(), PulseEnvelope.for_gate("swap", G))
        assert 1 - final.qubit_population() <= 1e-9
        assert abs(final.norm_squared - 1) <= 1e-9

    def test_two_pi_rotation_gives_minus_sign(self):
        start = WaveState.mode_excited(1, 0)
        final = evolve(start, single(), PulseEnvelope.for_gate("phase", G))
        assert (-final.overlap(start)).real >= 1 - 1e-9
        assert abs(final.norm_squared - 1) <= 1e-9

    @pytest.mark.parametrize("shape", ["cosine", "ramped"])
    def test_area_normalized_shapes_still_swap(self, shape):
        final = evolve(WaveState.mode_excited(1, 0), single(), PulseEnvelope.for_gate("swap", G, shape))
        assert 1 - final.qubit_population() <= 1e-9

    def test_isolated_spectator_follows_rabi(self):
        # target channel switched off: e0 <-> g1_spectator is an exact two-level system
        modes = ModeSet((0.0, 10 * G), (0.0, G), 0)
        t_s = math.pi / (2 * G)
        final = evolve(WaveState.qubit_excited(2), modes, PulseEnvelope("rect", t_s))
        assert final.mode_population(1) == pytest.approx(two_level_rabi(G, 10 * G, t_s), abs=1e-6)
        assert final.mode_population(1) == pytest.approx(0.0375, abs=1e-4)

    def test_coupled_target_spectator_below_envelope(self):
        modes = ModeSet((0.0, 10 * G), (G, G), 0)
        final = evolve(WaveState.mode_excited(2, 0), modes, PulseEnvelope.for_gate("swap", G))
        assert final.mode_population(1) <= 4 / 104


class TestIntegrator:
    @pytest.mark.parametrize("m", [1, 3, 8, 20])
    def test_static_matches_expm(self, m):
        modes = uniform_ladder(m, 7.3 * G, G)
        pulse = PulseEnvelope.for_gate("swap", G)
        start = WaveState.mode_excited(m, modes.target_index)
        exact = expm(-1j * modes.hamiltonian() * pulse.duration) @ start.amplitudes
        final = evolve(start, modes, pulse)
        assert np.linalg.norm(final.amplitudes - exact) <= 1e-8

    def test_convergence_order(self):
        modes = uniform_ladder(5, 1.0, 0.1)
        pulse = PulseEnvelope.for_gate("swap", 0.1, "cosine")
        start = WaveState.mode_excited(5, 2)
        ref = evolve_fixed(start, modes, pulse, 100_000).amplitudes
        errs = [np.linalg.norm(evolve_fixed(start, modes, pulse, n).amplitudes - ref) for n in (200, 400, 800)]
        slopes = -np.diff(np.log2(errs))
        assert np.all(np.abs(slopes - 4) < 0.4)

    def test_hermitian(self):
        modes = uniform_ladder(7, 3.0, 0.5).with_channel(1.5, math.sqrt(2) * 0.5)
        h = modes.hamiltonian(0.37)
        assert np.array_equal(h, h.conj().T)

    def test_tolerance_failure_is_reported(self):
        modes = uniform_ladder(5, 50.0, G)
        with pytest.raises(IntegrationError):
            evolve(WaveState.mode_excited(5, 2), modes, PulseEnvelope.for_gate("swap", G, "cosine"), 1e-14, 2**10)

    def test_rejects_unnormalized_or_wrong_dimension(self):
        with pytest.raises(DomainError):
            evolve(WaveState(np.array([1.0, 1.0])), single(), PulseEnvelope.for_gate("swap", G))
        with pytest.raises(DomainError):
            evolve(WaveState.qubit_excited(3), single(), PulseEnvelope.for_gate("swap", G))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(1, 9), st.floats(3.0, 60.0), st.sampled_from(["rect", "cosine", "ramped"]))
    def test_norm_conserved(self, m, spacing, shape):
        modes = uniform_ladder(m, spacing * G, G)
        final = evolve(WaveState.mode_excited(m, modes.target_index), modes, PulseEnvelope.for_gate("swap", G, shape))
        assert abs(final.norm_squared - 1) <= 1e-9


class TestPulses:
    @pytest.mark.parametrize("gate", ["swap", "phase"])
    @pytest.mark.parametrize("shape", ["rect", "cosine", "ramped"])
    def test_area_normalization(self, gate, shape):
        g = 2 * math.pi * 2.5e6
        pulse = PulseEnvelope.for_gate(gate, g, shape)
        area, _ = quad(pulse, 0, pulse.duration, limit=200, epsabs=0, epsrel=1e-13)
        target = math.pi / 2 if gate == "swap" else math.pi
        assert g * area == pytest.approx(target, rel=1e-9)
        assert g * pulse.area() == pytest.approx(target, rel=1e-12)

    @pytest.mark.parametrize("shape", ["rect", "cosine", "ramped"])
    def test_values_in_unit_interval(self, shape):
        pulse = PulseEnvelope.for_gate("swap", G, shape)
        v = pulse(np.linspace(-1, pulse.duration + 1, 2001))
        assert v.min() >= 0 and v.max() <= 1

    def test_invalid(self):
        with pytest.raises(DomainError):
            PulseEnvelope("gauss", 1.0)
        with pytest.raises(DomainError):
            PulseEnvelope("ramped", 1.0, 0.6)


class TestModes:
    def test_ladder(self):
        m = uniform_ladder(5, 2.0, 0.1)
        assert m.detunings == (-4.0, -2.0, 0.0, 2.0, 4.0)
        assert m.target_index == 2 and m.spectators == [0, 1, 3, 4]

    @pytest.mark.parametrize(
        "det, coup, target",
        [((0.0, 0.0), (1.0, 1.0), 0), ((1.0,), (1.0,), 0), ((0.0,), (-1.0,), 0), ((0.0, math.inf), (1, 1), 0)],
    )
    def test_invalid(self, det, coup, target):
        with pytest.raises(DomainError):
            ModeSet(det, coup, target)

    def test_anharmonic_channel(self):
        p = mechanical_baseline(5)
        g = effective_min_detuning(p) / 20
        m = crosstalk_modes(p, g, include_anharmonic=True)
        assert m.n_modes == 6
        assert m.detunings[-1] == effective_min_detuning(p)
        assert m.couplings[-1] == pytest.approx(math.sqrt(2) * g)


class TestCrosstalk:
    p5 = mechanical_baseline(5)
    delta = effective_min_detuning(p5)

    def test_bound_value(self):
        res = crosstalk_experiment(self.p5, self.delta / 20, "rect")
        assert res.analytic_bound == pytest.approx(6.25e-3, rel=1e-12)
        assert 0.25 <= res.numerical_leakage / res.analytic_bound <= 4

    @pytest.mark.parametrize("ratio", [10, 20, 50])
    def test_rect_per_spectator_envelope(self, ratio):
        g = self.delta / ratio
        res = crosstalk_experiment(self.p5, g, "rect")
        modes = crosstalk_modes(self.p5, g)
        for k, pop in zip(modes.spectators, res.spectator_populations):
            d = modes.detunings[k]
            assert pop <= 4 * g**2 / (4 * g**2 + d**2)

    def test_smooth_pulse_suppresses(self):
        g = self.delta / 20
        rect = crosstalk_experiment(self.p5, g, "rect").numerical_leakage
        smooth = crosstalk_experiment(self.p5, g, "cosine").numerical_leakage
        assert smooth <= 0.1 * rect

    def test_quadratic_in_coupling(self):
        gs = self.delta / np.geomspace(20, 200, 5)
        leak = [crosstalk_experiment(self.p5, g, "rect").numerical_leakage for g in gs]
        slope = np.polyfit(np.log(gs), np.log(leak), 1)[0]
        assert slope == pytest.approx(2, abs=0.05)

    def test_needs_spectators(self):
        with pytest.raises(DomainError):
            crosstalk_experiment(mechanical_baseline(2), 1e6)
