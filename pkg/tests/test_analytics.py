import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

import holeburn as hb

SQRT2 = math.sqrt(2.0)
THETA_DOT = SQRT2 / 2  # rate for the standard delay sqrt(2) * sigma


class TestDressedSpectrum:
    def test_resonant_splitting(self):
        state = hb.dressed_spectrum(0.0, 3.0, 3.0)
        omega0 = 3.0 * SQRT2
        assert state.eps_plus == pytest.approx(omega0 / 2, abs=1e-12)
        assert state.eps_minus == pytest.approx(-omega0 / 2, abs=1e-12)
        assert state.eps0 == 0.0

    def test_three_four_five_energies(self):
        # delta = 4, omega0 = 3: energies (4 +- 5) / 2
        state = hb.dressed_spectrum(4.0, 3.0 / SQRT2, 3.0 / SQRT2)
        assert state.eps_plus == pytest.approx(4.5, abs=1e-12)
        assert state.eps_minus == pytest.approx(-0.5, abs=1e-12)

    def test_dark_state_at_zero_mixing(self):
        state = hb.dressed_spectrum(1.0, 0.0, 2.0)
        assert np.allclose(state.dark, [1.0, 0.0, 0.0], atol=1e-15)

    def test_rejects_zero_amplitudes(self):
        with pytest.raises(ValueError):
            hb.dressed_spectrum(1.0, 0.0, 0.0)

    def test_eigen_identities_random(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            delta = rng.uniform(-50, 50)
            o12 = rng.uniform(0, 30)
            o23 = rng.uniform(1e-3, 30)
            state = hb.dressed_spectrum(delta, o12, o23)
            h = hb.build_hamiltonian(hb.SystemParams(delta=delta), o12, o23).real
            assert np.max(np.abs(h @ state.dark)) < 1e-10
            assert np.max(np.abs(h @ state.plus - state.eps_plus * state.plus)) < 1e-10
            assert np.max(np.abs(h @ state.minus - state.eps_minus * state.minus)) < 1e-10
            basis = np.column_stack([state.dark, state.plus, state.minus])
            assert np.max(np.abs(basis.T @ basis - np.eye(3))) < 1e-12

    def test_bright_energies_bracket_zero(self):
        for delta in (0.0, 5.0, 200.0):
            state = hb.dressed_spectrum(delta, 2.0, 2.0)
            assert state.eps_plus > 0 > state.eps_minus


class TestNonadiabaticCoupling:
    def test_resonant_split_equally(self):
        state = hb.dressed_spectrum(0.0, 2.0, 2.0)
        c_plus, c_minus = hb.nonadiabatic_coupling(state, 0.5)
        assert c_plus == pytest.approx(0.5 / SQRT2, abs=1e-12)
        assert c_minus == pytest.approx(0.5 / SQRT2, abs=1e-12)

    def test_frozen_angle_gives_zero(self):
        state = hb.dressed_spectrum(3.0, 1.0, 2.0)
        assert hb.nonadiabatic_coupling(state, 0.0) == (0.0, 0.0)

    def test_far_detuned_limit(self):
        # the lower bright state carries the whole coupling as delta -> +inf
        state = hb.dressed_spectrum(1e9, 1.0 / SQRT2, 1.0 / SQRT2)
        c_plus, c_minus = hb.nonadiabatic_coupling(state, 0.7)
        assert c_plus < 1e-8
        assert c_minus == pytest.approx(0.7, rel=1e-9)

    @given(delta=st.floats(-100, 100), omega=st.floats(0.01, 50),
           theta_dot=st.floats(-3, 3))
    @settings(max_examples=200, deadline=None)
    def test_couplings_partition_rate(self, delta, omega, theta_dot):
        state = hb.dressed_spectrum(delta, omega, omega)
        c_plus, c_minus = hb.nonadiabatic_coupling(state, theta_dot)
        assert c_plus**2 + c_minus**2 == pytest.approx(theta_dot**2, rel=1e-12,
                                                       abs=1e-15)


class TestAnalyticModel:
    def test_midpoint_values_from_pulses(self):
        model = hb.AnalyticHoleModel.from_pulses(20.0, SQRT2)
        assert model.omega0 == pytest.approx(SQRT2 * math.exp(-0.25) * 20.0, rel=1e-15)
        assert model.theta_dot == pytest.approx(THETA_DOT, rel=1e-15)

    def test_p3_equals_one_at_edge(self):
        model = hb.AnalyticHoleModel.from_pulses(20.0, SQRT2)
        assert hb.analytic_p3(hb.delta_edge(model), model) == pytest.approx(1.0, abs=1e-12)

    def test_p3_at_zero_detuning(self):
        model = hb.AnalyticHoleModel.from_pulses(20.0, SQRT2)
        x = math.pi * model.omega0 / (8 * model.theta_dot)
        expected = 1.0 - np.sinc(x / np.pi) ** 2
        assert hb.analytic_p3(0.0, model) == pytest.approx(expected, rel=1e-12)

    def test_far_detuned_asymptote(self):
        # transfer falls off as pi^2 omega0^4 / (768 theta_dot^2 delta^2)
        model = hb.AnalyticHoleModel(omega0=10.0, theta_dot=0.7)
        delta = 5e4
        asymptote = math.pi**2 * model.omega0**4 / (768 * model.theta_dot**2 * delta**2)
        assert hb.analytic_p3(delta, model) == pytest.approx(asymptote, rel=1e-2)

    @given(delta=st.floats(-500, 500), omega=st.floats(1.0, 100.0),
           theta_dot=st.floats(0.05, 3.0))
    @settings(max_examples=200, deadline=None)
    def test_p3_even_and_bounded(self, delta, omega, theta_dot):
        model = hb.AnalyticHoleModel(omega0=omega, theta_dot=theta_dot)
        value = hb.analytic_p3(delta, model)
        assert 0.0 <= value <= 1.0
        assert value == hb.analytic_p3(-delta, model)

    def test_edge_threshold_value(self):
        model = hb.AnalyticHoleModel(omega0=8.0 * 0.5, theta_dot=0.5)
        assert hb.delta_edge(model) == 0.0

    def test_edge_below_threshold_raises(self):
        model = hb.AnalyticHoleModel(omega0=7.9 * 0.5, theta_dot=0.5)
        with pytest.raises(hb.NoPlateauError, match="no adiabatic plateau"):
            hb.delta_edge(model)

    def test_edge_reference_value(self):
        # omega0 = sqrt(2) e^{-1/4} * 20 ~ 22.03, theta_dot ~ 0.7071
        model = hb.AnalyticHoleModel.from_pulses(20.0, SQRT2)
        assert model.omega0 == pytest.approx(22.03, abs=0.01)
        assert hb.delta_edge(model) == pytest.approx(40.06, abs=0.01)

    def test_doubling_amplitude_quadruples_leading_term(self):
        m1 = hb.AnalyticHoleModel.from_pulses(15.0, SQRT2)
        m2 = hb.AnalyticHoleModel.from_pulses(30.0, SQRT2)
        lead1 = hb.delta_edge(m1) + 4 * m1.theta_dot
        lead2 = hb.delta_edge(m2) + 4 * m2.theta_dot
        assert lead2 == pytest.approx(4 * lead1, rel=1e-12)
        assert hb.delta_edge_leading(m2) == pytest.approx(
            4 * hb.delta_edge_leading(m1), rel=1e-12)

    def test_first_zero_consistency(self):
        # first zero of the transfer deficit sits exactly at the edge
        model = hb.AnalyticHoleModel.from_pulses(20.0, SQRT2)
        edge = hb.delta_edge(model)

        def argument_minus_pi(delta):
            return (math.pi * hb.energy_gap(delta, model.omega0)
                    / (4 * model.theta_dot)) - math.pi

        root = brentq(argument_minus_pi, 0.5 * edge, 2.0 * edge, xtol=1e-12)
        assert abs(root - edge) < 1e-9


class TestLinearThetaOracle:
    def test_adiabatic_limit_monotone_to_one(self):
        omega0 = 8.0
        values = [hb.linear_theta_oracle(0.0, omega0, omega0 / ratio)
                  for ratio in (10, 20, 40, 80)]
        assert all(b >= a - 1e-9 for a, b in zip(values, values[1:]))
        assert values[-1] > 0.999

    def test_matches_formula_at_moderate_coupling(self):
        # frozen: oracle 0.99781 vs formula 1.0 at omega0 = 8 theta_dot
        oracle = hb.linear_theta_oracle(0.0, 8 * THETA_DOT, THETA_DOT)
        model = hb.AnalyticHoleModel(omega0=8 * THETA_DOT, theta_dot=THETA_DOT)
        assert abs(oracle - hb.analytic_p3(0.0, model)) < 0.02
        assert oracle == pytest.approx(0.99781, abs=5e-4)

    def test_near_unity_at_predicted_edge(self):
        model = hb.AnalyticHoleModel(omega0=16 * THETA_DOT, theta_dot=THETA_DOT)
        edge = hb.delta_edge(model)
        oracle = hb.linear_theta_oracle(edge, model.omega0, model.theta_dot)
        assert oracle >= 0.95
        assert oracle == pytest.approx(0.98621, abs=5e-4)

    def test_rejects_invalid_rates(self):
        with pytest.raises(ValueError):
            hb.linear_theta_oracle(0.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            hb.linear_theta_oracle(0.0, 1.0, 0.0)


class TestAdiabaticityMargin:
    def test_margin_shrinks_with_detuning(self):
        model = hb.AnalyticHoleModel.from_pulses(20.0, SQRT2)
        margins = [hb.adiabaticity_margin(d, model) for d in (0.0, 20.0, 80.0)]
        assert margins[0] > margins[1] > margins[2]

    def test_resonant_margin_is_gap_over_rate(self):
        model = hb.AnalyticHoleModel(omega0=10.0, theta_dot=0.5)
        # on resonance the gaps are omega0 / 2 and both couplings theta_dot / sqrt(2)
        assert hb.adiabaticity_margin(0.0, model) == pytest.approx(
            model.omega0 / (SQRT2 * model.theta_dot), rel=1e-12)
