"""Numerical invariants of the section mechanics, swept over grids."""

import math

import numpy as np
import pytest

from irjoint import (
    SectionSpec,
    WrinkleState,
    max_restoring_moment,
    moment_scale_factor,
    oracle_moment_from_integrals,
    solve_wrinkle_boundary,
    stress_profile,
    wrinkle_onset_moment,
)

from conftest import PRESSURE, RADIUS, THICKNESS


def symmetric_section(width, pressure=PRESSURE):
    return SectionSpec.symmetric_band(RADIUS, THICKNESS, pressure, width)


class TestOracleEquivalence:
    def test_random_states_match_closed_form(self):
        rng = np.random.default_rng(42)
        pi_pr3 = math.pi * PRESSURE * RADIUS ** 3
        for _ in range(60):
            theta2 = rng.uniform(0.55 * math.pi, math.pi)
            theta1 = math.pi - theta2
            theta0 = rng.uniform(theta1, theta2 - 0.01)
            section = SectionSpec(RADIUS, THICKNESS, PRESSURE, theta1, theta2)
            closed = moment_scale_factor(theta0, theta2)
            oracle = oracle_moment_from_integrals(
                section, WrinkleState(theta0, 0.0)
            ) / pi_pr3
            assert abs(closed - oracle) / abs(closed) < 1e-6


class TestLimitConsistency:
    def test_scale_factor_approaches_band_edge_limit(self):
        delta = 1e-4
        for theta2 in np.linspace(0.5, math.pi, 12):
            limit = -math.cos(theta2)
            assert abs(moment_scale_factor(theta2 - delta, theta2) - limit) < 1e-3


class TestBandFormulaConsistency:
    def test_symmetric_band_limit_equals_half_width_sine(self):
        for width in np.linspace(0.05, math.pi, 25):
            section = symmetric_section(width)
            expected = math.pi * PRESSURE * RADIUS ** 3 * math.sin(width / 2)
            assert max_restoring_moment(section) == pytest.approx(expected, rel=1e-9)


class TestMonotonicity:
    def test_scale_factor_nondecreasing_in_boundary(self):
        for theta2 in np.linspace(0.6, math.pi, 10):
            for theta1 in (0.0, 0.3 * theta2, 0.7 * theta2):
                # Open at theta2: the exact endpoint is the limit value,
                # covered by the limit-consistency suite.
                grid = np.linspace(theta1, theta2, 80)[:-1]
                values = [moment_scale_factor(t, theta2) for t in grid]
                for a, b in zip(values, values[1:]):
                    assert b >= a - 1e-12


class TestPressureLinearity:
    def test_exact_doubling(self):
        for width in (math.pi / 8, math.pi / 4, math.pi / 2, math.pi):
            base = max_restoring_moment(symmetric_section(width))
            doubled = max_restoring_moment(symmetric_section(width, pressure=2 * PRESSURE))
            assert doubled == 2.0 * base


class TestRoundTripInversion:
    def test_solve_inverts_forward_map(self):
        pi_pr3 = math.pi * PRESSURE * RADIUS ** 3
        for width in (math.pi / 4, math.pi / 2, 0.9 * math.pi):
            section = symmetric_section(width)
            interior = np.linspace(section.theta1, section.theta2, 22)[1:-1]
            for theta0 in interior:
                moment = pi_pr3 * moment_scale_factor(theta0, section.theta2)
                state = solve_wrinkle_boundary(section, moment)
                assert state.theta0 == pytest.approx(theta0, abs=1e-8)


class TestPeakStressForceBalance:
    def test_recovered_stress_balances_pressure_load(self):
        # Independent closure of the force balance: integrate the linear
        # stress profile with the recovered peak and compare against the
        # pressure end load.
        rng = np.random.default_rng(11)
        end_load = PRESSURE * math.pi * RADIUS ** 2
        for _ in range(25):
            width = rng.uniform(0.3, math.pi)
            section = symmetric_section(width)
            lo = wrinkle_onset_moment(section)
            hi = max_restoring_moment(section)
            state = solve_wrinkle_boundary(section, rng.uniform(lo, lo + 0.9 * (hi - lo)))
            theta = np.linspace(state.theta0, section.theta2, 20001)
            sigma = (
                state.peak_stress
                * (np.cos(state.theta0) - np.cos(theta))
                / (1.0 + np.cos(state.theta0))
            )
            recovered = 2.0 * THICKNESS * RADIUS * np.trapezoid(sigma, theta)
            assert recovered == pytest.approx(end_load, rel=1e-7)


class TestStressProfileShape:
    def test_continuous_at_boundary_and_nonnegative(self):
        section = symmetric_section(math.pi / 2)
        state = solve_wrinkle_boundary(
            section,
            0.5 * (wrinkle_onset_moment(section) + max_restoring_moment(section)),
        )
        eps = 1e-9
        below = stress_profile(section, state, state.theta0 - eps)
        at = stress_profile(section, state, state.theta0)
        above = stress_profile(section, state, state.theta0 + eps)
        assert below == 0.0
        assert at == pytest.approx(0.0, abs=1e-6 * state.peak_stress)
        assert above == pytest.approx(0.0, abs=1e-6 * state.peak_stress)
        for theta in np.linspace(state.theta0, section.theta2, 50):
            assert stress_profile(section, state, theta) >= 0.0
