"""Plateau extraction and pressure-scaling fits."""

import math

import numpy as np
import pytest

from irjoint import (
    SOFT_PLANE,
    DomainError,
    InvariantError,
    MeasuredCurve,
    SectionSpec,
    directional_max_moment,
    extract_plateau,
    fit_pressure_scaling,
    restoring_moment_curve,
    rotation_limit,
)
from irjoint.fitting import InsufficientSpanError, TooFewSamplesError

from conftest import PRESSURE, RADIUS, THICKNESS, make_joint

LEVER_ARM = 0.080


def synthetic_curve(pressure=PRESSURE, width=math.pi / 4, samples=80):
    """Model moment-rotation curve recast as a force-displacement record."""
    section = SectionSpec.symmetric_band(RADIUS, THICKNESS, pressure, width)
    joint = make_joint(section, elastic_slope=2.0 * pressure / PRESSURE)
    limit = rotation_limit(joint)
    angles = np.linspace(0.0, limit, samples)
    moments = np.array(
        [restoring_moment_curve(joint, SOFT_PLANE, a) for a in angles]
    )
    displacements = 1e-4 + angles * LEVER_ARM
    return joint, MeasuredCurve(
        displacements=tuple(displacements),
        forces=tuple(moments / LEVER_ARM),
        lever_arm=LEVER_ARM,
    )


class TestExtractPlateau:
    def test_exactly_flat_tail_recovered(self):
        x = np.linspace(0.0, 1.0, 40)
        m0 = 0.42
        moments = np.where(x < 0.5, x * 2 * m0, m0)
        curve = MeasuredCurve(tuple(x + 0.01), tuple(moments / LEVER_ARM), LEVER_ARM)
        estimate = extract_plateau(curve)
        assert estimate.moment == pytest.approx(m0, rel=1e-12)
        assert not estimate.low_confidence

    def test_round_trip_against_joint_model(self):
        joint, curve = synthetic_curve()
        estimate = extract_plateau(curve)
        expected = directional_max_moment(joint, SOFT_PLANE)
        assert estimate.moment == pytest.approx(expected, rel=0.01)
        assert not estimate.low_confidence

    def test_monotone_ramp_is_flagged(self):
        x = np.linspace(0.0, 1.0, 30)
        curve = MeasuredCurve(tuple(x + 0.01), tuple(2.0 * x + 0.1), LEVER_ARM)
        estimate = extract_plateau(curve)
        assert estimate.low_confidence
        assert math.isfinite(estimate.moment)

    def test_too_few_samples(self):
        curve = MeasuredCurve((0.0, 0.1, 0.2), (1.0, 1.0, 1.0), LEVER_ARM)
        with pytest.raises(TooFewSamplesError):
            extract_plateau(curve)

    def test_window_fraction_domain(self):
        _, curve = synthetic_curve()
        with pytest.raises(DomainError):
            extract_plateau(curve, window_fraction=0.0)
        with pytest.raises(DomainError):
            extract_plateau(curve, window_fraction=0.6)


class TestFitPressureScaling:
    def test_recovers_model_slope_and_zero_intercept(self):
        width = math.pi / 4
        pressures = (6890.0, 13800.0, 27600.0)
        pairs = [(p, synthetic_curve(pressure=p, width=width)[1]) for p in pressures]
        fit = fit_pressure_scaling(pairs)
        expected_slope = math.pi * RADIUS ** 3 * math.sin(width / 2)
        assert fit.slope == pytest.approx(expected_slope, rel=1e-6)
        assert abs(fit.intercept) < 1e-6 * expected_slope * max(pressures)

    def test_doubled_pressure_doubles_plateaus(self):
        _, low = synthetic_curve(pressure=PRESSURE)
        _, high = synthetic_curve(pressure=2 * PRESSURE)
        m_low = extract_plateau(low).moment
        m_high = extract_plateau(high).moment
        assert m_high == pytest.approx(2 * m_low, rel=1e-9)

    def test_all_equal_pressures_rejected(self):
        _, curve = synthetic_curve()
        with pytest.raises(InsufficientSpanError):
            fit_pressure_scaling([(PRESSURE, curve)] * 3)

    def test_too_few_pressures_rejected(self):
        _, curve = synthetic_curve()
        with pytest.raises(InsufficientSpanError):
            fit_pressure_scaling([(PRESSURE, curve), (3 * PRESSURE, curve)])


class TestMeasuredCurveValidation:
    def test_strictly_increasing_displacements(self):
        with pytest.raises(InvariantError):
            MeasuredCurve((0.0, 0.0, 0.1), (1.0, 1.0, 1.0), LEVER_ARM)

    def test_positive_lever_arm(self):
        with pytest.raises(InvariantError):
            MeasuredCurve((0.0, 0.1), (1.0, 1.0), 0.0)

    def test_length_mismatch(self):
        with pytest.raises(InvariantError):
            MeasuredCurve((0.0, 0.1), (1.0,), LEVER_ARM)
