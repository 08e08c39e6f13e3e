import math

import pytest

from irjoint import JointSpec, SectionSpec

# Bench-scale parameters used throughout: 67 mm inflated diameter, 50 um
# film, 6.89 kPa gauge.
RADIUS = 0.0335
THICKNESS = 50e-6
PRESSURE = 6890.0
LENGTH = 0.060
PI_PR3 = math.pi * PRESSURE * RADIUS ** 3


@pytest.fixture
def iso_section():
    return SectionSpec.isotropic(RADIUS, THICKNESS, PRESSURE)


@pytest.fixture
def band_section():
    return SectionSpec.symmetric_band(RADIUS, THICKNESS, PRESSURE, math.pi / 2)


def make_joint(section, mount_rotation=0.0, elastic_slope=2.0, plateau=0.3):
    return JointSpec(
        section=section,
        length=LENGTH,
        elastic_slope=elastic_slope,
        plateau_onset_angle=plateau,
        mount_rotation=mount_rotation,
    )


@pytest.fixture
def narrow_joint():
    return make_joint(SectionSpec.from_tape_width(RADIUS, THICKNESS, PRESSURE, 0.0127))


@pytest.fixture
def wide_joint():
    return make_joint(SectionSpec.from_tape_width(RADIUS, THICKNESS, PRESSURE, 0.0381))


@pytest.fixture
def iso_joint(iso_section):
    return make_joint(iso_section)
