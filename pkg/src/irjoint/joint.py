"""A complete rotational joint: section mechanics plus length and stiffness.

The joint is one inflated-beam segment between two rigid end plates. Its
section defines a soft bending plane (through the enforced-wrinkle
regions, low plateau moment) and a stiff plane (through the tensioned
bands, full pi*P*R^3 plateau). Bending directions are measured in the
section plane by the angle psi from the soft plane's bending axis, so
psi = 0 bends in the soft plane and psi = pi/2 in the stiff plane.

Conventions, in the joint's local frame: the chain axis is +z, the soft
bending axis is +x (so soft-plane motion displaces along y), and the
tensioned bands sit on the +-x sides of the section. A bending direction
psi rotates the bending axis by psi about +z; its tension side is the
in-plane direction psi + pi/2. ``mount_rotation`` rotates the whole joint
(soft plane included) about the chain axis relative to the plates it is
bolted to; it matters only where plate-frame quantities meet joint-frame
ones (tendon moments, chain kinematics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InvariantError
from .section import (
    SectionSpec,
    max_restoring_moment,
    wrinkle_onset_moment,
)

__all__ = [
    "SOFT_PLANE",
    "STIFF_PLANE",
    "BendingDirection",
    "JointSpec",
    "RotationLimitError",
    "directional_max_moment",
    "free_rotation_limit",
    "restoring_moment_curve",
    "rotation_limit",
]

TWO_PI = 2.0 * math.pi


class RotationLimitError(DomainError):
    """Requested rotation beyond the joint's free-rotation limit."""


@dataclass(frozen=True)
class BendingDirection:
    """In-plane bending direction, as the angle psi from the soft axis [rad].

    Normalized into [0, 2*pi) on construction; psi and psi + pi bend about
    the same axis in opposite senses.
    """

    psi: float

    def __post_init__(self):
        if not math.isfinite(self.psi):
            raise InvariantError(f"BendingDirection: psi must be finite, got {self.psi}")
        object.__setattr__(self, "psi", self.psi % TWO_PI)


SOFT_PLANE = BendingDirection(0.0)
STIFF_PLANE = BendingDirection(math.pi / 2)


def free_rotation_limit(wrinkle_strain: float, length: float, radius: float) -> float:
    """Rotation at which the wrinkled side's excess film is used up [rad].

    Small-angle pivot at the tensioned band: the slack length
    strain * length pays out over a lever arm of one radius. Zero strain
    means no enforced wrinkles and no free rotation.
    """
    return wrinkle_strain * length / radius


@dataclass(frozen=True)
class JointSpec:
    """One inflated rotational joint.

    Attributes:
        section: cross-section geometry and pressure
        length: inflated segment length between plates [m]
        wrinkle_strain: surface strain absorbed by the enforced wrinkles,
            in [0, 1); sets the free-rotation limit
        elastic_slope: moment per rotation of the pre-buckling rise
            [N*m/rad]; a fitted parameter, physically proportional to
            pressure
        plateau_onset_angle: rotation at which the restoring moment
            reaches its plateau [rad]; fitted parameter
        mount_rotation: rotation of the soft plane about the chain axis
            relative to the mounting plates [rad]
        rotation_limit_override: explicit free-rotation limit [rad],
            replacing the strain-derived default when set
    """

    section: SectionSpec
    length: float
    elastic_slope: float
    plateau_onset_angle: float
    wrinkle_strain: float = 0.333
    mount_rotation: float = 0.0
    rotation_limit_override: float | None = None

    def __post_init__(self):
        if not self.length > 0.0:
            raise InvariantError(f"JointSpec: length must be > 0, got {self.length}")
        if not 0.0 <= self.wrinkle_strain < 1.0:
            raise InvariantError(
                f"JointSpec: wrinkle strain must lie in [0, 1), got {self.wrinkle_strain}"
            )
        if not self.elastic_slope > 0.0:
            raise InvariantError(
                f"JointSpec: elastic slope must be > 0, got {self.elastic_slope}"
            )
        if self.rotation_limit_override is not None and not self.rotation_limit_override > 0.0:
            raise InvariantError(
                "JointSpec: rotation limit override must be > 0, got "
                f"{self.rotation_limit_override}"
            )
        limit = rotation_limit(self)
        if not 0.0 < self.plateau_onset_angle < limit:
            raise InvariantError(
                f"JointSpec: plateau onset angle must lie in (0, rotation limit "
                f"= {limit}), got {self.plateau_onset_angle}"
            )


def rotation_limit(joint: JointSpec) -> float:
    """Free-rotation limit of the joint [rad]; override wins if set."""
    if joint.rotation_limit_override is not None:
        return joint.rotation_limit_override
    return free_rotation_limit(joint.wrinkle_strain, joint.length, joint.section.radius)


def _band_peak(lo: float, hi: float, shift: float) -> float:
    """Max of -cos(theta - shift) over theta in [lo, hi], exactly.

    The unconstrained maximizer is theta = shift + pi (mod 2*pi); if no
    representative falls inside the arc, the maximum sits at an endpoint.
    """
    for k in (-2, -1, 0, 1):
        cand = shift + math.pi + TWO_PI * k
        if lo <= cand <= hi:
            return 1.0
    return max(-math.cos(lo - shift), -math.cos(hi - shift))


def directional_max_moment(joint: JointSpec, direction: BendingDirection) -> float:
    """Plateau (buckling) moment for bending in an arbitrary direction [N*m].

    pi*P*R^3 times the largest normalized distance of any tensioned-set
    point (both mirrored bands) from the neutral axis, measured toward the
    tension side. A point of the band at angle theta sits at
    (+-sin theta, -cos theta) * R, giving distances -cos(theta -+ psi); the
    maximum over the band has closed form. Reduces to the soft-plane
    plateau at psi = 0 and to pi*P*R^3 at psi = pi/2 whenever the band
    contains theta = pi/2. Measured in the joint's own frame:
    ``mount_rotation`` plays no role here.
    """
    sec = joint.section
    psi = direction.psi
    peak = max(
        _band_peak(sec.theta1, sec.theta2, psi),
        _band_peak(sec.theta1, sec.theta2, -psi),
    )
    return math.pi * sec.pressure * sec.radius ** 3 * peak


def restoring_moment_curve(
    joint: JointSpec, direction: BendingDirection, angle: float
) -> float:
    """Restoring moment at a given rotation about a bending direction [N*m].

    Piecewise law: linear with the joint's elastic slope up to the onset
    moment, a monotone cubic Hermite hardening segment up to the plateau
    onset angle, then a constant plateau at the directional maximum. The
    onset moment is scaled from the soft-plane wrinkle-advance solution
    (onset/maximum is a pressure-independent ratio of the section
    geometry). The Hermite start slope is clamped to three times the
    segment secant where needed to keep the segment monotone.

    Raises:
        RotationLimitError: angle outside [0, rotation_limit].
        DomainError: section whose fully buckled moment is not positive
            (tensioned band entirely below the section midline).
    """
    limit = rotation_limit(joint)
    if not 0.0 <= angle <= limit:
        raise RotationLimitError(
            f"restoring_moment_curve: angle {angle} rad outside [0, {limit}] rad"
        )
    plateau = directional_max_moment(joint, direction)
    max_soft = max_restoring_moment(joint.section)
    if max_soft <= 0.0:
        raise DomainError(
            "restoring_moment_curve: section cannot sustain a positive moment "
            "(band entirely below the midline)"
        )
    # Heavily asymmetric bands can have a negative onset (equilibrium only
    # under reversed moment); the rising law then hardens from zero.
    onset_ratio = max(0.0, wrinkle_onset_moment(joint.section) / max_soft)
    onset_moment = onset_ratio * plateau
    onset_angle = onset_moment / joint.elastic_slope
    plateau_angle = joint.plateau_onset_angle

    if angle >= plateau_angle:
        return plateau
    if onset_angle >= plateau_angle:
        # Elastic slope too shallow to leave room for a hardening segment;
        # degrade to linear-then-plateau.
        return min(joint.elastic_slope * angle, plateau)
    if angle <= onset_angle:
        return joint.elastic_slope * angle

    span = plateau_angle - onset_angle
    secant = (plateau - onset_moment) / span
    slope0 = min(joint.elastic_slope, 3.0 * secant)
    t = (angle - onset_angle) / span
    h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
    h10 = t * (1.0 - t) ** 2
    h01 = t * t * (3.0 - 2.0 * t)
    return onset_moment * h00 + span * slope0 * h10 + plateau * h01
