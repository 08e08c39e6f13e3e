"""Cross-section mechanics of a partially wrinkled inflated beam.

A thin-film inflated beam carries bending through the axial membrane
tension of its skin. Wrinkled film carries no axial stress, so only the
tensioned band of the circular section resists a tip load. The section is
parameterized by the polar angle theta in [0, pi], measured from the
compression side (theta = 0) to the crown (theta = pi); the tensioned band
[theta1, theta2] describes one half of the section and is mirrored onto
the other half, so a single interval specifies the symmetric layup.

Under a lateral load the wrinkle front advances from theta1 up to a
boundary theta0, the stress profile over the still-tensioned arc
[theta0, theta2] is linear in cos(theta), and axial force balance against
the pressure end load pins the peak stress. Eliminating the peak stress
gives the equilibrium moment as

    M(theta0) = pi * P * R^3 * f(theta0, theta2)

with a dimensionless scale factor f. Everything in this module is a pure
function of immutable inputs: all quantities SI (m, Pa, N*m, rad), moments
reported as signed values about the bending axis with the restoring sense
positive.

Internally the trigonometry is evaluated in crown-relative angles
(pi - theta). This keeps the scale factor exact at the classical
endpoints, e.g. f(0, pi) == 0.5 in floating point, where the direct form
is one ulp low.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantError

__all__ = [
    "LIMIT_SWITCH_TOL",
    "ORACLE_PANELS",
    "MomentRangeError",
    "SectionSpec",
    "WrinkleState",
    "band_width_for_tape_width",
    "max_restoring_moment",
    "moment_scale_factor",
    "oracle_moment_from_integrals",
    "solve_wrinkle_boundary",
    "stiffness_ratio",
    "stress_profile",
    "wrinkle_onset_moment",
]

# Below this wrinkle-to-band gap [rad] the rational form of the scale
# factor is abandoned for its analytic limit -cos(theta2); the numerator
# and denominator both vanish quadratically and cancellation dominates.
LIMIT_SWITCH_TOL = 1.0e-7

# Fixed composite-Simpson panel count for the quadrature oracle. A power
# of two keeps the rule deterministic and well above the 1e4 panels needed
# for ~1e-12 relative truncation error on these smooth integrands.
ORACLE_PANELS = 2 ** 14


class MomentRangeError(DomainError):
    """Applied moment outside the [onset, maximum] equilibrium range."""


@dataclass(frozen=True)
class SectionSpec:
    """Geometry, inflation pressure and tensioned band of one section.

    Attributes:
        radius: inflated beam radius R [m]
        thickness: film thickness [m] (cancels out of moments, needed to
            recover membrane stress)
        pressure: gauge pressure P [Pa]
        theta1: lower edge of the tensioned band [rad]
        theta2: upper edge of the tensioned band [rad]

    The band [theta1, theta2] covers one half of the section; the other
    half mirrors it, which is where the factor 2 in the force and moment
    integrals comes from.
    """

    radius: float
    thickness: float
    pressure: float
    theta1: float
    theta2: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise InvariantError(f"SectionSpec: radius must be > 0, got {self.radius}")
        if not self.thickness > 0.0:
            raise InvariantError(
                f"SectionSpec: thickness must be > 0, got {self.thickness}"
            )
        if not self.pressure > 0.0:
            raise InvariantError(
                f"SectionSpec: pressure must be > 0, got {self.pressure}"
            )
        if not 0.0 <= self.theta1 < self.theta2 <= math.pi:
            raise InvariantError(
                "SectionSpec: band must satisfy 0 <= theta1 < theta2 <= pi, got "
                f"[{self.theta1}, {self.theta2}]"
            )

    @property
    def band_width(self) -> float:
        """Angular width of the tensioned band [rad]."""
        return self.theta2 - self.theta1

    @classmethod
    def symmetric_band(
        cls, radius: float, thickness: float, pressure: float, band_width: float
    ) -> "SectionSpec":
        """Band of the given width centered on theta = pi/2.

        This is the default placement: it is the one for which the fully
        buckled moment reduces to pi*P*R^3 * sin(band_width / 2).
        """
        half = 0.5 * band_width
        return cls(radius, thickness, pressure, math.pi / 2 - half, math.pi / 2 + half)

    @classmethod
    def isotropic(cls, radius: float, thickness: float, pressure: float) -> "SectionSpec":
        """Unmodified tube: the whole half-section carries tension."""
        return cls(radius, thickness, pressure, 0.0, math.pi)

    @classmethod
    def from_tape_width(
        cls, radius: float, thickness: float, pressure: float, tape_width: float
    ) -> "SectionSpec":
        """Symmetric band whose arc length equals the taped strip width."""
        return cls.symmetric_band(
            radius, thickness, pressure, band_width_for_tape_width(tape_width, radius)
        )


@dataclass(frozen=True)
class WrinkleState:
    """Load-induced wrinkle boundary and peak membrane stress.

    Attributes:
        theta0: wrinkle boundary [rad]; film below it is slack
        peak_stress: coefficient of the linear stress profile [Pa]: the
            stress the profile reaches at the crown (theta = pi). It is
            the largest stress actually carried only when the tensioned
            band extends to the crown; otherwise the film maximum sits at
            theta2, below this value.
    """

    theta0: float
    peak_stress: float

    def __post_init__(self):
        if not 0.0 <= self.theta0 <= math.pi:
            raise InvariantError(
                f"WrinkleState: theta0 must lie in [0, pi], got {self.theta0}"
            )
        if self.peak_stress < 0.0:
            raise InvariantError(
                f"WrinkleState: peak stress must be >= 0, got {self.peak_stress}"
            )


def band_width_for_tape_width(tape_width: float, radius: float) -> float:
    """Angular band width subtended by a taped strip of the given arc width."""
    if tape_width <= 0.0 or radius <= 0.0:
        raise DomainError("band_width_for_tape_width: tape width and radius must be > 0")
    width = tape_width / radius
    if width > math.pi:
        raise DomainError(
            f"band_width_for_tape_width: strip of {tape_width} m exceeds the "
            f"half-circumference of a radius-{radius} m tube"
        )
    return width


def _force_balance_integral(phi0: float, phi2: float) -> float:
    """Integral of the unit linear stress profile over the active arc.

    Crown-relative angles: phi = pi - theta, phi0 >= phi2. Equals
    (theta2 - theta0)*cos(theta0) + sin(theta0) - sin(theta2).
    """
    return math.sin(phi0) - math.sin(phi2) - (phi0 - phi2) * math.cos(phi0)


def moment_scale_factor(theta0: float, theta2: float) -> float:
    """Dimensionless equilibrium moment of a partially wrinkled section.

    The moment carried when the wrinkle boundary sits at ``theta0`` with
    the tensioned band ending at ``theta2`` is pi*P*R^3 times this factor:

        f = [sin 2*theta0 + sin 2*theta2 + 2*(theta2 - theta0)
             - 4*cos(theta0)*sin(theta2)]
            / (4*[(theta2 - theta0)*cos(theta0) - sin(theta2) + sin(theta0)])

    Both numerator and denominator vanish as theta0 -> theta2; within
    LIMIT_SWITCH_TOL of that point the analytic limit -cos(theta2) is
    returned instead, so the result is always finite. Between roughly
    1e-7 and 1e-5 rad of separation the rational form loses accuracy to
    cancellation (error ~1e-16 / gap^2); no caller in this package
    evaluates there.

    Raises:
        DomainError: if the ordering 0 <= theta0 <= theta2 <= pi is
            violated, or the band degenerates to a single point at
            theta = 0 or theta = pi.
    """
    if not 0.0 <= theta0 <= theta2 <= math.pi:
        raise DomainError(
            f"moment_scale_factor: need 0 <= theta0 <= theta2 <= pi, got "
            f"theta0={theta0}, theta2={theta2}"
        )
    if theta2 == 0.0 or theta0 == math.pi:
        raise DomainError(
            "moment_scale_factor: band degenerate at a section pole "
            f"(theta0={theta0}, theta2={theta2})"
        )
    phi0 = math.pi - theta0
    phi2 = math.pi - theta2
    if phi0 - phi2 < LIMIT_SWITCH_TOL:
        return math.cos(phi2)
    num = (
        2.0 * (phi0 - phi2)
        - math.sin(2.0 * phi0)
        - math.sin(2.0 * phi2)
        + 4.0 * math.cos(phi0) * math.sin(phi2)
    )
    den = 4.0 * _force_balance_integral(phi0, phi2)
    return num / den


def max_restoring_moment(section: SectionSpec) -> float:
    """Largest moment the section can sustain, at full wrinkle advance [N*m].

    Equals pi*P*R^3 * (-cos theta2): the pressure end load concentrated at
    the highest tensioned point, the theta0 -> theta2 limit of the scale
    factor. For a band symmetric about pi/2 this is
    pi*P*R^3 * sin(band_width/2); an unmodified tube gives pi*P*R^3.
    """
    scale = math.cos(math.pi - section.theta2)  # = -cos(theta2), exact at theta2 = pi
    return math.pi * section.pressure * section.radius ** 3 * scale


def wrinkle_onset_moment(section: SectionSpec) -> float:
    """Moment at which wrinkles start advancing past the enforced band [N*m].

    The scale factor evaluated at theta0 = theta1: the stress at the band's
    lower edge has just reached zero. Never exceeds max_restoring_moment.
    """
    scale = moment_scale_factor(section.theta1, section.theta2)
    return math.pi * section.pressure * section.radius ** 3 * scale


def _peak_stress(section: SectionSpec, theta0: float) -> float:
    """Linear-profile peak stress for a wrinkle boundary at theta0 [Pa].

    Solves the axial force balance (pressure end load vs. membrane
    tension) for the profile coefficient. Diverges as theta0 -> theta2:
    the load concentrates onto a vanishing arc.
    """
    phi0 = math.pi - theta0
    phi2 = math.pi - section.theta2
    balance = _force_balance_integral(phi0, phi2)
    one_plus_c0 = 1.0 - math.cos(phi0)  # = 1 + cos(theta0)
    if balance <= 0.0:
        return math.inf
    return (
        section.pressure * math.pi * section.radius * one_plus_c0
        / (2.0 * section.thickness * balance)
    )


def solve_wrinkle_boundary(section: SectionSpec, applied_moment: float) -> WrinkleState:
    """Invert the moment law: find the wrinkle boundary carrying a moment.

    Bisection over [theta1, theta2]; the scale factor is monotone
    nondecreasing there, which the property suite checks numerically.
    Converges until the bracket is below 1e-13 rad or the moment matches
    to 1e-10 relative.

    Raises:
        MomentRangeError: applied moment below the wrinkle onset (the
            section is not wrinkling beyond the enforced band) or above
            the maximum restoring moment (no equilibrium; the beam
            buckles fully). The message names the violated bound.
    """
    lo_m = wrinkle_onset_moment(section)
    hi_m = max_restoring_moment(section)
    slack = 1.0e-12 * (abs(lo_m) + abs(hi_m))
    if applied_moment < lo_m - slack:
        raise MomentRangeError(
            f"solve_wrinkle_boundary: applied moment {applied_moment} N*m is below "
            f"the wrinkle onset moment {lo_m} N*m"
        )
    if applied_moment > hi_m + slack:
        raise MomentRangeError(
            f"solve_wrinkle_boundary: applied moment {applied_moment} N*m exceeds "
            f"the maximum restoring moment {hi_m} N*m"
        )
    target = min(max(applied_moment, lo_m), hi_m)
    scale = math.pi * section.pressure * section.radius ** 3
    goal = target / scale

    lo, hi = section.theta1, section.theta2
    rtol = 1.0e-10 * max(abs(goal), 1.0e-300)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = moment_scale_factor(mid, section.theta2)
        if abs(val - goal) <= rtol:
            lo = hi = mid
            break
        if val < goal:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1.0e-13:
            break
    theta0 = 0.5 * (lo + hi)
    return WrinkleState(theta0=theta0, peak_stress=_peak_stress(section, theta0))


def stress_profile(section: SectionSpec, state: WrinkleState, theta: float) -> float:
    """Axial membrane stress at a section location [Pa].

    Linear in cos(theta) over the active arc [theta0, theta2]:

        sigma(theta) = peak * (cos theta0 - cos theta) / (1 + cos theta0)

    and exactly zero over the wrinkled arcs [0, theta0) and (theta2, pi]:
    slack film carries no axial tension.

    Raises:
        DomainError: theta outside [0, pi].
    """
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"stress_profile: theta must lie in [0, pi], got {theta}")
    if theta < state.theta0 or theta > section.theta2:
        return 0.0
    denom = 1.0 + math.cos(state.theta0)
    if denom <= 0.0:
        # Boundary at the crown itself: the active arc is the single point
        # theta = pi, which carries the peak stress.
        return state.peak_stress if theta == state.theta0 else 0.0
    return state.peak_stress * (math.cos(state.theta0) - math.cos(theta)) / denom


def oracle_moment_from_integrals(section: SectionSpec, state: WrinkleState) -> float:
    """Brute-force moment from the raw force and moment integrals [N*m].

    Deliberately independent of the closed-form scale factor: composite
    Simpson with ORACLE_PANELS panels over the active arc
    [theta0, theta2] first solves the peak stress from the axial force
    balance against the pressure end load, then integrates the moment of
    the resulting stress distribution. Only ``state.theta0`` is read; the
    stored peak stress is ignored on purpose.

    Raises:
        DomainError: active arc shorter than 1e-9 rad (the quadrature is
            ill-posed there) or boundary ordering violated.
    """
    theta0, theta2 = state.theta0, section.theta2
    if not section.theta1 <= theta0 <= theta2:
        raise DomainError(
            f"oracle_moment_from_integrals: theta0={theta0} outside the band "
            f"[{section.theta1}, {section.theta2}]"
        )
    if theta2 - theta0 < 1.0e-9:
        raise DomainError(
            "oracle_moment_from_integrals: active arc too short for quadrature "
            f"({theta2 - theta0} rad)"
        )
    one_plus_c0 = 1.0 + math.cos(theta0)
    if one_plus_c0 <= 0.0:
        raise DomainError("oracle_moment_from_integrals: wrinkle boundary at the crown")

    n = ORACLE_PANELS
    theta = np.linspace(theta0, theta2, n + 1)
    weights = np.ones(n + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    h = (theta2 - theta0) / n

    shape = (math.cos(theta0) - np.cos(theta)) / one_plus_c0
    shape_integral = h / 3.0 * float(weights @ shape)
    # Axial balance: P*pi*R^2 = 2*t*R * integral(sigma dtheta)
    peak = (
        section.pressure * math.pi * section.radius ** 2
        / (2.0 * section.thickness * section.radius * shape_integral)
    )
    sigma = peak * shape
    moment_integral = h / 3.0 * float(weights @ (sigma * np.cos(theta)))
    # Tip-load moment: T*x = -2 * t * R^2 * integral(sigma cos(theta) dtheta)
    return -2.0 * section.thickness * section.radius ** 2 * moment_integral


def stiffness_ratio(band_width: float) -> float:
    """Soft-plane over stiff-plane maximum-moment ratio, sin(width/2).

    Raises:
        DomainError: width outside [0, pi].
    """
    if not 0.0 <= band_width <= math.pi:
        raise DomainError(
            f"stiffness_ratio: band width must lie in [0, pi], got {band_width}"
        )
    return math.sin(0.5 * band_width)
