"""Tendon routing, moment arms and buckle-tension thresholds.

A single tendon runs in a straight line from an anchor on the joint's top
plate to an anchor on its bottom plate (internal routing across a short
segment; no membrane contact). Pulling with tension T loads the top plate
with a force T along that line, whose moment about the base-section
center decides if and where the joint buckles: the joint gives way in the
bending direction that first exhausts its directional plateau moment.

Anchors are given in plate coordinates: x/y in the plate plane, z along
the chain axis, the bottom plate at z = 0. The joint's soft plane sits at
``mount_rotation`` from the plate x axis (see joint module conventions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InvariantError
from .joint import BendingDirection, JointSpec, directional_max_moment

__all__ = [
    "BuckleThreshold",
    "DegenerateRouteError",
    "SweepEntry",
    "TendonRoute",
    "buckle_threshold",
    "routing_sweep",
    "unit_tension_moment",
]

# Direction search granularity: coarse grid step; each local minimum of
# the grid is then refined by golden section.
_GRID_STEP = math.radians(1.0)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class DegenerateRouteError(DomainError):
    """Tendon anchors coincide; the line of action is undefined."""


@dataclass(frozen=True)
class TendonRoute:
    """Straight tendon segment through one joint.

    Attributes:
        top_anchor: (x, y, z) on the top plate [m]; z is the plate height
            above the base section
        bottom_anchor: (x, y, z) on the bottom plate [m]; z normally 0
    """

    top_anchor: tuple[float, float, float]
    bottom_anchor: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "top_anchor", tuple(float(c) for c in self.top_anchor))
        object.__setattr__(
            self, "bottom_anchor", tuple(float(c) for c in self.bottom_anchor)
        )
        if len(self.top_anchor) != 3 or len(self.bottom_anchor) != 3:
            raise InvariantError("TendonRoute: anchors must be 3-vectors")

    @classmethod
    def between_plates(
        cls,
        top_xy: tuple[float, float],
        bottom_xy: tuple[float, float],
        plate_height: float,
    ) -> "TendonRoute":
        return cls(
            (top_xy[0], top_xy[1], plate_height), (bottom_xy[0], bottom_xy[1], 0.0)
        )

    @classmethod
    def on_circles(
        cls,
        top_angle: float,
        bottom_angle: float,
        top_radius: float,
        bottom_radius: float,
        plate_height: float,
    ) -> "TendonRoute":
        """Anchors on concentric circles, the servo-arm parameterization."""
        return cls.between_plates(
            (top_radius * math.cos(top_angle), top_radius * math.sin(top_angle)),
            (bottom_radius * math.cos(bottom_angle), bottom_radius * math.sin(bottom_angle)),
            plate_height,
        )


@dataclass(frozen=True)
class BuckleThreshold:
    """Minimum tension that buckles a joint, and the resulting direction.

    ``reachable`` is False (with infinite tension and direction None) for
    routes whose line of action passes through the section center: no
    tension can buckle the joint through them.
    """

    tension: float
    direction: BendingDirection | None
    reachable: bool = True

    def __post_init__(self):
        if self.reachable and not self.tension > 0.0:
            raise InvariantError(
                f"BuckleThreshold: reachable threshold must be > 0, got {self.tension}"
            )


@dataclass(frozen=True)
class SweepEntry:
    """One routing-sweep evaluation."""

    top_angle: float
    bottom_angle: float
    threshold: BuckleThreshold


def _validate_route(joint: JointSpec, route: TendonRoute) -> None:
    radius = joint.section.radius
    slack = 1.0 + 1.0e-9
    for name, anchor in (("top", route.top_anchor), ("bottom", route.bottom_anchor)):
        in_plane = math.hypot(anchor[0], anchor[1])
        if in_plane > radius * slack:
            raise InvariantError(
                f"TendonRoute: {name} anchor at in-plane radius {in_plane} m lies "
                f"outside the membrane (radius {radius} m)"
            )


def unit_tension_moment(joint: JointSpec, route: TendonRoute) -> np.ndarray:
    """Moment per unit tension about the base-section center [m].

    Components about the joint's soft and stiff bending axes, in that
    order. The tendon applies a unit force at the top anchor, directed at
    the bottom anchor; the moment is taken about the origin and the
    in-plane part is rotated from plate axes into the joint frame by
    ``-mount_rotation``. The axial (torsion) component is discarded.

    Raises:
        DegenerateRouteError: coincident anchors.
        InvariantError: anchor outside the membrane radius.
    """
    _validate_route(joint, route)
    top = np.asarray(route.top_anchor, dtype=float)
    bottom = np.asarray(route.bottom_anchor, dtype=float)
    span = bottom - top
    length = float(np.linalg.norm(span))
    if length < 1.0e-12:
        raise DegenerateRouteError(
            f"unit_tension_moment: coincident anchors {route.top_anchor}"
        )
    moment = np.cross(top, span / length)
    rho = joint.mount_rotation
    cos_r, sin_r = math.cos(rho), math.sin(rho)
    return np.array(
        [
            cos_r * moment[0] + sin_r * moment[1],
            -sin_r * moment[0] + cos_r * moment[1],
        ]
    )


def _tension_at(joint: JointSpec, m_soft: float, m_stiff: float, psi: float) -> float:
    """Tension needed to reach the plateau when bending toward psi [N]."""
    drive = m_soft * math.cos(psi) + m_stiff * math.sin(psi)
    if drive <= 0.0:
        return math.inf
    return directional_max_moment(joint, BendingDirection(psi)) / drive


def _golden_refine(func, a: float, b: float) -> tuple[float, float]:
    """Golden-section minimum of a unimodal function on [a, b]."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = func(c), func(d)
    while b - a > 1.0e-12:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = func(d)
    mid = 0.5 * (a + b)
    return mid, func(mid)


def buckle_threshold(joint: JointSpec, route: TendonRoute) -> BuckleThreshold:
    """Lowest tension at which the joint buckles, and in which direction.

    Minimizes plateau(psi) / drive(psi) over bending directions, where
    drive is the component of the unit-tension moment about the psi axis.
    Searched on a 1-degree grid over the half-circle that the route can
    drive; every local minimum of the grid (the objective is piecewise
    smooth with a handful of basins) is refined by golden section and the
    best refined point wins. Routes with no in-plane moment are reported
    unreachable.

    Raises:
        DomainError: joint whose plateau is not positive toward some
            drivable direction (it would buckle at zero tension).
    """
    m = unit_tension_moment(joint, route)
    m_soft, m_stiff = float(m[0]), float(m[1])
    magnitude = math.hypot(m_soft, m_stiff)
    if magnitude < 1.0e-15:
        return BuckleThreshold(tension=math.inf, direction=None, reachable=False)

    def objective(psi: float) -> float:
        return _tension_at(joint, m_soft, m_stiff, psi)

    psi_m = math.atan2(m_stiff, m_soft)
    half = math.pi / 2 - 0.5 * _GRID_STEP
    count = int(2.0 * half / _GRID_STEP) + 1
    grid = [psi_m - half + i * _GRID_STEP for i in range(count)]
    values = [objective(p) for p in grid]

    best = min(range(count), key=lambda i: values[i])
    psi_star, tension = grid[best], values[best]
    for i, value in enumerate(values):
        left = values[i - 1] if i > 0 else math.inf
        right = values[i + 1] if i + 1 < count else math.inf
        if value <= left and value <= right and math.isfinite(value):
            lo = grid[max(i - 1, 0)]
            hi = grid[min(i + 1, count - 1)]
            refined_psi, refined_val = _golden_refine(objective, lo, hi)
            if refined_val < tension:
                psi_star, tension = refined_psi, refined_val

    if not math.isfinite(tension):
        return BuckleThreshold(tension=math.inf, direction=None, reachable=False)
    if tension <= 0.0:
        raise DomainError(
            "buckle_threshold: joint buckles at zero tension (nonpositive plateau "
            "moment toward a drivable direction)"
        )
    return BuckleThreshold(tension=tension, direction=BendingDirection(psi_star))


def routing_sweep(
    joint: JointSpec,
    top_angles: Sequence[float],
    bottom_angles: Sequence[float],
    *,
    anchor_radius: float,
    top_radius: float | None = None,
    bottom_radius: float | None = None,
    plate_height: float | None = None,
) -> list[SweepEntry]:
    """Thresholds over the Cartesian grid of circular anchor placements.

    Anchors sit on circles of ``anchor_radius`` (overridable per plate) at
    each given angle; the plate height defaults to the joint length. Rows
    are emitted in row-major (top angle outer, bottom angle inner) order.
    Entries are independent of one another: evaluating them concurrently
    is safe and must produce this same ordering.

    Raises:
        DomainError: empty angle grid.
    """
    if len(top_angles) == 0 or len(bottom_angles) == 0:
        raise DomainError("routing_sweep: angle grids must be nonempty")
    r_top = anchor_radius if top_radius is None else top_radius
    r_bot = anchor_radius if bottom_radius is None else bottom_radius
    height = joint.length if plate_height is None else plate_height
    entries = []
    for alpha_t in top_angles:
        for alpha_b in bottom_angles:
            route = TendonRoute.on_circles(alpha_t, alpha_b, r_top, r_bot, height)
            entries.append(
                SweepEntry(
                    top_angle=float(alpha_t),
                    bottom_angle=float(alpha_b),
                    threshold=buckle_threshold(joint, route),
                )
            )
    return entries
