"""Quasi-static simulation of serially connected joints on one tendon.

Units stack along the chain axis, separated by rigid connector plates;
the tendon runs piecewise-straight between consecutive plate orifices, so
each unit feels only the pull of its own segment (for a frictionless
tendon the redirection forces at intermediate plates telescope away).
As the tension ramps up, the unbuckled unit with the lowest buckle
threshold gives way next and snaps to its free-rotation limit in its
predicted direction: a rigid-plastic idealization of the plateau law.

Kinematics are rigid-link: each unit translates its frame by its length
along the local axis with a lumped revolute rotation at mid-length, the
bending axis rotated by the unit's mount rotation plus the bending
direction. Frames are reported base-to-tip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np

from .errors import DomainError, InvariantError
from .joint import BendingDirection, JointSpec, RotationLimitError, rotation_limit
from .tendon import BuckleThreshold, TendonRoute, buckle_threshold

__all__ = [
    "BuckleEvent",
    "ChainSpec",
    "Pose",
    "SequenceReport",
    "UnreachedUnit",
    "forward_kinematics",
    "grasp_energy",
    "simulate_ramp",
    "tendon_path_length",
]

SimulationMode = Literal["independent", "recompute"]

# Two thresholds within this relative gap count as tied; ties are flagged
# in the report and broken toward the lowest unit index.
_TIE_RTOL = 1.0e-12


@dataclass(frozen=True)
class Pose:
    """Rigid frame as position plus unit quaternion (w, x, y, z)."""

    position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    quaternion: tuple[float, float, float, float] = (1.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "position", tuple(float(c) for c in self.position))
        object.__setattr__(self, "quaternion", tuple(float(c) for c in self.quaternion))
        if len(self.position) != 3 or len(self.quaternion) != 4:
            raise InvariantError("Pose: position must be a 3-vector, quaternion a 4-vector")
        norm = math.sqrt(sum(c * c for c in self.quaternion))
        if abs(norm - 1.0) > 1.0e-9:
            raise InvariantError(f"Pose: quaternion norm {norm} is not 1")

    def matrix(self) -> np.ndarray:
        w, x, y, z = self.quaternion
        rot = np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
                [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
                [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
            ]
        )
        mat = np.eye(4)
        mat[:3, :3] = rot
        mat[:3, 3] = self.position
        return mat

    @classmethod
    def from_matrix(cls, mat: np.ndarray) -> "Pose":
        rot = mat[:3, :3]
        # Shepperd's method, largest pivot first; sign fixed so w >= 0.
        trace = float(rot[0, 0] + rot[1, 1] + rot[2, 2])
        if trace > 0.0:
            s = math.sqrt(trace + 1.0) * 2.0
            quat = [
                0.25 * s,
                float(rot[2, 1] - rot[1, 2]) / s,
                float(rot[0, 2] - rot[2, 0]) / s,
                float(rot[1, 0] - rot[0, 1]) / s,
            ]
        else:
            i = int(np.argmax([rot[0, 0], rot[1, 1], rot[2, 2]]))
            j, k = (i + 1) % 3, (i + 2) % 3
            s = math.sqrt(max(1.0 + rot[i, i] - rot[j, j] - rot[k, k], 0.0)) * 2.0
            quat = [0.0, 0.0, 0.0, 0.0]
            quat[0] = float(rot[k, j] - rot[j, k]) / s
            quat[i + 1] = 0.25 * s
            quat[j + 1] = float(rot[j, i] + rot[i, j]) / s
            quat[k + 1] = float(rot[k, i] + rot[i, k]) / s
        if quat[0] < 0.0 or (
            quat[0] == 0.0 and next((c for c in quat[1:] if c != 0.0), 1.0) < 0.0
        ):
            quat = [-c for c in quat]
        norm = math.sqrt(sum(c * c for c in quat))
        quat = [c / norm for c in quat]
        return cls(position=tuple(float(c) for c in mat[:3, 3]), quaternion=tuple(quat))


IDENTITY_POSE = Pose()


@dataclass(frozen=True)
class ChainSpec:
    """Serially connected units with their per-unit tendon segments.

    Routes are expressed in each unit's plate coordinates (bottom plate at
    z = 0); anchors on shared plates are simply repeated in the two
    adjoining units' routes.
    """

    units: tuple[JointSpec, ...]
    routes: tuple[TendonRoute, ...]
    base_frame: Pose = IDENTITY_POSE

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        object.__setattr__(self, "routes", tuple(self.routes))
        if len(self.units) < 1:
            raise InvariantError("ChainSpec: need at least one unit")
        if len(self.routes) != len(self.units):
            raise InvariantError(
                f"ChainSpec: {len(self.units)} units but {len(self.routes)} routes"
            )


@dataclass(frozen=True)
class BuckleEvent:
    """One buckling event of the tension ramp.

    ``direction`` is in the unit's own frame; ``direction_world`` adds the
    unit's mount rotation (angle about the chain axis in plate frame).
    ``shape`` is the chain configuration just after the event.
    """

    unit_index: int
    tension: float
    direction: BendingDirection
    direction_world: float
    tied: bool
    shape: tuple[Pose, ...]


@dataclass(frozen=True)
class UnreachedUnit:
    """A unit whose threshold exceeds the ramp's maximum tension."""

    unit_index: int
    tension: float  # inf for unreachable routes


@dataclass(frozen=True)
class SequenceReport:
    """Ordered buckling events and final shape of one tension ramp."""

    events: tuple[BuckleEvent, ...]
    unreached: tuple[UnreachedUnit, ...]
    final_shape: tuple[Pose, ...]
    max_tension: float
    mode: str

    def __post_init__(self):
        tensions = [e.tension for e in self.events]
        if any(b < a for a, b in zip(tensions, tensions[1:])):
            raise InvariantError("SequenceReport: event tensions must be nondecreasing")


def _axis_rotation(axis_angle: float, angle: float) -> np.ndarray:
    """Rotation by ``angle`` about the in-plane axis at ``axis_angle``."""
    ux, uy = math.cos(axis_angle), math.sin(axis_angle)
    c, s = math.cos(angle), math.sin(angle)
    one_c = 1.0 - c
    rot = np.array(
        [
            [c + ux * ux * one_c, ux * uy * one_c, uy * s],
            [ux * uy * one_c, c + uy * uy * one_c, -ux * s],
            [-uy * s, ux * s, c],
        ]
    )
    mat = np.eye(4)
    mat[:3, :3] = rot
    return mat


def _translation(z: float) -> np.ndarray:
    mat = np.eye(4)
    mat[2, 3] = z
    return mat


def _unit_transform(joint: JointSpec, angle: float, psi: float) -> np.ndarray:
    """Plate-to-plate transform of one unit bent by ``angle`` toward psi."""
    axis_angle = joint.mount_rotation + psi
    return (
        _translation(0.5 * joint.length)
        @ _axis_rotation(axis_angle, angle)
        @ _translation(0.5 * joint.length)
    )


def forward_kinematics(
    chain: ChainSpec,
    joint_angles: Sequence[tuple[float, BendingDirection]],
) -> list[Pose]:
    """Base-to-tip plate frames for the given per-unit rotations.

    ``joint_angles`` pairs each unit with (rotation angle, bending
    direction in the unit frame). Returns len(units) + 1 poses, the base
    frame first.

    Raises:
        RotationLimitError: an angle beyond its unit's rotation limit;
            the message names the unit.
    """
    if len(joint_angles) != len(chain.units):
        raise DomainError(
            f"forward_kinematics: {len(chain.units)} units but "
            f"{len(joint_angles)} angles"
        )
    frames = [chain.base_frame.matrix()]
    for idx, (joint, (angle, direction)) in enumerate(zip(chain.units, joint_angles)):
        limit = rotation_limit(joint)
        if not 0.0 <= angle <= limit:
            raise RotationLimitError(
                f"forward_kinematics: unit {idx} angle {angle} rad outside "
                f"[0, {limit}] rad"
            )
        frames.append(frames[-1] @ _unit_transform(joint, angle, direction.psi))
    return [Pose.from_matrix(mat) for mat in frames]


def _segment_anchor_points(
    chain: ChainSpec, frames: list[np.ndarray]
) -> list[tuple[np.ndarray, np.ndarray]]:
    """World (top, bottom) anchor points of each unit's tendon segment."""
    points = []
    for idx, (joint, route) in enumerate(zip(chain.units, chain.routes)):
        bottom_local = np.array([*route.bottom_anchor, 1.0])
        top = np.array(route.top_anchor)
        # The top anchor is rigid to the top plate: its coordinates in that
        # plate's frame keep the in-plane offset, at height z - length.
        top_local = np.array([top[0], top[1], top[2] - joint.length, 1.0])
        world_bottom = frames[idx] @ bottom_local
        world_top = frames[idx + 1] @ top_local
        points.append((world_top[:3], world_bottom[:3]))
    return points


def tendon_path_length(
    chain: ChainSpec, joint_angles: Sequence[tuple[float, BendingDirection]]
) -> float:
    """Total tendon length over all per-unit segments, current config [m]."""
    poses = forward_kinematics(chain, joint_angles)
    frames = [p.matrix() for p in poses]
    return float(
        sum(
            np.linalg.norm(top - bottom)
            for top, bottom in _segment_anchor_points(chain, frames)
        )
    )


def _local_route(
    chain: ChainSpec, frames: list[np.ndarray], idx: int
) -> TendonRoute:
    """Unit ``idx``'s segment re-expressed in its own bottom-plate frame."""
    top, bottom = _segment_anchor_points(chain, frames)[idx]
    inv = np.linalg.inv(frames[idx])
    top_local = inv @ np.array([*top, 1.0])
    bottom_local = inv @ np.array([*bottom, 1.0])
    return TendonRoute(tuple(top_local[:3]), tuple(bottom_local[:3]))


def _thresholds(
    chain: ChainSpec,
    angles: list[tuple[float, BendingDirection]],
    mode: SimulationMode,
    pending: set[int],
) -> dict[int, BuckleThreshold]:
    if mode == "independent":
        return {
            idx: buckle_threshold(chain.units[idx], chain.routes[idx])
            for idx in sorted(pending)
        }
    frames = [p.matrix() for p in forward_kinematics(chain, angles)]
    return {
        idx: buckle_threshold(chain.units[idx], _local_route(chain, frames, idx))
        for idx in sorted(pending)
    }


def simulate_ramp(
    chain: ChainSpec,
    max_tension: float,
    *,
    mode: SimulationMode = "recompute",
) -> SequenceReport:
    """Ramp the tendon tension and record the buckling sequence.

    Event loop: among the not-yet-buckled units, the one with the lowest
    buckle threshold (computed from the tendon's current line of action
    through that unit; with rigid plates this is configuration-independent
    and both modes agree) buckles next, provided its threshold does not
    exceed ``max_tension``. It snaps to its rotation limit in the
    predicted direction, geometry is recomputed, and the loop repeats.
    Exact ties are broken toward the lowest unit index and flagged on the
    events. Units never reached are reported, not raised.

    ``mode`` selects where thresholds are evaluated: ``"independent"``
    uses the undeformed per-unit routes as declared, ``"recompute"``
    re-derives each unit's segment from the current world frames.
    """
    if not max_tension > 0.0:
        raise DomainError(f"simulate_ramp: max tension must be > 0, got {max_tension}")
    if mode not in ("independent", "recompute"):
        raise DomainError(f"simulate_ramp: unknown mode {mode!r}")

    n = len(chain.units)
    angles: list[tuple[float, BendingDirection]] = [
        (0.0, BendingDirection(0.0)) for _ in range(n)
    ]
    pending = set(range(n))
    events: list[BuckleEvent] = []
    last_tension = 0.0

    while pending:
        thresholds = _thresholds(chain, angles, mode, pending)
        lowest = min(t.tension for t in thresholds.values())
        if not math.isfinite(lowest) or lowest > max_tension:
            break
        # Thresholds within the tie tolerance of the minimum count as
        # equal; the lowest unit index among them buckles first.
        group = [
            i
            for i, t in thresholds.items()
            if t.reachable and t.tension <= lowest * (1.0 + _TIE_RTOL)
        ]
        best_idx = min(group)
        best = thresholds[best_idx]
        tied = len(group) > 1
        joint = chain.units[best_idx]
        direction = best.direction
        angles[best_idx] = (rotation_limit(joint), direction)
        shape = tuple(forward_kinematics(chain, angles))
        tension = max(best.tension, last_tension)
        events.append(
            BuckleEvent(
                unit_index=best_idx,
                tension=tension,
                direction=direction,
                direction_world=(direction.psi + joint.mount_rotation) % (2.0 * math.pi),
                tied=tied,
                shape=shape,
            )
        )
        last_tension = tension
        pending.discard(best_idx)

    unreached = []
    if pending:
        thresholds = _thresholds(chain, angles, mode, pending)
        unreached = [
            UnreachedUnit(unit_index=i, tension=thresholds[i].tension)
            for i in sorted(pending)
        ]
    final_shape = tuple(forward_kinematics(chain, angles))
    return SequenceReport(
        events=tuple(events),
        unreached=tuple(unreached),
        final_shape=final_shape,
        max_tension=float(max_tension),
        mode=mode,
    )


def grasp_energy(chain: ChainSpec, ramp_result: SequenceReport) -> float:
    """Tendon work absorbed over a ramp's buckling sequence [J].

    Integrates tension over tendon pull-in with the trapezoid rule along
    the (pull, tension) history. Between events the chain is rigid and
    the tendon does not move; during a snap the plateau law holds the
    tension at the event threshold while the unit rotates, so each event
    contributes threshold * (length before - length after). A report with
    no events costs nothing.
    """
    angles: list[tuple[float, BendingDirection]] = [
        (0.0, BendingDirection(0.0)) for _ in range(len(chain.units))
    ]
    length = tendon_path_length(chain, angles)
    energy = 0.0
    for event in ramp_result.events:
        joint = chain.units[event.unit_index]
        angles[event.unit_index] = (rotation_limit(joint), event.direction)
        new_length = tendon_path_length(chain, angles)
        # Flat-tension trapezoid: both ends of the displacement interval
        # sit at the event threshold.
        energy += event.tension * (length - new_length)
        length = new_length
    return energy


def single_unit_chain(joint: JointSpec, route: TendonRoute) -> ChainSpec:
    """Convenience wrapper for gripper-style one-unit simulations."""
    return ChainSpec(units=(joint,), routes=(route,))


def scaled_pressure_chain(chain: ChainSpec, factor: float) -> ChainSpec:
    """Same chain with every unit's pressure (and elastic slope) scaled.

    The elastic slope of an inflated joint is pressure-borne, so it scales
    with the same factor; thresholds and plateau moments then scale
    linearly while the kinematic path is unchanged.
    """
    units = tuple(
        replace(
            joint,
            section=replace(joint.section, pressure=joint.section.pressure * factor),
            elastic_slope=joint.elastic_slope * factor,
        )
        for joint in chain.units
    )
    return ChainSpec(units=units, routes=chain.routes, base_frame=chain.base_frame)
