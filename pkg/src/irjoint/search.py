"""Exhaustive search of the discrete chain-design space.

The design variables of a serial chain are all discrete: which available
unit goes in which position, each unit's mount rotation from an allowed
set, and which plate orifice the tendon threads at each connector. This
module enumerates the full product space (under a size cap), simulates
every candidate, and keeps those whose buckling sequence matches the
requested order, ranked by how robustly they separate consecutive
thresholds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

from .chain import ChainSpec, SequenceReport, simulate_ramp
from .errors import DomainError, InvariantError
from .joint import JointSpec
from .tendon import TendonRoute

__all__ = [
    "DesignProblem",
    "DesignSolution",
    "EmptyReportError",
    "SearchSpaceError",
    "design_space_size",
    "enumerate_designs",
    "margin",
]


class SearchSpaceError(DomainError):
    """Design space larger than the configured cap."""


class EmptyReportError(DomainError):
    """Margin of a report with no events is undefined."""


@dataclass(frozen=True)
class DesignProblem:
    """A target actuation sequence over a stock of units.

    Attributes:
        available_units: unit stock; positions in this tuple are the unit
            "roles" that ``target_sequence`` refers to
        orifice_layout: in-plane (x, y) tendon orifice positions available
            on every connector plate [m]
        target_sequence: roles in the order they must buckle; must name
            every role exactly once
        target_directions: optional required world bending direction per
            event, parallel to ``target_sequence`` [rad]
        allowed_rotations: mount rotations a unit may be installed at [rad]
        max_tension: ramp ceiling for candidate simulation [N]
        direction_tolerance: acceptance half-width for direction targets [rad]
        cap: refuse to enumerate spaces larger than this
    """

    available_units: tuple[JointSpec, ...]
    orifice_layout: tuple[tuple[float, float], ...]
    target_sequence: tuple[int, ...]
    target_directions: tuple[float, ...] | None = None
    allowed_rotations: tuple[float, ...] = (0.0,)
    max_tension: float = math.inf
    direction_tolerance: float = math.pi / 12
    cap: int = 1_000_000

    def __post_init__(self):
        object.__setattr__(self, "available_units", tuple(self.available_units))
        object.__setattr__(
            self, "orifice_layout", tuple(tuple(o) for o in self.orifice_layout)
        )
        object.__setattr__(self, "target_sequence", tuple(self.target_sequence))
        if self.target_directions is not None:
            object.__setattr__(
                self, "target_directions", tuple(self.target_directions)
            )
        object.__setattr__(self, "allowed_rotations", tuple(self.allowed_rotations))
        n = len(self.available_units)
        if n < 1:
            raise InvariantError("DesignProblem: need at least one unit")
        if sorted(self.target_sequence) != list(range(n)):
            raise InvariantError(
                "DesignProblem: target sequence must be a permutation of roles "
                f"0..{n - 1}, got {self.target_sequence}"
            )
        if self.target_directions is not None and len(self.target_directions) != n:
            raise InvariantError(
                "DesignProblem: one target direction per unit or none"
            )
        if len(self.orifice_layout) < 1:
            raise InvariantError("DesignProblem: need at least one orifice")
        if len(self.allowed_rotations) < 1:
            raise InvariantError("DesignProblem: need at least one allowed rotation")


@dataclass(frozen=True)
class DesignSolution:
    """A chain achieving the target sequence.

    ``encoding`` is the lexicographic identity of the design: role order,
    rotation indices per position, orifice indices per plate (bottom-up).
    """

    chain: ChainSpec
    margin: float
    encoding: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    report: SequenceReport


def margin(report: SequenceReport) -> float:
    """Minimum relative gap between consecutive event tensions.

    min over consecutive events of (T_next - T_prev) / T_next: zero for a
    tie, +inf sentinel for a single-event report.

    Raises:
        EmptyReportError: no events.
    """
    if len(report.events) == 0:
        raise EmptyReportError("margin: report has no events")
    if len(report.events) == 1:
        return math.inf
    gaps = []
    for prev, nxt in zip(report.events, report.events[1:]):
        gaps.append(max(0.0, (nxt.tension - prev.tension) / nxt.tension))
    return min(gaps)


def design_space_size(problem: DesignProblem) -> int:
    n = len(problem.available_units)
    return (
        math.factorial(n)
        * len(problem.allowed_rotations) ** n
        * len(problem.orifice_layout) ** (n + 1)
    )


def _build_chain(
    problem: DesignProblem,
    perm: tuple[int, ...],
    rotations: tuple[int, ...],
    orifices: tuple[int, ...],
) -> ChainSpec:
    units = []
    routes = []
    for pos in range(len(perm)):
        base = problem.available_units[perm[pos]]
        units.append(
            replace(base, mount_rotation=problem.allowed_rotations[rotations[pos]])
        )
        bottom = problem.orifice_layout[orifices[pos]]
        top = problem.orifice_layout[orifices[pos + 1]]
        routes.append(
            TendonRoute.between_plates(top, bottom, plate_height=base.length)
        )
    return ChainSpec(units=tuple(units), routes=tuple(routes))


def _wrapped_distance(a: float, b: float) -> float:
    """Angular distance on the circle [rad]."""
    d = (a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def _matches_target(
    problem: DesignProblem, perm: tuple[int, ...], report: SequenceReport
) -> bool:
    if len(report.events) != len(problem.available_units):
        return False
    roles = tuple(perm[event.unit_index] for event in report.events)
    if roles != problem.target_sequence:
        return False
    if problem.target_directions is not None:
        for event, want in zip(report.events, problem.target_directions):
            if _wrapped_distance(event.direction_world, want) > problem.direction_tolerance:
                return False
    return True


def enumerate_designs(problem: DesignProblem) -> list[DesignSolution]:
    """All feasible designs, best separation margin first.

    Every point of the product space (role orderings x rotations x
    orifice assignments) is simulated: first in independent-unit mode as
    a cheap screen, then finalists in full recompute mode, whose report
    must still match and is the one kept. Returns an empty list when the
    target is infeasible. Ranking is deterministic: margin descending,
    ties broken lexicographically on the design encoding.

    Raises:
        SearchSpaceError: space size exceeds ``problem.cap``; the message
            carries the computed size.
    """
    size = design_space_size(problem)
    if size > problem.cap:
        raise SearchSpaceError(
            f"enumerate_designs: design space has {size} candidates, "
            f"cap is {problem.cap}"
        )
    n = len(problem.available_units)
    solutions = []
    for perm in itertools.permutations(range(n)):
        for rotations in itertools.product(
            range(len(problem.allowed_rotations)), repeat=n
        ):
            for orifices in itertools.product(
                range(len(problem.orifice_layout)), repeat=n + 1
            ):
                chain = _build_chain(problem, perm, rotations, orifices)
                screen = simulate_ramp(
                    chain, problem.max_tension, mode="independent"
                )
                if not _matches_target(problem, perm, screen):
                    continue
                report = simulate_ramp(chain, problem.max_tension, mode="recompute")
                if not _matches_target(problem, perm, report):
                    continue
                solutions.append(
                    DesignSolution(
                        chain=chain,
                        margin=margin(report),
                        encoding=(perm, rotations, orifices),
                        report=report,
                    )
                )
    solutions.sort(key=lambda sol: (-sol.margin, sol.encoding))
    return solutions
