"""JSON spec files and boundary unit conversion.

All file content is SI (m, Pa, N, rad, J) and carries a ``schema_version``
field. Named objects live under top-level maps::

    {
      "schema_version": 1,
      "sections": {"name": {"radius": .., "thickness": .., "pressure": ..,
                            "theta1"/"theta2" or "band_width" [+ "band_center"]
                            or "tape_width"}},
      "joints":   {"name": {"section": "name" | {...}, "length": ..,
                            "elastic_slope": .., "plateau_onset_angle": ..,
                            ["wrinkle_strain"], ["mount_rotation"],
                            ["rotation_limit"]}},
      "routes":   {"name": {"top": [x, y, z], "bottom": [x, y] | [x, y, z]}},
      "chains":   {"name": {"units": [joint...], "routes": [route...],
                            ["base_frame": {"position", "quaternion"}]}},
      "problems": {"name": {"units": [joint...], "orifices": [[x, y]...],
                            "target_sequence": [...],
                            ["target_directions"], ["allowed_rotations"],
                            ["max_tension"], ["direction_tolerance"], ["cap"]}}
    }

Inline command-line values may instead carry explicit unit suffixes
(``6.89kPa``, ``33.5mm``, ``45deg``); they are converted to SI here at the
boundary and nowhere else. JSON ``null`` stands for +inf where a quantity
is unbounded (ramp ceilings, single-event margins).
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .chain import ChainSpec, Pose, SequenceReport
from .errors import SchemaError
from .fitting import MeasuredCurve
from .joint import JointSpec
from .search import DesignProblem, DesignSolution
from .section import SectionSpec
from .tendon import TendonRoute

__all__ = [
    "SCHEMA_VERSION",
    "SpecFile",
    "chain_from_json",
    "chain_to_json",
    "load_spec",
    "parse_quantity",
    "report_to_json",
    "solutions_to_json",
]

SCHEMA_VERSION = 1

_UNIT_FACTORS = {
    "pressure": (("kPa", 1.0e3), ("Pa", 1.0)),
    "length": (("mm", 1.0e-3), ("cm", 1.0e-2), ("m", 1.0)),
    "angle": (("deg", math.pi / 180.0), ("rad", 1.0)),
    "force": (("kN", 1.0e3), ("N", 1.0)),
}


def parse_quantity(value: Any, kind: str) -> float:
    """Convert a CLI value to SI; numbers pass through, suffixes convert.

    Raises:
        SchemaError: unknown suffix or malformed number.
    """
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value).strip()
    for suffix, factor in _UNIT_FACTORS.get(kind, ()):
        if text.endswith(suffix):
            body = text[: -len(suffix)].strip()
            try:
                return float(body) * factor
            except ValueError:
                raise SchemaError(f"cannot parse {kind} quantity {value!r}") from None
    try:
        return float(text)
    except ValueError:
        raise SchemaError(
            f"cannot parse {kind} quantity {value!r}; allowed suffixes: "
            f"{', '.join(s for s, _ in _UNIT_FACTORS.get(kind, ()))}"
        ) from None


def _require(obj: dict, key: str, context: str) -> Any:
    if key not in obj:
        raise SchemaError(f"{context}: missing required field {key!r}")
    return obj[key]


def _number(obj: dict, key: str, context: str, default: float | None = None) -> float:
    if key not in obj:
        if default is None:
            raise SchemaError(f"{context}: missing required field {key!r}")
        return default
    value = obj[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise SchemaError(f"{context}: field {key!r} must be a number, got {value!r}")
    return float(value)


def section_from_json(obj: Any, context: str = "section") -> SectionSpec:
    if not isinstance(obj, dict):
        raise SchemaError(f"{context}: expected an object, got {type(obj).__name__}")
    radius = _number(obj, "radius", context)
    thickness = _number(obj, "thickness", context)
    pressure = _number(obj, "pressure", context)
    if "theta1" in obj or "theta2" in obj:
        return SectionSpec(
            radius=radius,
            thickness=thickness,
            pressure=pressure,
            theta1=_number(obj, "theta1", context),
            theta2=_number(obj, "theta2", context),
        )
    if "band_width" in obj:
        width = _number(obj, "band_width", context)
        center = _number(obj, "band_center", context, default=math.pi / 2)
        return SectionSpec(
            radius=radius,
            thickness=thickness,
            pressure=pressure,
            theta1=center - 0.5 * width,
            theta2=center + 0.5 * width,
        )
    if "tape_width" in obj:
        return SectionSpec.from_tape_width(
            radius, thickness, pressure, _number(obj, "tape_width", context)
        )
    raise SchemaError(
        f"{context}: need theta1/theta2, band_width or tape_width"
    )


def section_to_json(section: SectionSpec) -> dict:
    return {
        "radius": section.radius,
        "thickness": section.thickness,
        "pressure": section.pressure,
        "theta1": section.theta1,
        "theta2": section.theta2,
    }


def joint_from_json(
    obj: Any, sections: dict[str, SectionSpec] | None = None, context: str = "joint"
) -> JointSpec:
    if not isinstance(obj, dict):
        raise SchemaError(f"{context}: expected an object, got {type(obj).__name__}")
    raw_section = _require(obj, "section", context)
    if isinstance(raw_section, str):
        if not sections or raw_section not in sections:
            raise SchemaError(f"{context}: unknown section {raw_section!r}")
        section = sections[raw_section]
    else:
        section = section_from_json(raw_section, f"{context}.section")
    override = obj.get("rotation_limit")
    return JointSpec(
        section=section,
        length=_number(obj, "length", context),
        elastic_slope=_number(obj, "elastic_slope", context),
        plateau_onset_angle=_number(obj, "plateau_onset_angle", context),
        wrinkle_strain=_number(obj, "wrinkle_strain", context, default=0.333),
        mount_rotation=_number(obj, "mount_rotation", context, default=0.0),
        rotation_limit_override=None if override is None else float(override),
    )


def joint_to_json(joint: JointSpec) -> dict:
    out = {
        "section": section_to_json(joint.section),
        "length": joint.length,
        "elastic_slope": joint.elastic_slope,
        "plateau_onset_angle": joint.plateau_onset_angle,
        "wrinkle_strain": joint.wrinkle_strain,
        "mount_rotation": joint.mount_rotation,
    }
    if joint.rotation_limit_override is not None:
        out["rotation_limit"] = joint.rotation_limit_override
    return out


def route_from_json(obj: Any, context: str = "route") -> TendonRoute:
    if not isinstance(obj, dict):
        raise SchemaError(f"{context}: expected an object, got {type(obj).__name__}")
    top = _require(obj, "top", context)
    bottom = _require(obj, "bottom", context)
    if not isinstance(top, (list, tuple)) or len(top) != 3:
        raise SchemaError(f"{context}: top anchor must be [x, y, z]")
    if not isinstance(bottom, (list, tuple)) or len(bottom) not in (2, 3):
        raise SchemaError(f"{context}: bottom anchor must be [x, y] or [x, y, z]")
    if len(bottom) == 2:
        bottom = [bottom[0], bottom[1], 0.0]
    return TendonRoute(tuple(float(c) for c in top), tuple(float(c) for c in bottom))


def route_to_json(route: TendonRoute) -> dict:
    return {"top": list(route.top_anchor), "bottom": list(route.bottom_anchor)}


def pose_from_json(obj: Any, context: str = "pose") -> Pose:
    if not isinstance(obj, dict):
        raise SchemaError(f"{context}: expected an object")
    position = obj.get("position", [0.0, 0.0, 0.0])
    quaternion = obj.get("quaternion", [1.0, 0.0, 0.0, 0.0])
    return Pose(tuple(float(c) for c in position), tuple(float(c) for c in quaternion))


def pose_to_json(pose: Pose) -> dict:
    return {"position": list(pose.position), "quaternion": list(pose.quaternion)}


def chain_from_json(
    obj: Any,
    joints: dict[str, JointSpec] | None = None,
    routes: dict[str, TendonRoute] | None = None,
    context: str = "chain",
) -> ChainSpec:
    if not isinstance(obj, dict):
        raise SchemaError(f"{context}: expected an object, got {type(obj).__name__}")
    units = []
    for i, raw in enumerate(_require(obj, "units", context)):
        if isinstance(raw, str):
            if not joints or raw not in joints:
                raise SchemaError(f"{context}: unknown joint {raw!r}")
            units.append(joints[raw])
        else:
            units.append(joint_from_json(raw, context=f"{context}.units[{i}]"))
    route_list = []
    for i, raw in enumerate(_require(obj, "routes", context)):
        if isinstance(raw, str):
            if not routes or raw not in routes:
                raise SchemaError(f"{context}: unknown route {raw!r}")
            route_list.append(routes[raw])
        else:
            route_list.append(route_from_json(raw, context=f"{context}.routes[{i}]"))
    base = obj.get("base_frame")
    base_pose = pose_from_json(base, f"{context}.base_frame") if base else Pose()
    return ChainSpec(units=tuple(units), routes=tuple(route_list), base_frame=base_pose)


def chain_to_json(chain: ChainSpec) -> dict:
    return {
        "units": [joint_to_json(j) for j in chain.units],
        "routes": [route_to_json(r) for r in chain.routes],
        "base_frame": pose_to_json(chain.base_frame),
    }


def problem_from_json(
    obj: Any, joints: dict[str, JointSpec] | None = None, context: str = "problem"
) -> DesignProblem:
    if not isinstance(obj, dict):
        raise SchemaError(f"{context}: expected an object, got {type(obj).__name__}")
    units = []
    for i, raw in enumerate(_require(obj, "units", context)):
        if isinstance(raw, str):
            if not joints or raw not in joints:
                raise SchemaError(f"{context}: unknown joint {raw!r}")
            units.append(joints[raw])
        else:
            units.append(joint_from_json(raw, context=f"{context}.units[{i}]"))
    orifices = tuple(
        (float(o[0]), float(o[1])) for o in _require(obj, "orifices", context)
    )
    max_tension = obj.get("max_tension")
    directions = obj.get("target_directions")
    return DesignProblem(
        available_units=tuple(units),
        orifice_layout=orifices,
        target_sequence=tuple(int(i) for i in _require(obj, "target_sequence", context)),
        target_directions=None
        if directions is None
        else tuple(float(d) for d in directions),
        allowed_rotations=tuple(
            float(r) for r in obj.get("allowed_rotations", [0.0])
        ),
        max_tension=math.inf if max_tension is None else float(max_tension),
        direction_tolerance=_number(
            obj, "direction_tolerance", context, default=math.pi / 12
        ),
        cap=int(obj.get("cap", 1_000_000)),
    )


def curve_from_json(obj: Any, context: str = "curve") -> MeasuredCurve:
    if not isinstance(obj, dict):
        raise SchemaError(f"{context}: expected an object")
    samples = _require(obj, "samples", context)
    try:
        displacements = tuple(float(s[0]) for s in samples)
        forces = tuple(float(s[1]) for s in samples)
    except (TypeError, IndexError, ValueError):
        raise SchemaError(
            f"{context}: samples must be [displacement, force] pairs"
        ) from None
    return MeasuredCurve(
        displacements=displacements,
        forces=forces,
        lever_arm=_number(obj, "lever_arm", context),
    )


class SpecFile:
    """Parsed spec file: named sections, joints, routes, chains, problems."""

    def __init__(self, data: dict):
        if not isinstance(data, dict):
            raise SchemaError("spec file: top level must be an object")
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaError(
                f"spec file: schema_version must be {SCHEMA_VERSION}, got {version!r}"
            )
        self.sections = {
            name: section_from_json(obj, f"sections[{name}]")
            for name, obj in data.get("sections", {}).items()
        }
        self.joints = {
            name: joint_from_json(obj, self.sections, f"joints[{name}]")
            for name, obj in data.get("joints", {}).items()
        }
        self.routes = {
            name: route_from_json(obj, f"routes[{name}]")
            for name, obj in data.get("routes", {}).items()
        }
        self.chains = {
            name: chain_from_json(obj, self.joints, self.routes, f"chains[{name}]")
            for name, obj in data.get("chains", {}).items()
        }
        self.problems = {
            name: problem_from_json(obj, self.joints, f"problems[{name}]")
            for name, obj in data.get("problems", {}).items()
        }
        self.curves = {
            name: curve_from_json(obj, f"curves[{name}]")
            for name, obj in data.get("curves", {}).items()
        }

    def only(self, kind: str, requested: str | None) -> Any:
        """Look up a named object, or the sole one if the name is omitted."""
        table: dict = getattr(self, kind)
        if requested is not None:
            if requested not in table:
                raise SchemaError(
                    f"spec file: no {kind[:-1]} named {requested!r}; "
                    f"available: {sorted(table)}"
                )
            return table[requested]
        if len(table) != 1:
            raise SchemaError(
                f"spec file: {len(table)} {kind} defined, name one of {sorted(table)}"
            )
        return next(iter(table.values()))


def load_spec(path: str | Path) -> SpecFile:
    """Parse a spec file.

    Raises:
        SchemaError: unreadable file, bad JSON, or schema violations.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read spec file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"spec file {path} is not valid JSON: {exc}") from exc
    return SpecFile(data)


def _finite_or_none(value: float) -> float | None:
    return None if math.isinf(value) else value


def report_to_json(report: SequenceReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "mode": report.mode,
        "max_tension": _finite_or_none(report.max_tension),
        "events": [
            {
                "unit": e.unit_index,
                "tension": e.tension,
                "psi": e.direction.psi,
                "psi_world": e.direction_world,
                "tied": e.tied,
                "shape": [pose_to_json(p) for p in e.shape],
            }
            for e in report.events
        ],
        "unreached": [
            {"unit": u.unit_index, "tension": _finite_or_none(u.tension)}
            for u in report.unreached
        ],
        "final_frames": [pose_to_json(p) for p in report.final_shape],
    }


def solutions_to_json(solutions: list[DesignSolution]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "solutions": [
            {
                "margin": _finite_or_none(sol.margin),
                "encoding": {
                    "order": list(sol.encoding[0]),
                    "rotations": list(sol.encoding[1]),
                    "orifices": list(sol.encoding[2]),
                },
                "chain": chain_to_json(sol.chain),
            }
            for sol in solutions
        ],
    }
