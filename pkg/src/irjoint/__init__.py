"""Inflated rotational joints: anisotropic stiffness analysis and design.

A toolkit for thin-film inflated beam segments whose bending stiffness is
made anisotropic by enforcing partial wrinkling of the membrane. It
covers the section mechanics (buckling and wrinkle-advance moments), the
single-joint moment-rotation law, tendon-routing thresholds, quasi-static
multi-unit actuation sequencing, and exhaustive design search over the
discrete routing/ordering space, plus data reduction for bench curves.
"""

from .chain import (
    BuckleEvent,
    ChainSpec,
    Pose,
    SequenceReport,
    UnreachedUnit,
    forward_kinematics,
    grasp_energy,
    simulate_ramp,
    tendon_path_length,
)
from .errors import DomainError, InvariantError, SchemaError, ToolkitError
from .fitting import (
    MeasuredCurve,
    PlateauEstimate,
    PressureFit,
    extract_plateau,
    fit_pressure_scaling,
)
from .joint import (
    SOFT_PLANE,
    STIFF_PLANE,
    BendingDirection,
    JointSpec,
    RotationLimitError,
    directional_max_moment,
    free_rotation_limit,
    restoring_moment_curve,
    rotation_limit,
)
from .search import (
    DesignProblem,
    DesignSolution,
    enumerate_designs,
    margin,
)
from .section import (
    MomentRangeError,
    SectionSpec,
    WrinkleState,
    band_width_for_tape_width,
    max_restoring_moment,
    moment_scale_factor,
    oracle_moment_from_integrals,
    solve_wrinkle_boundary,
    stiffness_ratio,
    stress_profile,
    wrinkle_onset_moment,
)
from .tendon import (
    BuckleThreshold,
    DegenerateRouteError,
    SweepEntry,
    TendonRoute,
    buckle_threshold,
    routing_sweep,
    unit_tension_moment,
)

__version__ = "0.1.0"

__all__ = [
    "BendingDirection",
    "BuckleEvent",
    "BuckleThreshold",
    "ChainSpec",
    "DegenerateRouteError",
    "DesignProblem",
    "DesignSolution",
    "DomainError",
    "InvariantError",
    "JointSpec",
    "MeasuredCurve",
    "MomentRangeError",
    "PlateauEstimate",
    "Pose",
    "PressureFit",
    "RotationLimitError",
    "SchemaError",
    "SectionSpec",
    "SequenceReport",
    "SOFT_PLANE",
    "STIFF_PLANE",
    "SweepEntry",
    "TendonRoute",
    "ToolkitError",
    "UnreachedUnit",
    "WrinkleState",
    "band_width_for_tape_width",
    "buckle_threshold",
    "directional_max_moment",
    "enumerate_designs",
    "extract_plateau",
    "fit_pressure_scaling",
    "forward_kinematics",
    "free_rotation_limit",
    "grasp_energy",
    "margin",
    "max_restoring_moment",
    "moment_scale_factor",
    "oracle_moment_from_integrals",
    "restoring_moment_curve",
    "rotation_limit",
    "routing_sweep",
    "simulate_ramp",
    "solve_wrinkle_boundary",
    "stiffness_ratio",
    "stress_profile",
    "tendon_path_length",
    "unit_tension_moment",
    "wrinkle_onset_moment",
]
