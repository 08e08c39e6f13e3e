"""Reduction of measured force-displacement curves.

Bench tests load the joint tip through a lever arm and record force
against displacement; moment is force times the arm. The buckling plateau
is read off as the mean moment of the flattest window of the curve, and
stiffness-vs-pressure scaling comes from a straight-line fit through
per-pressure plateaus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InvariantError

__all__ = [
    "DEFAULT_WINDOW_FRACTION",
    "InsufficientSpanError",
    "MeasuredCurve",
    "PlateauEstimate",
    "PressureFit",
    "TooFewSamplesError",
    "extract_plateau",
    "fit_pressure_scaling",
]

DEFAULT_WINDOW_FRACTION = 0.15

# A "flat" window must have mean absolute slope below this fraction of the
# curve's overall secant slope; otherwise the estimate is flagged.
_FLAT_SLOPE_FRACTION = 0.1


class TooFewSamplesError(DomainError):
    """Curve too short to window."""


class InsufficientSpanError(DomainError):
    """Pressure fit needs pressures spanning at least a factor of two."""


@dataclass(frozen=True)
class MeasuredCurve:
    """Force-displacement record of one loading run.

    Attributes:
        displacements: tip displacements, strictly increasing [m]
        forces: measured loads at those displacements [N]
        lever_arm: distance from the clamp to the load point [m]
    """

    displacements: tuple[float, ...]
    forces: tuple[float, ...]
    lever_arm: float

    def __post_init__(self):
        object.__setattr__(
            self, "displacements", tuple(float(x) for x in self.displacements)
        )
        object.__setattr__(self, "forces", tuple(float(x) for x in self.forces))
        if len(self.displacements) != len(self.forces):
            raise InvariantError(
                "MeasuredCurve: displacements and forces must have equal length"
            )
        if len(self.displacements) < 2:
            raise InvariantError("MeasuredCurve: need at least two samples")
        if any(
            b <= a for a, b in zip(self.displacements, self.displacements[1:])
        ):
            raise InvariantError("MeasuredCurve: displacements must be strictly increasing")
        if not self.lever_arm > 0.0:
            raise InvariantError(
                f"MeasuredCurve: lever arm must be > 0, got {self.lever_arm}"
            )

    @property
    def samples(self) -> tuple[tuple[float, float], ...]:
        """(displacement, force) pairs in measurement order."""
        return tuple(zip(self.displacements, self.forces))

    def moments(self) -> np.ndarray:
        """Moment samples, force times lever arm [N*m]."""
        return np.asarray(self.forces) * self.lever_arm


@dataclass(frozen=True)
class PlateauEstimate:
    """Plateau moment read from the flattest window of a curve."""

    moment: float
    window_start: int
    window_size: int
    mean_abs_slope: float
    low_confidence: bool


@dataclass(frozen=True)
class PressureFit:
    """Least-squares line through (pressure, plateau moment) points."""

    slope: float  # [N*m/Pa]
    intercept: float  # [N*m]
    pressures: tuple[float, ...]
    plateaus: tuple[float, ...]


def extract_plateau(
    curve: MeasuredCurve, window_fraction: float = DEFAULT_WINDOW_FRACTION
) -> PlateauEstimate:
    """Mean moment of the minimal-slope window of the moment curve.

    A window of ``window_fraction`` of the sample count slides over the
    curve; the window with the smallest mean absolute slope wins and its
    mean moment is the plateau estimate. A curve that never flattens
    (flattest window still steeper than a tenth of the overall secant)
    yields the flattest window anyway, flagged low-confidence.

    Raises:
        TooFewSamplesError: fewer than 10 samples.
        DomainError: window fraction outside (0, 0.5].
    """
    if len(curve.displacements) < 10:
        raise TooFewSamplesError(
            f"extract_plateau: need >= 10 samples, got {len(curve.displacements)}"
        )
    if not 0.0 < window_fraction <= 0.5:
        raise DomainError(
            f"extract_plateau: window fraction must lie in (0, 0.5], got {window_fraction}"
        )
    x = np.asarray(curve.displacements)
    m = curve.moments()
    n = len(x)
    window = max(2, int(round(window_fraction * n)))

    slopes = np.abs(np.diff(m) / np.diff(x))
    best_start, best_slope = 0, math.inf
    for start in range(n - window + 1):
        mean_slope = float(np.mean(slopes[start : start + window - 1]))
        if mean_slope < best_slope:
            best_start, best_slope = start, mean_slope

    overall = abs((m[-1] - m[0]) / (x[-1] - x[0]))
    return PlateauEstimate(
        moment=float(np.mean(m[best_start : best_start + window])),
        window_start=best_start,
        window_size=window,
        mean_abs_slope=best_slope,
        low_confidence=bool(best_slope > _FLAT_SLOPE_FRACTION * overall),
    )


def fit_pressure_scaling(
    curves: Sequence[tuple[float, MeasuredCurve]],
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> PressureFit:
    """Straight line through per-pressure plateau moments.

    For a pressure-borne joint the line passes through the origin with
    slope pi*R^3*sin(band_width/2) on the soft plane, so the intercept is
    a consistency check, not a parameter of interest.

    Raises:
        InsufficientSpanError: fewer than 3 pressures, or max/min < 2.
    """
    if len(curves) < 3:
        raise InsufficientSpanError(
            f"fit_pressure_scaling: need >= 3 pressures, got {len(curves)}"
        )
    pressures = [float(p) for p, _ in curves]
    if min(pressures) <= 0.0:
        raise DomainError("fit_pressure_scaling: pressures must be > 0")
    if max(pressures) / min(pressures) < 2.0:
        raise InsufficientSpanError(
            "fit_pressure_scaling: pressures must span at least a factor of 2, "
            f"got {min(pressures)}..{max(pressures)} Pa"
        )
    plateaus = [
        extract_plateau(curve, window_fraction).moment for _, curve in curves
    ]
    slope, intercept = np.polyfit(pressures, plateaus, 1)
    return PressureFit(
        slope=float(slope),
        intercept=float(intercept),
        pressures=tuple(pressures),
        plateaus=tuple(plateaus),
    )
