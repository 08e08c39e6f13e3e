"""Figure rendering for the CLI report paths.

Every report-producing subcommand can drop a matplotlib figure next to
its delimited output; these helpers draw them. Import stays local to the
CLI so that library users never pay for matplotlib, and the Agg backend
keeps everything headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = [
    "save_moment_curve",
    "save_pressure_fit",
    "save_sequence",
    "save_shape",
    "save_sweep",
]


def _finish(fig, path: str | Path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_moment_curve(angles, moments, path: str | Path) -> str:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(angles, moments, lw=1.5)
    ax.set_xlabel("rotation [rad]")
    ax.set_ylabel("restoring moment [N*m]")
    ax.grid(alpha=0.3)
    return _finish(fig, path)


def save_sweep(entries, path: str | Path) -> str:
    top = sorted({e.top_angle for e in entries})
    bottom = sorted({e.bottom_angle for e in entries})
    index = {(e.top_angle, e.bottom_angle): e for e in entries}
    grid = np.full((len(top), len(bottom)), np.nan)
    for i, t in enumerate(top):
        for j, b in enumerate(bottom):
            entry = index.get((t, b))
            if entry is not None and entry.threshold.reachable:
                grid[i, j] = entry.threshold.tension
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    mesh = ax.pcolormesh(
        np.degrees(bottom), np.degrees(top), grid, shading="nearest", cmap="viridis"
    )
    fig.colorbar(mesh, ax=ax, label="buckle tension [N]")
    ax.set_xlabel("bottom anchor angle [deg]")
    ax.set_ylabel("top anchor angle [deg]")
    return _finish(fig, path)


def save_sequence(report, path: str | Path) -> str:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    tensions = [0.0] + [e.tension for e in report.events]
    ax.step(range(len(tensions)), tensions, where="post", lw=1.5)
    for k, event in enumerate(report.events, start=1):
        ax.annotate(
            f"unit {event.unit_index}",
            (k, event.tension),
            textcoords="offset points",
            xytext=(4, 4),
            fontsize=8,
        )
    ax.set_xlabel("event")
    ax.set_ylabel("tendon tension [N]")
    ax.grid(alpha=0.3)
    return _finish(fig, path)


def save_shape(poses, path: str | Path) -> str:
    points = np.array([p.position for p in poses])
    fig = plt.figure(figsize=(5.0, 4.4))
    ax = fig.add_subplot(projection="3d")
    ax.plot(points[:, 0], points[:, 1], points[:, 2], "o-", lw=1.5, ms=4)
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_zlabel("z [m]")
    span = max(points.max(0) - points.min(0)) or 1.0
    mid = 0.5 * (points.max(0) + points.min(0))
    for setter, m in zip((ax.set_xlim, ax.set_ylim, ax.set_zlim), mid):
        setter(m - 0.55 * span, m + 0.55 * span)
    return _finish(fig, path)


def save_pressure_fit(fit, path: str | Path) -> str:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(fit.pressures, fit.plateaus, "o", label="plateaus")
    grid = np.linspace(0.0, max(fit.pressures) * 1.05, 50)
    ax.plot(grid, fit.slope * grid + fit.intercept, "-", lw=1.2, label="fit")
    ax.set_xlabel("pressure [Pa]")
    ax.set_ylabel("plateau moment [N*m]")
    ax.legend()
    ax.grid(alpha=0.3)
    return _finish(fig, path)
