"""Command-line surface.

Subcommands: mmax, moment-curve, tendon, sequence, shape, fit, search.
Structured inputs come from JSON spec files (see the specfile module for
the schema); quick inline values accept explicit unit suffixes (kPa, mm,
deg) and are converted to SI at this boundary. Outputs are CSV for
tables and JSON for reports, written with stable formatting so identical
inputs produce identical bytes; ``--plot`` drops a rendered figure next
to the delimited output. Exit codes: 0 success, 1 domain or I/O error,
2 usage or spec-schema error; failures print one machine-readable JSON
line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import chain as chain_mod
from . import fitting, joint as joint_mod, search as search_mod, section, specfile, tendon
from .errors import SchemaError, ToolkitError

__all__ = ["main", "run_cli"]


def _emit_error(exc: Exception) -> None:
    payload = {
        "error": {
            "type": type(exc).__name__,
            "module": type(exc).__module__,
            "message": str(exc),
        }
    }
    print(json.dumps(payload), file=sys.stderr)


def _write_json(path: str, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _plot_path(args, default_source: str | None) -> str | None:
    """Resolve --plot: explicit path, or derived from the data output."""
    target = getattr(args, "plot", None)
    if target is None:
        return None
    if target:
        return target
    if not default_source:
        raise SchemaError("--plot without a path needs a --csv-out/--json-out to sit next to")
    return str(Path(default_source).with_suffix(".png"))


def _angles_list(text: str) -> list[float]:
    """Parse '0deg,20deg,...' or 'start:stop:count' into radians."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise SchemaError(f"angle range must be start:stop:count, got {text!r}")
        start = specfile.parse_quantity(parts[0], "angle")
        stop = specfile.parse_quantity(parts[1], "angle")
        try:
            count = int(parts[2])
        except ValueError:
            raise SchemaError(f"angle range count must be an integer, got {parts[2]!r}") from None
        if count < 1:
            raise SchemaError("angle range count must be >= 1")
        return [float(v) for v in np.linspace(start, stop, count)]
    return [specfile.parse_quantity(part, "angle") for part in text.split(",") if part.strip()]


def _section_from_args(args) -> section.SectionSpec:
    if args.spec:
        return specfile.load_spec(args.spec).only("sections", args.section)
    if args.pressure is None or args.radius is None:
        raise SchemaError("mmax needs either --spec or --pressure and --radius")
    radius = specfile.parse_quantity(args.radius, "length")
    thickness = specfile.parse_quantity(args.thickness, "length")
    pressure = specfile.parse_quantity(args.pressure, "pressure")
    if args.theta1 is not None or args.theta2 is not None:
        if args.theta1 is None or args.theta2 is None:
            raise SchemaError("give both --theta1 and --theta2 or neither")
        return section.SectionSpec(
            radius,
            thickness,
            pressure,
            specfile.parse_quantity(args.theta1, "angle"),
            specfile.parse_quantity(args.theta2, "angle"),
        )
    if args.tape_width is not None:
        return section.SectionSpec.from_tape_width(
            radius, thickness, pressure, specfile.parse_quantity(args.tape_width, "length")
        )
    if args.band_width is not None:
        return section.SectionSpec.symmetric_band(
            radius, thickness, pressure, specfile.parse_quantity(args.band_width, "angle")
        )
    return section.SectionSpec.isotropic(radius, thickness, pressure)


def _cmd_mmax(args) -> int:
    sec = _section_from_args(args)
    m_max = section.max_restoring_moment(sec)
    m_onset = section.wrinkle_onset_moment(sec)
    ratio = section.stiffness_ratio(sec.band_width)
    print(f"max restoring moment: {m_max:.4f} N*m")
    print(f"wrinkle onset moment: {m_onset:.4f} N*m")
    print(f"soft/stiff plateau ratio: {ratio:.4f}")
    if args.json_out:
        _write_json(
            args.json_out,
            {
                "schema_version": specfile.SCHEMA_VERSION,
                "section": specfile.section_to_json(sec),
                "max_restoring_moment": m_max,
                "wrinkle_onset_moment": m_onset,
                "stiffness_ratio": ratio,
            },
        )
    return 0


def _cmd_moment_curve(args) -> int:
    spec = specfile.load_spec(args.spec)
    jnt = spec.only("joints", args.joint)
    psi = specfile.parse_quantity(args.psi, "angle")
    direction = joint_mod.BendingDirection(psi)
    limit = joint_mod.rotation_limit(jnt)
    angles = [float(a) for a in np.linspace(0.0, limit, args.samples)]
    moments = [joint_mod.restoring_moment_curve(jnt, direction, a) for a in angles]
    _write_csv(
        args.csv_out,
        ["angle_rad", "moment_Nm"],
        [[a, m] for a, m in zip(angles, moments)],
    )
    figure = _plot_path(args, args.csv_out)
    if figure:
        from . import plots

        plots.save_moment_curve(angles, moments, figure)
    print(f"wrote {args.csv_out}" + (f" and {figure}" if figure else ""))
    return 0


def _cmd_tendon(args) -> int:
    spec = specfile.load_spec(args.spec)
    jnt = spec.only("joints", args.joint)
    if args.route:
        route = spec.only("routes", args.route)
        threshold = tendon.buckle_threshold(jnt, route)
        payload = {
            "schema_version": specfile.SCHEMA_VERSION,
            "tension": None if not threshold.reachable else threshold.tension,
            "psi": None if threshold.direction is None else threshold.direction.psi,
            "reachable": threshold.reachable,
        }
        if args.json_out:
            _write_json(args.json_out, payload)
        print(json.dumps(payload))
        return 0
    if args.anchor_radius is None:
        raise SchemaError("tendon sweep needs --anchor-radius (or use --route)")
    if not args.csv_out:
        raise SchemaError("tendon sweep needs --csv-out")
    entries = tendon.routing_sweep(
        jnt,
        _angles_list(args.top_angles),
        _angles_list(args.bottom_angles),
        anchor_radius=specfile.parse_quantity(args.anchor_radius, "length"),
        plate_height=None
        if args.plate_height is None
        else specfile.parse_quantity(args.plate_height, "length"),
    )
    rows = []
    for e in entries:
        rows.append(
            [
                e.top_angle,
                e.bottom_angle,
                e.threshold.tension if e.threshold.reachable else math.inf,
                e.threshold.direction.psi if e.threshold.direction else "",
                e.threshold.reachable,
            ]
        )
    _write_csv(
        args.csv_out,
        ["top_angle_rad", "bottom_angle_rad", "tension_N", "direction_rad", "reachable"],
        rows,
    )
    figure = _plot_path(args, args.csv_out)
    if figure:
        from . import plots

        plots.save_sweep(entries, figure)
    print(f"wrote {args.csv_out}" + (f" and {figure}" if figure else ""))
    return 0


def _frames_rows(poses) -> list[list]:
    return [
        [i, *pose.position, *pose.quaternion] for i, pose in enumerate(poses)
    ]


_FRAME_HEADER = ["index", "x_m", "y_m", "z_m", "qw", "qx", "qy", "qz"]


def _cmd_sequence(args) -> int:
    spec = specfile.load_spec(args.spec)
    chain = spec.only("chains", args.chain)
    max_tension = specfile.parse_quantity(args.max_tension, "force")
    report = chain_mod.simulate_ramp(chain, max_tension, mode=args.mode)
    payload = specfile.report_to_json(report)
    _write_json(args.json_out, payload)
    if args.frames_csv:
        _write_csv(args.frames_csv, _FRAME_HEADER, _frames_rows(report.final_shape))
    figure = _plot_path(args, args.json_out)
    if figure:
        from . import plots

        plots.save_sequence(report, figure)
    print(
        f"{len(report.events)} events, {len(report.unreached)} unreached; "
        f"wrote {args.json_out}"
    )
    return 0


def _cmd_shape(args) -> int:
    spec = specfile.load_spec(args.spec)
    chain = spec.only("chains", args.chain)
    angles = _angles_list(args.angles)
    if args.directions:
        psis = _angles_list(args.directions)
    else:
        psis = [0.0] * len(angles)
    if len(psis) != len(angles):
        raise SchemaError(
            f"shape: {len(angles)} angles but {len(psis)} directions"
        )
    pairs = [
        (a, joint_mod.BendingDirection(p)) for a, p in zip(angles, psis)
    ]
    poses = chain_mod.forward_kinematics(chain, pairs)
    _write_csv(args.csv_out, _FRAME_HEADER, _frames_rows(poses))
    figure = _plot_path(args, args.csv_out)
    if figure:
        from . import plots

        plots.save_shape(poses, figure)
    print(f"wrote {args.csv_out}" + (f" and {figure}" if figure else ""))
    return 0


def _read_curve_csv(path: str, lever_arm: float) -> fitting.MeasuredCurve:
    displacements, forces = [], []
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            for row in csv.reader(handle):
                if not row or len(row) < 2:
                    continue
                try:
                    d, f = float(row[0]), float(row[1])
                except ValueError:
                    continue  # header line
                displacements.append(d)
                forces.append(f)
    except OSError as exc:
        raise SchemaError(f"cannot read curve file {path}: {exc}") from exc
    return fitting.MeasuredCurve(
        displacements=tuple(displacements), forces=tuple(forces), lever_arm=lever_arm
    )


def _cmd_fit(args) -> int:
    window = args.window_fraction
    if args.manifest:
        try:
            manifest = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
        except OSError as exc:
            raise SchemaError(f"cannot read manifest {args.manifest}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SchemaError(f"manifest {args.manifest} is not valid JSON: {exc}") from exc
        if manifest.get("schema_version") != specfile.SCHEMA_VERSION:
            raise SchemaError("manifest: schema_version must be 1")
        lever_arm = float(manifest.get("lever_arm", 0.0))
        base = Path(args.manifest).parent
        pairs = []
        for i, entry in enumerate(manifest.get("curves", [])):
            if "pressure" not in entry or "csv" not in entry:
                raise SchemaError(
                    f"manifest curves[{i}]: need both 'pressure' and 'csv'"
                )
            arm = float(entry.get("lever_arm", lever_arm))
            pairs.append(
                (float(entry["pressure"]), _read_curve_csv(str(base / entry["csv"]), arm))
            )
        fit = fitting.fit_pressure_scaling(pairs, window)
        payload = {
            "schema_version": specfile.SCHEMA_VERSION,
            "slope_Nm_per_Pa": fit.slope,
            "intercept_Nm": fit.intercept,
            "pressures_Pa": list(fit.pressures),
            "plateaus_Nm": list(fit.plateaus),
            "window_fraction": window,
        }
        _write_json(args.json_out, payload)
        figure = _plot_path(args, args.json_out)
        if figure:
            from . import plots

            plots.save_pressure_fit(fit, figure)
        print(f"slope {fit.slope:.6e} N*m/Pa, intercept {fit.intercept:.3e} N*m")
        return 0
    if not args.curve_csv or args.lever_arm is None:
        raise SchemaError("fit needs --manifest or both --curve-csv and --lever-arm")
    curve = _read_curve_csv(
        args.curve_csv, specfile.parse_quantity(args.lever_arm, "length")
    )
    estimate = fitting.extract_plateau(curve, window)
    payload = {
        "schema_version": specfile.SCHEMA_VERSION,
        "plateau_Nm": estimate.moment,
        "low_confidence": estimate.low_confidence,
        "window_start": estimate.window_start,
        "window_size": estimate.window_size,
        "mean_abs_slope": estimate.mean_abs_slope,
        "window_fraction": window,
    }
    if args.json_out:
        _write_json(args.json_out, payload)
    print(json.dumps(payload))
    return 0


def _cmd_search(args) -> int:
    spec = specfile.load_spec(args.spec)
    problem = spec.only("problems", args.problem)
    solutions = search_mod.enumerate_designs(problem)
    if args.limit is not None:
        solutions = solutions[: args.limit]
    _write_json(args.json_out, specfile.solutions_to_json(solutions))
    print(f"{len(solutions)} feasible designs; wrote {args.json_out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irjoint",
        description="Inflated rotational joint analysis and design tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mmax", help="maximum and onset moments of a section")
    p.add_argument("--spec", help="spec file with a sections table")
    p.add_argument("--section", help="section name inside the spec file")
    p.add_argument("--pressure", help="inline gauge pressure (Pa or kPa suffix)")
    p.add_argument("--radius", help="inline beam radius (m or mm suffix)")
    p.add_argument("--thickness", default="50e-6", help="inline film thickness")
    p.add_argument("--band-width", dest="band_width", help="symmetric band width (rad/deg)")
    p.add_argument("--tape-width", dest="tape_width", help="tape strip width (m/mm)")
    p.add_argument("--theta1", help="explicit band lower edge (rad/deg)")
    p.add_argument("--theta2", help="explicit band upper edge (rad/deg)")
    p.add_argument("--json-out", dest="json_out")
    p.set_defaults(func=_cmd_mmax)

    p = sub.add_parser("moment-curve", help="restoring moment vs rotation table")
    p.add_argument("--spec", required=True)
    p.add_argument("--joint")
    p.add_argument("--psi", default="0", help="bending direction from the soft plane")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--csv-out", dest="csv_out", required=True)
    p.add_argument("--plot", nargs="?", const="", help="render a figure (optional path)")
    p.set_defaults(func=_cmd_moment_curve)

    p = sub.add_parser("tendon", help="buckle thresholds for tendon routings")
    p.add_argument("--spec", required=True)
    p.add_argument("--joint")
    p.add_argument("--route", help="single named route instead of a sweep")
    p.add_argument("--anchor-radius", dest="anchor_radius")
    p.add_argument("--plate-height", dest="plate_height")
    p.add_argument("--top-angles", dest="top_angles", default="0deg:180deg:10")
    p.add_argument("--bottom-angles", dest="bottom_angles", default="0deg:180deg:10")
    p.add_argument("--csv-out", dest="csv_out")
    p.add_argument("--json-out", dest="json_out")
    p.add_argument("--plot", nargs="?", const="")
    p.set_defaults(func=_cmd_tendon)

    p = sub.add_parser("sequence", help="simulate a tension ramp on a chain")
    p.add_argument("--spec", required=True)
    p.add_argument("--chain")
    p.add_argument("--max-tension", dest="max_tension", required=True)
    p.add_argument("--mode", choices=["independent", "recompute"], default="recompute")
    p.add_argument("--json-out", dest="json_out", required=True)
    p.add_argument("--frames-csv", dest="frames_csv")
    p.add_argument("--plot", nargs="?", const="")
    p.set_defaults(func=_cmd_sequence)

    p = sub.add_parser("shape", help="forward kinematics of given unit angles")
    p.add_argument("--spec", required=True)
    p.add_argument("--chain")
    p.add_argument("--angles", required=True, help="comma list or start:stop:count")
    p.add_argument("--directions", help="per-unit bending directions (default soft)")
    p.add_argument("--csv-out", dest="csv_out", required=True)
    p.add_argument("--plot", nargs="?", const="")
    p.set_defaults(func=_cmd_shape)

    p = sub.add_parser("fit", help="plateau extraction / pressure-scaling fit")
    p.add_argument("--curve-csv", dest="curve_csv", help="displacement,force CSV")
    p.add_argument("--lever-arm", dest="lever_arm")
    p.add_argument("--manifest", help="JSON manifest of (pressure, csv) pairs")
    p.add_argument(
        "--window-fraction",
        dest="window_fraction",
        type=float,
        default=fitting.DEFAULT_WINDOW_FRACTION,
    )
    p.add_argument("--json-out", dest="json_out")
    p.add_argument("--plot", nargs="?", const="")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("search", help="enumerate chain designs for a target sequence")
    p.add_argument("--spec", required=True)
    p.add_argument("--problem")
    p.add_argument("--json-out", dest="json_out", required=True)
    p.add_argument("--limit", type=int, help="keep only the best N solutions")
    p.set_defaults(func=_cmd_search)

    return parser


def run_cli(argv=None) -> int:
    """Parse arguments, dispatch, and map failures onto exit codes."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except SchemaError as exc:
        _emit_error(exc)
        return 2
    except ToolkitError as exc:
        _emit_error(exc)
        return 1
    except OSError as exc:
        _emit_error(exc)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
