"""Command-line surface: dispatch, formats, exit codes."""

import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

import irjoint
from irjoint import specfile
from irjoint.cli import run_cli

from conftest import LENGTH, PRESSURE, RADIUS, THICKNESS


def subprocess_env():
    """Make the package importable in subprocesses even when not installed."""
    env = dict(os.environ)
    pkg_root = str(Path(irjoint.__file__).resolve().parents[1])
    env["PYTHONPATH"] = pkg_root + os.pathsep + env.get("PYTHONPATH", "")
    return env


def write_spec(tmp_path: Path) -> Path:
    spec = {
        "schema_version": 1,
        "sections": {
            "iso": {
                "radius": RADIUS,
                "thickness": THICKNESS,
                "pressure": PRESSURE,
                "theta1": 0.0,
                "theta2": math.pi,
            },
            "narrow": {
                "radius": RADIUS,
                "thickness": THICKNESS,
                "pressure": PRESSURE,
                "tape_width": 0.0127,
            },
            "wide": {
                "radius": RADIUS,
                "thickness": THICKNESS,
                "pressure": PRESSURE,
                "tape_width": 0.0381,
            },
        },
        "joints": {
            "jn": {
                "section": "narrow",
                "length": LENGTH,
                "elastic_slope": 2.0,
                "plateau_onset_angle": 0.3,
            },
            "jw": {
                "section": "wide",
                "length": LENGTH,
                "elastic_slope": 2.0,
                "plateau_onset_angle": 0.3,
            },
        },
        "routes": {
            "soft": {"top": [0.0, -0.02, LENGTH], "bottom": [0.0, -0.02]}
        },
        "chains": {"pair": {"units": ["jn", "jw"], "routes": ["soft", "soft"]}},
        "problems": {
            "small_first": {
                "units": ["jn", "jw"],
                "orifices": [[0.0, -0.02]],
                "target_sequence": [0, 1],
            }
        },
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    return path


class TestMmax:
    def test_inline_units_print_bench_value(self, capsys):
        assert run_cli(["mmax", "--pressure", "6.89kPa", "--radius", "33.5mm"]) == 0
        out = capsys.readouterr().out
        assert "0.8138 N*m" in out
        assert "0.4069 N*m" in out

    def test_spec_file_and_json_out(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        out = tmp_path / "mmax.json"
        code = run_cli(
            ["mmax", "--spec", str(spec), "--section", "iso", "--json-out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["max_restoring_moment"] == pytest.approx(
            math.pi * PRESSURE * RADIUS ** 3
        )

    def test_missing_inputs_is_usage_error(self, capsys):
        assert run_cli(["mmax"]) == 2


class TestSequence:
    def test_two_unit_chain_orders_smaller_first(self, tmp_path):
        spec = write_spec(tmp_path)
        out = tmp_path / "seq.json"
        code = run_cli(
            [
                "sequence",
                "--spec",
                str(spec),
                "--chain",
                "pair",
                "--max-tension",
                "40N",
                "--json-out",
                str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert [e["unit"] for e in payload["events"]] == [0, 1]
        assert payload["events"][0]["tension"] < payload["events"][1]["tension"]

    def test_frames_csv_written(self, tmp_path):
        spec = write_spec(tmp_path)
        out = tmp_path / "seq.json"
        frames = tmp_path / "frames.csv"
        run_cli(
            [
                "sequence",
                "--spec",
                str(spec),
                "--chain",
                "pair",
                "--max-tension",
                "40",
                "--json-out",
                str(out),
                "--frames-csv",
                str(frames),
            ]
        )
        lines = frames.read_text().splitlines()
        assert lines[0] == "index,x_m,y_m,z_m,qw,qx,qy,qz"
        assert len(lines) == 4  # header + base + 2 plates

    def test_independent_mode_recorded_in_report(self, tmp_path):
        spec = write_spec(tmp_path)
        out = tmp_path / "seq.json"
        run_cli(
            [
                "sequence",
                "--spec",
                str(spec),
                "--chain",
                "pair",
                "--max-tension",
                "40",
                "--mode",
                "independent",
                "--json-out",
                str(out),
            ]
        )
        payload = json.loads(out.read_text())
        assert payload["mode"] == "independent"
        assert payload["max_tension"] == 40.0

    def test_bad_tension_is_domain_error(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        code = run_cli(
            [
                "sequence",
                "--spec",
                str(spec),
                "--chain",
                "pair",
                "--max-tension",
                "-1",
                "--json-out",
                str(tmp_path / "x.json"),
            ]
        )
        assert code == 1
        err = json.loads(capsys.readouterr().err)
        assert err["error"]["type"] == "DomainError"
        assert err["error"]["module"].startswith("irjoint.")


class TestMomentCurveAndShape:
    def test_curve_csv_bit_stable_and_plotted(self, tmp_path):
        spec = write_spec(tmp_path)
        out = tmp_path / "curve.csv"
        args = [
            "moment-curve",
            "--spec",
            str(spec),
            "--joint",
            "jn",
            "--csv-out",
            str(out),
            "--plot",
        ]
        assert run_cli(args) == 0
        first = out.read_bytes()
        assert run_cli(args) == 0
        assert out.read_bytes() == first
        assert (tmp_path / "curve.png").exists()
        header, *rows = out.read_text().splitlines()
        assert header == "angle_rad,moment_Nm"
        assert len(rows) == 100

    def test_stiff_direction_with_degree_suffix(self, tmp_path):
        spec = write_spec(tmp_path)
        soft_out = tmp_path / "soft.csv"
        stiff_out = tmp_path / "stiff.csv"
        for psi, out in (("0deg", soft_out), ("90deg", stiff_out)):
            run_cli(
                [
                    "moment-curve",
                    "--spec",
                    str(spec),
                    "--joint",
                    "jn",
                    "--psi",
                    psi,
                    "--csv-out",
                    str(out),
                ]
            )
        last_soft = float(soft_out.read_text().splitlines()[-1].split(",")[1])
        last_stiff = float(stiff_out.read_text().splitlines()[-1].split(",")[1])
        assert last_stiff == pytest.approx(math.pi * PRESSURE * RADIUS ** 3)
        assert last_soft < last_stiff

    def test_shape_straight_chain(self, tmp_path):
        spec = write_spec(tmp_path)
        out = tmp_path / "shape.csv"
        code = run_cli(
            [
                "shape",
                "--spec",
                str(spec),
                "--chain",
                "pair",
                "--angles",
                "0,0",
                "--csv-out",
                str(out),
            ]
        )
        assert code == 0
        rows = out.read_text().splitlines()
        tip = rows[-1].split(",")
        assert float(tip[3]) == pytest.approx(2 * LENGTH)


class TestTendon:
    def test_single_route_json(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        code = run_cli(
            ["tendon", "--spec", str(spec), "--joint", "jn", "--route", "soft"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert payload["reachable"] is True
        assert payload["tension"] > 0

    def test_unreachable_route_serializes_null(self, tmp_path, capsys):
        spec_data = json.loads(write_spec(tmp_path).read_text())
        spec_data["routes"]["axial"] = {
            "top": [0.0, 0.0, LENGTH],
            "bottom": [0.0, 0.0],
        }
        path = tmp_path / "spec2.json"
        path.write_text(json.dumps(spec_data))
        code = run_cli(
            ["tendon", "--spec", str(path), "--joint", "jn", "--route", "axial"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert payload == {
            "schema_version": 1,
            "tension": None,
            "psi": None,
            "reachable": False,
        }

    def test_sweep_csv(self, tmp_path):
        spec = write_spec(tmp_path)
        out = tmp_path / "sweep.csv"
        code = run_cli(
            [
                "tendon",
                "--spec",
                str(spec),
                "--joint",
                "jn",
                "--anchor-radius",
                "25mm",
                "--top-angles",
                "0deg:180deg:5",
                "--bottom-angles",
                "0deg:180deg:5",
                "--csv-out",
                str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "top_angle_rad,bottom_angle_rad,tension_N,direction_rad,reachable"
        assert len(lines) == 26


class TestFit:
    def make_curve_csv(self, path, pressure):
        import numpy as np

        from irjoint import SOFT_PLANE, SectionSpec, restoring_moment_curve, rotation_limit
        from conftest import make_joint

        section = SectionSpec.symmetric_band(RADIUS, THICKNESS, pressure, math.pi / 4)
        joint = make_joint(section, elastic_slope=2.0 * pressure / PRESSURE)
        angles = np.linspace(0.0, rotation_limit(joint), 60)
        arm = 0.080
        rows = ["displacement_m,force_N"]
        for a in angles:
            moment = restoring_moment_curve(joint, SOFT_PLANE, a)
            rows.append(f"{1e-4 + a * arm},{moment / arm}")
        path.write_text("\n".join(rows) + "\n")
        return arm

    def test_single_curve_plateau(self, tmp_path, capsys):
        csv_path = tmp_path / "curve.csv"
        arm = self.make_curve_csv(csv_path, PRESSURE)
        code = run_cli(
            ["fit", "--curve-csv", str(csv_path), "--lever-arm", f"{arm}"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out.splitlines()[-1])
        expected = math.pi * PRESSURE * RADIUS ** 3 * math.sin(math.pi / 8)
        assert payload["plateau_Nm"] == pytest.approx(expected, rel=0.01)
        assert payload["low_confidence"] is False

    def test_manifest_pressure_fit(self, tmp_path, capsys):
        pressures = [6890.0, 13800.0, 27600.0]
        entries = []
        for i, p in enumerate(pressures):
            csv_path = tmp_path / f"curve{i}.csv"
            arm = self.make_curve_csv(csv_path, p)
            entries.append({"pressure": p, "csv": csv_path.name})
        manifest = tmp_path / "manifest.json"
        manifest.write_text(
            json.dumps(
                {"schema_version": 1, "lever_arm": arm, "curves": entries}
            )
        )
        out = tmp_path / "fit.json"
        code = run_cli(
            ["fit", "--manifest", str(manifest), "--json-out", str(out), "--plot"]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        expected_slope = math.pi * RADIUS ** 3 * math.sin(math.pi / 8)
        assert payload["slope_Nm_per_Pa"] == pytest.approx(expected_slope, rel=1e-6)
        assert (tmp_path / "fit.png").exists()


class TestSearchCommand:
    def test_solutions_json_reparses(self, tmp_path):
        spec = write_spec(tmp_path)
        out = tmp_path / "sols.json"
        code = run_cli(
            [
                "search",
                "--spec",
                str(spec),
                "--problem",
                "small_first",
                "--json-out",
                str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["solutions"]
        for sol in payload["solutions"]:
            chain = specfile.chain_from_json(sol["chain"])
            assert len(chain.units) == 2


class TestExitCodes:
    def test_unknown_subcommand_exits_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "irjoint.cli", "bogus"],
            capture_output=True,
            text=True,
            env=subprocess_env(),
        )
        assert proc.returncode == 2

    def test_missing_spec_file_exits_2(self, tmp_path, capsys):
        code = run_cli(
            [
                "sequence",
                "--spec",
                str(tmp_path / "none.json"),
                "--max-tension",
                "10",
                "--json-out",
                str(tmp_path / "x.json"),
            ]
        )
        assert code == 2
        err = json.loads(capsys.readouterr().err)
        assert err["error"]["type"] == "SchemaError"

    def test_console_entry_point_runs(self):
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "irjoint.cli",
                "mmax",
                "--pressure",
                "6.89kPa",
                "--radius",
                "33.5mm",
            ],
            capture_output=True,
            text=True,
            env=subprocess_env(),
        )
        assert proc.returncode == 0
        assert "0.8138" in proc.stdout
