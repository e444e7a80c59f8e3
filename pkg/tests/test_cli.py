"""Command-line surface: exit codes, payload shapes, schemas, determinism."""

import csv
import json
import pathlib
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

jsonschema = pytest.importorskip("jsonschema")
from referencing import Registry, Resource  # noqa: E402  (requires jsonschema>=4)

from pairphase.cli import main  # noqa: E402

_SCHEMA_DIR = pathlib.Path(__file__).resolve().parents[1] / "docs" / "schemas"


def _registry_and_schemas():
    schemas = {}
    resources = []
    for path in _SCHEMA_DIR.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        schemas[path.name] = schema
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources), schemas


_REGISTRY, _SCHEMAS = _registry_and_schemas()


def _validate(payload: dict, schema_name: str) -> None:
    validator = jsonschema.Draft202012Validator(
        _SCHEMAS[schema_name], registry=_REGISTRY
    )
    errors = list(validator.iter_errors(payload))
    assert not errors, [e.message for e in errors]


def _run(*argv: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "pairphase", *argv],
        capture_output=True,
        text=True,
    )


def _strip_timestamp(text: str) -> str:
    return "\n".join(
        line for line in text.splitlines() if '"timestamp"' not in line
    )


class TestMinimize:
    def test_json_payload_validates(self):
        proc = _run("minimize", "--k", "6", "--q", "1.2", "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        _validate(payload, "minimize.schema.json")
        assert payload["kkt"] is not None
        assert payload["clusters"]["left"] + payload["clusters"]["right"] + len(
            payload["clusters"]["interior"]
        ) <= 6

    def test_kkt_is_null_below_one(self):
        proc = _run("minimize", "--k", "4", "--q", "0.5", "--format", "json")
        payload = json.loads(proc.stdout)
        _validate(payload, "minimize.schema.json")
        assert payload["kkt"] is None

    def test_inactive_violation_null_when_all_gaps_active(self):
        proc = _run("minimize", "--k", "3", "--q", "1.0", "--format", "json")
        payload = json.loads(proc.stdout)
        assert payload["kkt"]["max_inactive_violation"] is None

    def test_csv_shape(self):
        proc = _run("minimize", "--k", "4", "--q", "2", "--format", "csv")
        rows = list(csv.reader(proc.stdout.splitlines()))
        assert rows[0] == ["k", "q", "energy", "converged", "x_1", "x_2", "x_3", "x_4"]
        assert len(rows) == 2
        assert rows[1][4:] == ["0.000000", "0.000000", "1.000000", "1.000000"]

    def test_text_positions_use_six_decimals(self):
        proc = _run("minimize", "--k", "3", "--q", "1.0")
        assert "0.500000" in proc.stdout

    def test_output_file(self, tmp_path):
        target = tmp_path / "result.json"
        proc = _run(
            "minimize", "--k", "3", "--q", "1.0",
            "--format", "json", "--output", str(target),
        )
        assert proc.returncode == 0
        _validate(json.loads(target.read_text()), "minimize.schema.json")

    def test_usage_errors_exit_one(self):
        assert _run("minimize", "--k", "0", "--q", "1").returncode == 1
        assert _run("minimize", "--k", "3", "--q", "-2").returncode == 1
        assert _run("minimize", "--k", "3").returncode == 1
        assert _run("minimize", "--k", "3", "--q", "1", "--format", "yaml").returncode == 1


class TestCritical:
    def test_json_payload_validates(self):
        proc = _run("critical", "--k-min", "3", "--k-max", "6", "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        _validate(payload, "critical.schema.json")
        assert [row["k"] for row in payload["rows"]] == [3, 4, 5, 6]

    def test_csv_header(self):
        proc = _run("critical", "--k-min", "3", "--k-max", "4", "--format", "csv")
        assert proc.stdout.splitlines()[0] == "k,value,method,bracket_width"

    def test_invalid_range_exits_one(self):
        assert _run("critical", "--k-min", "5", "--k-max", "4").returncode == 1
        assert _run("critical", "--k-min", "2", "--k-max", "4").returncode == 1


class TestPhaseDiagram:
    def test_csv_svg_and_manifest_sidecar(self, tmp_path):
        out_csv = tmp_path / "phase.csv"
        out_svg = tmp_path / "phase.svg"
        proc = _run(
            "phase-diagram", "--k-min", "3", "--k-max", "4",
            "--q-min", "0.9", "--q-max", "1.5", "--q-steps", "3",
            "--output-csv", str(out_csv), "--output-svg", str(out_svg),
        )
        assert proc.returncode == 0
        rows = list(csv.reader(out_csv.read_text().splitlines()))
        assert rows[0] == [
            "k", "q", "classification", "left_stack",
            "right_stack", "interior_active", "energy",
        ]
        assert len(rows) == 1 + 2 * 3
        classes = {row[2].split(":")[0] for row in rows[1:]}
        assert classes <= {"endpoint_only", "collision_free", "partial_clustering"}
        # k=3 at q=1.5 is past the odd threshold: endpoints only.
        k3_high = next(r for r in rows[1:] if r[0] == "3" and r[1].startswith("1.5"))
        assert k3_high[2] == "endpoint_only"
        root = ET.fromstring(out_svg.read_text())
        assert root.tag.endswith("svg")
        sidecar = json.loads((tmp_path / "phase.csv.manifest.json").read_text())
        _validate(sidecar["manifest"], "manifest.schema.json")
        assert sidecar["manifest"]["parameters"]["rng_seed"] == 42

    def test_svg_embeds_manifest_comment(self, tmp_path):
        out_svg = tmp_path / "phase.svg"
        _run(
            "phase-diagram", "--k-min", "2", "--k-max", "2",
            "--q-min", "1.0", "--q-max", "1.0", "--q-steps", "1",
            "--output-csv", str(tmp_path / "p.csv"), "--output-svg", str(out_svg),
        )
        assert "<!-- manifest:" in out_svg.read_text()

    def test_invalid_grid_exits_one(self):
        proc = _run(
            "phase-diagram", "--k-min", "3", "--k-max", "2",
            "--q-min", "1.0", "--q-max", "2.0", "--q-steps", "2",
        )
        assert proc.returncode == 1


class TestFlow:
    def test_csv_header_and_frames(self, tmp_path):
        out_csv = tmp_path / "flow.csv"
        proc = _run(
            "flow", "--k", "4", "--q", "1.0", "--steps", "120",
            "--record-every", "50", "--output-csv", str(out_csv),
        )
        assert proc.returncode == 0
        rows = list(csv.reader(out_csv.read_text().splitlines()))
        assert rows[0] == ["step", "x_1", "x_2", "x_3", "x_4"]
        assert [r[0] for r in rows[1:]] == ["0", "50", "100", "120"]

    def test_svg_renders(self, tmp_path):
        out_svg = tmp_path / "flow.svg"
        _run(
            "flow", "--k", "3", "--q", "1.0", "--steps", "60",
            "--record-every", "20",
            "--output-csv", str(tmp_path / "f.csv"), "--output-svg", str(out_svg),
        )
        root = ET.fromstring(out_svg.read_text())
        assert root.tag.endswith("svg")
        assert len(root.findall(".//{http://www.w3.org/2000/svg}polyline")) == 3

    def test_bad_tau_exits_one(self):
        assert _run("flow", "--k", "4", "--q", "1", "--tau", "-0.1").returncode == 1


class TestFekete:
    def test_json_payload_validates(self):
        proc = _run("fekete", "--k", "4", "--q-small", "0.02", "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        _validate(payload, "fekete.schema.json")
        dev = payload["max_deviations"]["log_energy_maximizer_vs_small_q_minimizer"]
        assert dev < 0.02

    def test_text_has_three_rows(self):
        proc = _run("fekete", "--k", "5", "--q-small", "0.01")
        lines = proc.stdout.splitlines()
        assert sum(line.startswith(("lobatto", "log_energy", "small_q")) for line in lines) == 3

    def test_q_small_range_enforced(self):
        assert _run("fekete", "--k", "4", "--q-small", "0.5").returncode == 1
        assert _run("fekete", "--k", "4", "--q-small", "0").returncode == 1
        assert _run("fekete", "--k", "1", "--q-small", "0.01").returncode == 1


class TestVerify:
    def test_passing_suite_exits_zero_and_validates(self):
        proc = _run("verify", "--suite", "branches", "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        _validate(payload, "verify.schema.json")
        assert payload["passed"] is True
        assert [c["number"] for c in payload["criteria"]] == [1, 2, 3, 12]

    def test_text_format_has_one_line_per_criterion(self):
        proc = _run("verify", "--suite", "branches")
        lines = [l for l in proc.stdout.splitlines() if l.startswith(("PASS", "FAIL"))]
        assert len(lines) == 4

    def test_unknown_suite_exits_one(self):
        assert _run("verify", "--suite", "everything").returncode == 1

    def test_repeat_runs_are_byte_identical_modulo_timestamp(self):
        first = _run("verify", "--suite", "branches", "--format", "json")
        second = _run("verify", "--suite", "branches", "--format", "json")
        assert _strip_timestamp(first.stdout) == _strip_timestamp(second.stdout)
        assert first.stdout.encode() != b""


class TestEntryPoints:
    def test_module_and_function_agree(self):
        proc = _run("critical", "--k-min", "3", "--k-max", "3", "--format", "csv")
        assert proc.returncode == 0
        assert main(["critical", "--k-min", "3", "--k-max", "3", "--format",
                     "csv", "--output", "/dev/null"]) == 0

    def test_version_flag(self):
        proc = _run("--version")
        assert proc.returncode == 0
        assert "pairphase" in proc.stdout

    def test_minimize_determinism_across_processes(self):
        first = _run("minimize", "--k", "7", "--q", "1.0", "--format", "json")
        second = _run("minimize", "--k", "7", "--q", "1.0", "--format", "json")
        assert _strip_timestamp(first.stdout) == _strip_timestamp(second.stdout)
