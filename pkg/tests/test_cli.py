import csv
import json
import math
import shutil
import subprocess
from pathlib import Path

import pytest

from specasym.cli import main

SPECS = Path(__file__).resolve().parents[1] / "specs"

SIGMA_XI = [
    [{"xiPower": [1, 0], "matrix": [[0, 1], [1, 0]]},
     {"xiPower": [0, 1], "matrix": [[0, {"re": 0, "im": -1}], [{"re": 0, "im": 1}, 0]]}],
]


def laplacian_spec(**extra):
    spec = {
        "name": "flat-laplacian",
        "kind": "symbolic",
        "n": 2,
        "fiberDim": 1,
        "order": 2,
        "components": [[{"xiPower": [2, 0], "matrix": 1}, {"xiPower": [0, 2], "matrix": 1}]],
        "cuts": [{"theta": 1.5 * math.pi, "thetaPrime": 2.5 * math.pi}],
        "k": [1, 2],
        "assertions": [{"quantity": "gap", "k": 1, "expected": {"re": 0, "im": 2 * math.pi ** 2},
                        "tol": 1e-9}],
    }
    spec.update(extra)
    return spec


def write(tmp_path, spec, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(spec))
    return str(path)


def stderr_record(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_run_symbolic_outputs(tmp_path):
    out = tmp_path / "out"
    assert main(["run", write(tmp_path, laplacian_spec()), "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["summary"] == {"assertions": 1, "failedAssertions": 0}
    assert "total" in json.loads((out / "timings.json").read_text())
    with (out / "gaps.csv").open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["operator", "theta", "thetaPrime", "k", "re(gap)", "im(gap)",
                       "re(resPk)", "im(resPk)", "depth", "tol"]
    assert len(rows) == 3


def test_report_is_byte_identical(tmp_path):
    spec = write(tmp_path, laplacian_spec())
    for d in ("a", "b"):
        assert main(["run", spec, "--out", str(tmp_path / d)]) == 0
    for name in ("report.json", "gaps.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_failed_assertion_exit_code(tmp_path):
    spec = laplacian_spec(assertions=[{"quantity": "gap", "k": 1, "expected": 1.0}])
    assert main(["run", write(tmp_path, spec), "--out", str(tmp_path / "o")]) == 1


@pytest.mark.parametrize("change", [
    {"cuts": [{"theta": 4 * math.pi, "thetaPrime": 4.5 * math.pi}]},
    {"cuts": [{"theta": 2.0, "thetaPrime": 1.0}]},
    {"order": None},
    {"n": 7},
    {"components": [[{"xiPower": [1, 0], "matrix": 1}]]},
])
def test_schema_errors(tmp_path, capsys, change):
    spec = laplacian_spec(**change)
    spec = {k: v for k, v in spec.items() if v is not None}
    assert main(["run", write(tmp_path, spec), "--out", str(tmp_path / "o")]) == 2
    assert stderr_record(capsys)["error"] == "SchemaError"
    assert not (tmp_path / "o").exists()


def test_unreadable_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["run", str(path)]) == 2
    assert stderr_record(capsys)["error"] == "SchemaError"


def test_computation_error(tmp_path, capsys):
    spec = {
        "name": "sigma-xi", "kind": "symbolic", "n": 2, "fiberDim": 2, "order": 1,
        "components": SIGMA_XI, "cuts": [{"theta": math.pi, "thetaPrime": 2 * math.pi}], "k": [2],
    }
    assert main(["run", write(tmp_path, spec), "--out", str(tmp_path / "o")]) == 3
    rec = stderr_record(capsys)
    assert rec["error"] == "ComputationError"
    assert rec["type"] == "EigenvalueOnCut"
    assert rec["module"]


def test_matrix_subcommand(tmp_path):
    out = tmp_path / "m"
    assert main(["matrix", str(SPECS / "matrix_lower.json"), "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert all(a["status"] == "PASS" for a in report["assertions"])
    header = (out / "projections.csv").read_text().splitlines()[0]
    assert header == "cut,theta,thetaPrime,row,col,re,im"


def test_matrix_subcommand_rejects_symbolic(tmp_path):
    assert main(["matrix", write(tmp_path, laplacian_spec())]) == 2


def test_negative_depth(tmp_path):
    assert main(["run", write(tmp_path, laplacian_spec()), "--depth", "-1"]) == 2


def test_figures(tmp_path):
    pytest.importorskip("matplotlib")
    out = tmp_path / "f"
    assert main(["run", write(tmp_path, laplacian_spec()), "--out", str(out), "--figures"]) == 0
    assert (out / "principal_spectrum.png").stat().st_size > 0
    assert (out / "gaps.png").stat().st_size > 0


@pytest.mark.skipif(shutil.which("specasym") is None, reason="console script not installed")
def test_console_script(tmp_path):
    proc = subprocess.run(["specasym", "run", str(SPECS / "dirac_t2.json"), "--out", str(tmp_path)],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["summary"]["failedAssertions"] == 0
