import io
import json
import subprocess
import sys

import pytest

import kcone.cohomology as cohomology
from kcone.cli import JobConfig, OutputDocument, main, run
from kcone.errors import InvalidInputError

CONIC_JOB = {"variety": {"type": "plane_curve", "polynomial": "z^2 - x*y"}, "trans_deg": "symbolic", "n_min": -2, "n_max": 6}


def write(tmp_path, data, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_conic_document(tmp_path, capsys):
    code, out, _ = run_cli(["--config", write(tmp_path, CONIC_JOB)], capsys)
    assert code == 0
    doc = json.loads(out)
    totals = {t["n"]: t["extra"] for t in doc["totals"]}
    assert totals[1] == {"binom_coeffs": [1]}
    assert totals[2] == {"binom_coeffs": [0, 1]}
    assert doc["timing"] is None
    for sec in doc["sections"]:
        for cell in sec["cells"]:
            assert cell["provenance"] and cell["status"]


def test_numeric_r_serializes_plain_ints(tmp_path, capsys):
    code, out, _ = run_cli(["compute", "--config", write(tmp_path, CONIC_JOB), "--r", "3"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["trans_deg"] == 3
    assert {t["n"]: t["extra"] for t in doc["totals"]}[4] == 1 + 3


def test_byte_determinism(tmp_path, capsys):
    path = write(tmp_path, CONIC_JOB)
    _, a, _ = run_cli(["compute", "--config", path], capsys)
    _, b, _ = run_cli(["compute", "--config", path], capsys)
    assert a == b


def test_round_trip():
    doc, code = run(JobConfig.from_dict(CONIC_JOB))
    assert code == 0
    again = OutputDocument.from_json(doc.to_json())
    assert again == doc and again.to_json() == doc.to_json()


def test_table_format(tmp_path, capsys):
    code, out, _ = run_cli(["--config", write(tmp_path, CONIC_JOB), "--format", "table"], capsys)
    assert code == 0
    assert "K_2 extra: binom(r,1)" in out and "PASS riemann_roch" in out


def test_invalid_polynomial_exit_2(tmp_path, capsys):
    job = {"variety": {"type": "plane_curve", "polynomial": "x^2+x"}}
    code, out, err = run_cli(["--config", write(tmp_path, job)], capsys)
    assert code == 2 and not out and "homogeneous" in err


def test_syntax_error_exit_2(tmp_path, capsys):
    job = {"variety": {"type": "plane_curve", "polynomial": "x^2+*y^2"}}
    code, _, err = run_cli(["--config", write(tmp_path, job)], capsys)
    assert code == 2 and "position" in err


def test_singular_exit_2_names_point(tmp_path, capsys):
    job = {"variety": {"type": "plane_curve", "polynomial": "y^2*z - x^3"}}
    code, _, err = run_cli(["--config", write(tmp_path, job)], capsys)
    assert code == 2 and "(0:0:1)" in err


@pytest.mark.parametrize(
    "job",
    [
        {"variety": {"type": "torus"}},
        {"variety": {"type": "veronese", "ambient_dim": 1}},
        {"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "n_min": 3, "n_max": 1},
        {"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "trans_deg": -1},
        {"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "checks": {"oracle": "yes"}},
        {"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "colour": 1},
        {"variety": {"type": "plane_curve", "polynomial": "x^4+y^4+z^4"}, "t_max": 3},
    ],
)
def test_config_validation_exit_2(tmp_path, capsys, job):
    code, _, err = run_cli(["--config", write(tmp_path, job)], capsys)
    assert code == 2 and "invalid input" in err


def test_bad_json_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run_cli(["--config", str(p)], capsys)[0] == 2


def test_unstabilized_exit_1(tmp_path, capsys):
    job = {"variety": {"type": "plane_curve", "polynomial": "x^5+y^5+z^5"}, "t_max": 5}
    code, out, err = run_cli(["--config", write(tmp_path, job)], capsys)
    assert code == 1 and not out and "t_max" in err


def test_check_failure_exit_1_still_emits(tmp_path, capsys, monkeypatch):
    import kcone.ktheory as kt

    real = kt.riemann_roch_check
    monkeypatch.setattr(kt, "riemann_roch_check", lambda c, m: m != 2 and real(c, m))
    code, out, err = run_cli(["--config", write(tmp_path, CONIC_JOB)], capsys)
    doc = json.loads(out)
    assert code == 1 and "riemann_roch" in err
    assert [c for c in doc["checks"] if c["name"] == "riemann_roch"][0]["details"] == ["m=2"]


def test_quintic_oracle_job(tmp_path, capsys):
    job = {"variety": {"type": "plane_curve", "polynomial": "x^5+y^5+z^5"}, "n_min": -1, "n_max": 1, "checks": {"oracle": True}}
    code, out, _ = run_cli(["--config", write(tmp_path, job)], capsys)
    assert code == 0
    (oracle,) = [c for c in json.loads(out)["checks"] if c["name"] == "oracle"]
    assert oracle["passed"] and len(oracle["details"]) == 2 * 15
    assert all("agree" in d for d in oracle["details"])


def test_oracle_check_command(tmp_path, capsys):
    path = write(tmp_path, {"variety": {"type": "plane_curve", "polynomial": "x^3+y^3+z^3"}})
    code, out, _ = run_cli(["oracle-check", "--config", path, "--m-min", "-2", "--m-max", "2"], capsys)
    assert code == 0 and out.strip().endswith("all agree")
    skew = write(tmp_path, {"variety": {"type": "fixture", "name": "skew_lines"}}, "s.json")
    assert run_cli(["oracle-check", "--config", skew], capsys)[0] == 2


def test_stdin_config(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"variety": {"type": "veronese", "ambient_dim": 1, "degree": 2}, "n_min": 1, "n_max": 2})))
    code, out, _ = run_cli([], capsys)
    assert code == 0 and json.loads(out)["model"]["family"] == "veronese"


def test_selftest_passes(capsys):
    code, out, _ = run_cli(["selftest"], capsys)
    assert code == 0 and "FAIL" not in out


def test_selftest_pinpoints_twist_mutation(capsys, monkeypatch):
    monkeypatch.setattr(cohomology, "canonical_twist", lambda n: n - 2)
    code, out, _ = run_cli(["selftest"], capsys)
    assert code == 1
    assert "FAIL  conic h0(Omega1(t)) = 2t-1" in out


def test_selftest_cap_zero(capsys):
    code, out, _ = run_cli(["selftest", "--torsion-cap", "0"], capsys)
    assert code == 1 and "stabilization not reached" in out


def test_module_entry_point(tmp_path):
    path = write(tmp_path, CONIC_JOB)
    a = subprocess.run([sys.executable, "-m", "kcone", "--config", path], capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "kcone", "--config", path], capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
