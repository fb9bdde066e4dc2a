import hashlib
import json
import subprocess
import sys

import pytest

from nnrank.cli import main
from nnrank.claims import CLAIMS, run_claims
from nnrank.constructions import build_A

A_CSV_SHA256 = "f1df4303aae002c8e04df64ec04b5e0043bb0f318cbb6f7259398b96f749971e"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cert_file(tmp_path, capsys):
    path = tmp_path / "cert_A.json"
    assert main(["emit", "A", "--cert", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def test_emit_A_csv(capsys):
    code, out, _ = run(capsys, "emit", "A", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 21 and all(len(l.split(",")) == 21 for l in lines)
    assert lines[0] == "2,2,2,1,0,0,0,0,0,0,0,0,0,0,0,0,0,1,1,1,1"
    assert hashlib.sha256(out.encode()).hexdigest() == A_CSV_SHA256


def test_emit_C_json(capsys):
    code, out, _ = run(capsys, "emit", "C", "--params", "1,1,1,1,1")
    doc = json.loads(out)
    assert code == 0 and doc["rows"] == doc["cols"] == 5 and doc["field"] == "Q"


def test_emit_M1_json(capsys):
    code, out, _ = run(capsys, "emit", "M1", "--format", "json")
    doc = json.loads(out)
    assert doc["field"] == "Q(sqrt 2)" and doc["entries"][0][0] == "0+1*sqrt(2)"
    assert doc["entries"][2][3] == "1+1/2*sqrt(2)"


def test_emit_quadratic_params(capsys):
    code, out, _ = run(capsys, "emit", "B", "--params", "1-1/2*sqrt(2),1-1/2*sqrt(2)")
    assert code == 0 and json.loads(out)["entries"][0][0] == "1-1/2*sqrt(2)"


@pytest.mark.parametrize("argv", [
    ["emit", "C", "--params", "1,1"],
    ["emit", "B", "--params", "-1"],
    ["emit", "M1", "--format", "csv"],
    ["emit", "Z"],
    ["emit", "B", "--params", "1/0"],
    ["emit"],
    ["frobnicate"],
])
def test_emit_bad_params(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_verify_ok(capsys, cert_file):
    code, out, _ = run(capsys, "verify", str(cert_file), "A")
    assert code == 0
    assert json.loads(out)["summary"] == "19 factors, sum exact, all nonnegative"


def test_verify_tampered(capsys, cert_file, tmp_path):
    doc = json.loads(cert_file.read_text())
    doc["factors"][6]["v"][20] = "2"  # one entry bumped
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(bad), "A")
    rep = json.loads(out)
    assert code == 1 and rep["first_mismatch"] is not None and not rep["sum_matches"]


def test_verify_negative_entry(capsys, tmp_path):
    bad = tmp_path / "neg.json"
    bad.write_text(json.dumps({"field": "Q", "m": 1, "n": 1, "factors": [{"u": ["-1"], "v": ["-1"]}]}))
    m = tmp_path / "one.json"
    m.write_text(json.dumps({"rows": 1, "cols": 1, "field": "Q", "entries": [["1"]]}))
    code, out, _ = run(capsys, "verify", str(bad), str(m))
    assert code == 1 and not json.loads(out)["all_nonnegative"]


def test_verify_wrong_dimensions(capsys, cert_file):
    code, _, err = run(capsys, "verify", str(cert_file), "V")
    assert code == 2 and "21x21" in err


def test_verify_parse_error(capsys, tmp_path):
    bad = tmp_path / "trunc.json"
    bad.write_text('{"field": "Q", "m": 1')
    code, _, _ = run(capsys, "verify", str(bad), "V")
    assert code == 2
    code, _, _ = run(capsys, "verify", str(tmp_path / "missing.json"), "V")
    assert code == 2


def test_bounds(capsys, cert_file, tmp_path):
    code, out, _ = run(capsys, "bounds", "V")
    rep = json.loads(out)
    assert code == 0 and rep["rank_lb"] == 3 and rep["rectangle_cover_lb"] == 4
    code, out, _ = run(capsys, "bounds", "A", "--cert", str(cert_file), "--cover")
    rep = json.loads(out)
    assert rep["bracket"][1] == 19 and rep["bracket"][0] <= 19 and len(rep["cover"]) == rep["rectangle_cover_lb"]
    code, out, _ = run(capsys, "bounds", "ones4x4")
    assert json.loads(out)["bracket"] == [1, None]


def test_bounds_target_from_file(capsys, tmp_path):
    path = tmp_path / "v.csv"
    assert main(["emit", "V", "--format", "csv", "-o", str(path)]) == 0
    code, out, _ = run(capsys, "bounds", str(path))
    assert json.loads(out)["rectangle_cover_lb"] == 4


def test_bounds_invalid_cert(capsys, cert_file, tmp_path):
    doc = json.loads(cert_file.read_text())
    del doc["factors"][0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "bounds", "A", "--cert", str(bad))
    assert code == 2 and "certificate" in err


def test_claims_all_pass(capsys):
    code, out, _ = run(capsys, "claims")
    rows = json.loads(out)
    assert code == 0
    assert [r["id"] for r in rows] == [c[0] for c in CLAIMS]
    statuses = {r["id"]: r["status"] for r in rows}
    assert statuses.pop("rankplus-A-over-Q-at-least-20") == "SKIPPED"
    assert set(statuses.values()) == {"PASS"}


def test_claims_filter(capsys):
    code, out, _ = run(capsys, "claims", "--filter", "rankplus-V-equals-4")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 1 and rows[0]["status"] == "PASS"
    code, _, _ = run(capsys, "claims", "--filter", "no-such-claim")
    assert code == 2


def test_claims_idempotent():
    first = [r.to_json_obj() for r in run_claims()]
    assert first == [r.to_json_obj() for r in run_claims()]


def test_claims_detect_corrupted_A():
    bad = build_A().replace(1, 1, 3)
    results = {r.id: r for r in run_claims(build_A=lambda: bad)}
    assert results["A-block-decomposition"].status == "FAIL"
    assert results["rankplus-A-at-most-19"].status == "FAIL"
    assert results["rankplus-V-equals-4"].status == "PASS"


def test_claims_pretty(capsys):
    code, out, _ = run(capsys, "claims", "--pretty", "--filter", "rankplus-A-over-Q-at-least-20")
    assert code == 0 and out.startswith("SKIPPED")


def test_nmf_cli(capsys, tmp_path):
    table = tmp_path / "res.csv"
    code, out, _ = run(capsys, "nmf", "V", "--k", "4", "--max-iters", "500", "--restarts", "2", "--csv", str(table))
    doc = json.loads(out)
    assert code == 0 and doc["restarts_run"] == 2 and doc["monotone"]
    assert table.read_text().startswith("restart,residual,iterations")
    code, out, _ = run(capsys, "nmf", "A", "--k", "1", "--max-iters", "1000")
    assert json.loads(out)["residual"] > 0.3


def test_nmf_bad_flags(capsys):
    assert run(capsys, "nmf", "A", "--k", "0")[0] == 2
    assert run(capsys, "nmf", "A")[0] == 2
    assert run(capsys, "nmf", "A", "--k", "x")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nnrank", "claims", "--filter", "rankplus-V-equals-4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
