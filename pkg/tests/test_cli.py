import csv
import json
import subprocess
import sys

import pytest

from prymcert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_dp3_anticanonical(capsys):
    code, out, _ = run(capsys, "check", "--surface", "dp3", "--divisor", "3,1,1,1,1,1,1", "--n", "1")
    rec = json.loads(out)
    assert code == 0 and rec["numerics"]["prymDim"] == 6
    assert rec["verdict"] == "IrreducibleSymplectic"
    assert list(rec) == ["schemaVersion", "surface", "divisor", "numerics", "checks", "verdict", "toolVersion"]


def test_check_p2(capsys):
    code, out, _ = run(capsys, "check", "--surface", "p2", "--divisor", "1", "--n", "3")
    assert code == 0 and json.loads(out)["numerics"]["prymDim"] == 18


def test_check_inconclusive(capsys):
    code, out, _ = run(capsys, "check", "--surface", "dp2", "--divisor", "3,1,1,1,1,1,1,1")
    rec = json.loads(out)
    assert code == 1 and rec["checks"]["veryAmpleC"]["status"] == "fail"
    assert rec["verdict"] == "Inconclusive"


def test_check_human(capsys):
    code, out, _ = run(capsys, "check", "--surface", "dp3", "--divisor", "3,1,1,1,1,1,1", "--human")
    assert code == 0 and "verdict   IrreducibleSymplectic" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--surface", "dp9", "--divisor", "3"],
        ["check", "--surface", "dp3", "--divisor", "3,1,1"],
        ["check", "--surface", "dp3", "--divisor", "x,1,1,1,1,1,1"],
        ["check", "--surface", "dp3", "--divisor", "1,1,1,1,0,0,0"],
        ["check", "--surface", "dp3", "--divisor", "3,1,1,1,1,1,1", "--n", "0"],
        ["check", "--surface", "dp3"],
        ["nonsense"],
    ],
)
def test_check_bad_input_exits_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 2
    assert capsys.readouterr().err


def _lines(path):
    return [json.loads(x) for x in path.read_text().splitlines()]


def test_search_dp3(tmp_path, capsys):
    out = tmp_path / "cat.jsonl"
    code, _, _ = run(capsys, "search", "--surface", "dp3", "--max-a", "4", "--max-n", "2", "--out", str(out), "--jobs", "1")
    recs = _lines(out)
    assert code == 0 and recs
    anti = [r for r in recs if r["divisor"]["a"] == 3 and r["divisor"]["b"] == [1] * 6]
    assert {r["divisor"]["n"]: r["numerics"]["prymDim"] for r in anti} == {1: 6, 2: 18}
    four = [r for r in recs if r["divisor"]["a"] == 4 and r["divisor"]["b"] == [2, 1, 1, 1, 1, 1]]
    assert {r["divisor"]["n"]: r["numerics"]["prymDim"] for r in four} == {1: 12, 2: 38}
    keys = [(r["divisor"]["a"], r["divisor"]["b"], r["divisor"]["n"]) for r in recs]
    assert len({str(k) for k in keys}) == len(keys)
    assert [k[0] for k in keys] == sorted(k[0] for k in keys)
    # appending again adds nothing
    size = out.stat().st_size
    code, _, err = run(capsys, "search", "--surface", "dp3", "--max-a", "4", "--max-n", "2", "--out", str(out))
    assert code == 0 and out.stat().st_size == size and err.startswith("0 new")
    code, out_text, _ = run(capsys, "verify", str(out))
    assert code == 0


def test_search_jobs_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "search", "--surface", "dp5", "--max-a", "5", "--max-n", "2", "--out", str(a), "--jobs", "1")
    run(capsys, "search", "--surface", "dp5", "--max-a", "5", "--max-n", "2", "--out", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes() and a.read_bytes()


def test_search_empty_and_unwritable(tmp_path, capsys):
    out = tmp_path / "empty.jsonl"
    code, _, _ = run(capsys, "search", "--surface", "dp3", "--max-a", "0", "--max-n", "2", "--out", str(out))
    assert code == 0 and out.exists() and out.read_text() == ""
    code, _, err = run(capsys, "search", "--surface", "dp3", "--max-a", "3", "--max-n", "1", "--out", str(tmp_path / "no" / "x.jsonl"))
    assert code == 2 and "cannot" in err
    code, _, _ = run(capsys, "search", "--surface", "dp3", "--max-a", "-1", "--max-n", "1", "--out", str(out))
    assert code == 2


def test_search_csv(tmp_path, capsys):
    out = tmp_path / "cat.csv"
    code, _, _ = run(capsys, "search", "--surface", "p2", "--max-a", "2", "--max-n", "3", "--out", str(out), "--format", "csv")
    rows = list(csv.DictReader(out.open()))
    assert code == 0 and len(rows) == 6
    assert [r["prymDim"] for r in rows if r["a"] == "1"] == ["4", "10", "18"]


def test_verify_detects_tampering(tmp_path, capsys):
    out = tmp_path / "cat.jsonl"
    run(capsys, "search", "--surface", "dp4", "--max-a", "3", "--max-n", "1", "--out", str(out))
    recs = _lines(out)
    recs[0]["numerics"]["prymDim"] += 1
    out.write_text("".join(json.dumps(r) + "\n" for r in recs))
    code, text, _ = run(capsys, "verify", str(out))
    assert code == 1 and "prymDim" in text
    code, _, _ = run(capsys, "verify", str(tmp_path / "missing.jsonl"))
    assert code == 0  # an absent file is an empty catalog


def test_json_is_byte_stable(capsys):
    argv = ["check", "--surface", "dp4", "--divisor", "4,2,1,1,1,1", "--n", "2"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_catalog(capsys):
    code, out, err = run(capsys, "catalog")
    assert code == 0 and not err and "dP3 -K" in out
    code, out, _ = run(capsys, "catalog", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 54 and all(r["match"] for r in rows)


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "--l", "1", "--m", "1", "--parity", "--generation-test")
    rep = json.loads(out)
    assert code == 0
    assert (rep["genus"], rep["fixedPoints"], rep["rank"], rep["antiInvariantRank"]) == (3, 4, 6, 4)
    assert rep["parity"]["result"] == "OddPairingWitness" and rep["parity"]["value"] == 1
    assert rep["generationTest"]["generates"]
    code, out, _ = run(capsys, "homology", "--l", "2", "--m", "0", "--parity")
    assert json.loads(out)["parity"] == {"result": "EvenForm"}
    code, _, _ = run(capsys, "homology", "--l", "-1", "--m", "0")
    assert code == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "prymcert", "check", "--surface", "dp8", "--divisor", "3,1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["numerics"]["prymDim"] == 16
