import json
import os

import pytest

from phantomlab import cli

from conftest import INSTANCES

L0 = os.path.join(INSTANCES, "lambda0")
L1 = os.path.join(INSTANCES, "lambda1")
B = os.path.join(INSTANCES, "bundles")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_ext_over_dual_numbers(capsys):
    r = run_json(capsys, "ext", "--M", f"{L0}/k.json", "--N", f"{L0}/k.json", "--deg", "1")
    assert r["dim"] == 1


def test_phantom_verdicts(capsys):
    ctx = f"{L1}/ctx_n1.json"
    assert run_json(capsys, "phantom", "--ctx", ctx, "--f", f"{L1}/P1_to_L1.json")["verdict"] == "Yes"
    r = run_json(capsys, "phantom", "--ctx", ctx, "--f", f"{L1}/id_S2.json")
    assert r["verdict"] == "No" and "witness" in r
    assert run_json(capsys, "invertible", "--ctx", ctx, "--f", f"{L1}/S2_into_S2+P1.json")["verdict"] == "Yes"


def test_stable_commands(capsys):
    ctx = f"{L1}/ctx_n1.json"
    r = run_json(capsys, "stablehom", "--ctx", ctx, "--M", f"{L1}/S2.json", "--N", f"{L1}/S2.json")
    assert r["hom"]["dim"] == 1
    r = run_json(capsys, "T", "--ctx", ctx, "--f", f"{L1}/id_S2.json")
    assert r["is_iso"] and not r["is_zero"]
    r = run_json(capsys, "syz", "--ctx", ctx, "--M", f"{L1}/S2.json", "--N", f"{L1}/S2.json")
    assert r["bijective"]
    assert run_json(capsys, "cosyz", "--ctx", ctx, "--M", f"{L1}/S1.json")["density"]
    r = run_json(capsys, "nproj", "--ctx", ctx, "--M", f"{L1}/V.json")
    assert r["n_projective"] == "Yes" and r["ext_witness_simple"] is None


def test_p1_commands(capsys):
    assert run_json(capsys, "p1", "split", "--bundle", f"{B}/diag_x2_xinv.json")["type"] == [2, -1]
    r = run_json(capsys, "p1", "split", "--bundle", f"{B}/x_1_0_xinv.json")
    assert r["type"] == [1, -1] and r["reassembles"]
    assert run_json(capsys, "p1", "ext", "--E", f"{B}/O0.json", "--F", f"{B}/O-2.json")["dim"] == 1
    assert run_json(capsys, "p1", "hom", "--E", f"{B}/O-2.json", "--F", f"{B}/O3.json")["dim"] == 6
    assert run_json(capsys, "p1", "embed", "--bundle", f"{B}/random_rank3_gf5.json")["ok"]


def test_exit_codes(capsys):
    assert run(capsys, "hom", "--M", "/nonexistent.json", "--N", "/nonexistent.json")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "ext", "--M", f"{L0}/k.json", "--N", f"{L0}/k.json", "--deg", "-1")[0] == 2
    # wrong number of coordinates
    code, _, err = run(capsys, "compose", "--ctx", f"{L1}/ctx_n1.json", "--M", f"{L1}/S2.json",
                       "--N", f"{L1}/S2.json", "--K", f"{L1}/S2.json", "--x", "1 0", "--y", "1")
    assert code == 2 and "expected 1" in err


def test_text_format_and_out(capsys, tmp_path):
    out = tmp_path / "r.txt"
    code, stdout, _ = run(capsys, "p1", "split", "--bundle", f"{B}/O3.json", "--format", "text", "--out", str(out))
    assert code == 0 and stdout == ""
    assert "type" in out.read_text()


def test_verify_deterministic_and_seed_env(capsys, monkeypatch):
    a = run(capsys, "verify", "--suite", "stable0", "--seed", "3")
    b = run(capsys, "verify", "--suite", "stable0", "--seed", "3")
    assert a[0] == 0 and a[1] == b[1]
    monkeypatch.setenv("PHANTOMLAB_SEED", "9")
    c = run(capsys, "verify", "--suite", "stable0", "--seed", "3")
    assert json.loads(c[1])["seed"] == 9
    monkeypatch.setenv("PHANTOMLAB_SEED", "x")
    assert run(capsys, "verify", "--suite", "stable0")[0] == 2
