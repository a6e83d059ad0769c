import json
import subprocess
import sys

import pytest

from torusmix import cli


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run_cli(["classify", "[[2,1],[1,1]]"], capsys)
    assert code == 0 and "hyperbolic" in out


def test_decide_mixing_matrix(capsys):
    code, out, _ = run_cli(["decide-mixing", "[[2,1],[1,1]]"], capsys)
    assert code == 0 and "Mixing" in out
    code, out, _ = run_cli(["decide-mixing", "[[1,1],[0,1]]"], capsys)
    assert code == 0 and "NotMixing" in out


def test_decide_mixing_family(capsys):
    code, out, _ = run_cli(["decide-mixing", "[[n,n^2-1],[1,n]]", "--json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["answer"] == "Mixing"


def test_json_is_canonical(capsys):
    code, out, _ = run_cli(["decide-mixing", "[[n,n-1],[1,1]]", "--json"], capsys)
    assert code == 0
    assert json.dumps(json.loads(out), sort_keys=True) == out.strip()


def test_decide_joint_powers(capsys):
    code, out, _ = run_cli(
        ["decide-joint", "--powers", "[[2,1],[1,1]]", "[[1,1],[1,2]]"], capsys
    )
    assert code == 0 and "JointlyMixing" in out


def test_decide_relative(capsys):
    code, out, _ = run_cli(
        [
            "decide-relative",
            "--U", "[[1,1],[0,1]]", "--a", "n",
            "--U", "[[1,0],[1,1]]", "--a", "n^2",
        ],
        capsys,
    )
    assert code == 0 and "RelativelyJointlyMixing" in out


def test_witness_triple(capsys):
    code, out, _ = run_cli(
        [
            "witness-triple",
            "[[2,1],[1,1]]", "[[1,1],[1,2]]", "[[0,-1],[1,3]]",
            "--json",
        ],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["witness"]) == 3


def test_correlate(capsys):
    code, out, _ = run_cli(
        ["correlate", "--x", "1,0", "--y=-1,0", "--M", "[[1,0],[0,1]]"], capsys
    )
    assert code == 0 and "1" in out


def test_estimate_uses_env_default(capsys, monkeypatch):
    monkeypatch.setenv("TORUSMIX_Q", "64")
    code, out, _ = run_cli(
        ["estimate", "--G", "rect 0 1/2 0 1/2 @ 2", "--G", "rect 0 1/2 0 1/2 @ 2",
         "--M", "[[1,0],[0,1]]", "--json"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["Q"] == 64
    assert payload["estimate"] == "1/4"


def test_csv_output(tmp_path, capsys):
    dest = tmp_path / "scan.csv"
    code, _, _ = run_cli(
        ["scan-conjecture", "--T", "[[2,1],[1,1]]", "--S", "[[5,2],[2,1]]",
         "--rect", "rect 0 1/2 0 1/2 @ 2", "--Q", "256", "--n", "1..2",
         "--csv", str(dest)],
        capsys,
    )
    assert code == 0
    text = dest.read_text()
    assert text.startswith("# torusmix-report")
    assert "n,estimate,error_bound" in text


def test_krengel(capsys):
    code, out, _ = run_cli(
        ["krengel", "--f", "1,0;0,1", "--T", "[[2,1],[1,1]]", "--json"], capsys
    )
    assert code == 0
    assert json.loads(out)["modulus"] >= 1


def test_find_unipotent(capsys):
    code, out, _ = run_cli(
        ["find-unipotent", "--gen", "[[1,1],[0,1]]", "--L", "1"], capsys
    )
    assert code == 0 and "NoneUpTo" not in out
    code, out, _ = run_cli(
        ["find-unipotent", "--gen", "[[2,1],[1,1]]", "--L", "3"], capsys
    )
    assert code == 0 and "NoneUpTo(3)" in out


def test_scenarios(capsys):
    code, out, _ = run_cli(["scenarios"], capsys)
    assert code == 0
    assert "fail" not in out.lower() or "0 fail" in out.lower()


def test_bad_matrix_exits_2(capsys):
    code, _, err = run_cli(["classify", "[[2,1],[1,2]]"], capsys)
    assert code == 2 and err


def test_bad_usage_exits_2():
    proc = subprocess.run(
        [sys.executable, "-m", "torusmix.cli", "decide-joint"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


def test_module_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "torusmix.cli", "decide-mixing", "[[2,1],[1,1]]"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "Mixing" in proc.stdout
