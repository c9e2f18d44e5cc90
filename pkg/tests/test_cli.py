import json
import subprocess
import sys
from pathlib import Path

import pytest

from adsp.cli import main

INST = Path(__file__).resolve().parent.parent / "instances"


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "adsp", *map(str, args)], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def call(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_decide_rigid(capsys):
    code, out, _ = call(capsys, "decide", INST / "rigid_2x2.json")
    assert code == 0
    assert (out["member"], out["root_class"], out["solution_count"]) == (True, "real", "unique")
    assert out["alpha"] == {"center": 2, "arms": [[1], [1], [1]]}
    assert out["lambda"] == {"center": "-3", "arms": [["2"], ["2"], ["2"]]}
    assert out["p_alpha"] == 0


@pytest.mark.parametrize(
    "name, member, mode",
    [
        ("nilpotent_type1", False, "nilpotent"),
        ("nilpotent_type2", False, "nilpotent"),
        ("nilpotent_member", True, "nilpotent"),
        ("not_rigid_2x2", False, "general"),
        ("rigid_3x3", True, "general"),
        ("scalar_pair", True, "nilpotent"),
    ],
)
def test_decide_instances(capsys, name, member, mode):
    code, out, _ = call(capsys, "decide", INST / f"{name}.json")
    assert code == 0 and out["member"] is member and out["mode"] == mode


def test_modes_agree(capsys):
    f = INST / "nilpotent_member.json"
    verdicts = set()
    for mode in ("nilpotent", "general"):
        code, out, _ = call(capsys, "decide", "--mode", mode, f)
        verdicts.add((out["member"], out["root_class"], out["solution_count"]))
    assert verdicts == {(True, "imaginary", "infinite")}


def test_rigid(capsys):
    assert call(capsys, "rigid", INST / "rigid_2x2.json")[1] == {"rigid": True}
    assert call(capsys, "rigid", INST / "nilpotent_member.json")[1] == {"rigid": False}
    assert call(capsys, "rigid", INST / "scalar_pair.json")[1] == {"rigid": True}


def test_roots(capsys):
    _, out, _ = call(capsys, "roots", INST / "rigid_2x2.json")
    assert (out["root_class"], out["p_alpha"], out["r_lambda_count"]) == ("real", 0, 1)
    _, out, _ = call(capsys, "roots", INST / "nilpotent_member.json")
    assert out["root_class"] == "imaginary" and out["p_alpha"] >= 1
    _, out, _ = call(capsys, "roots", INST / "scalar_pair.json")
    assert out["alpha"] == {"center": 1, "arms": [[], []]}


def test_construct_then_verify(capsys, tmp_path):
    sol = tmp_path / "sol.json"
    code, out, _ = call(capsys, "construct", INST / "rigid_3x3.json", "--out", sol)
    assert code == 0 and all(out["verify"].values())
    code, out, _ = call(capsys, "verify", INST / "rigid_3x3.json", sol)
    assert code == 0 and out == {"classes_ok": True, "sum_zero": True, "irreducible": True}


def test_verify_reports_failure_with_exit_zero(capsys, tmp_path):
    sol = tmp_path / "bad.json"
    sol.write_text(json.dumps({"matrices": [[["1", "0"], ["0", "-1"]]] * 3}))
    code, out, _ = call(capsys, "verify", INST / "rigid_2x2.json", sol)
    assert code == 0 and out["sum_zero"] is False


def test_construct_non_rigid_exit_1(capsys):
    code, out, err = call(capsys, "construct", INST / "nilpotent_type1.json")
    assert code == 1 and out is None and "not rigid" in err


def test_bad_input_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = call(capsys, "decide", bad)
    assert code == 1 and out is None and "invalid JSON" in err
    code, out, _ = call(capsys, "decide", tmp_path / "missing.json")
    assert code == 1 and out is None
    bad.write_text(json.dumps({"classes": [{"spectrum": [{"value": "1", "blocks": [1]}]}], "mode": "fast"}))
    assert call(capsys, "decide", bad)[0] == 1


def test_resource_exit_3(capsys):
    code, out, err = call(capsys, "decide", "--mode", "general", "--box-cap", "100", INST / "nilpotent_member.json")
    assert code == 3 and out is None and "exceeds" in err


def test_jobs_and_multiple_files(capsys):
    files = sorted(INST.glob("*.json"))
    _, serial, _ = call(capsys, "decide", *files)
    _, parallel, _ = call(capsys, "decide", "--jobs", "4", *files)
    assert serial == parallel
    assert [r["file"] for r in serial["results"]] == [str(f) for f in files]


def test_deterministic_bytes():
    a = run("decide", INST / "not_rigid_2x2.json")
    b = run("decide", INST / "not_rigid_2x2.json")
    assert a[0] == 0 and a[1] == b[1]
    json.loads(a[1])


def test_internal_error_code():
    from adsp.cli import _exit_code
    from adsp.errors import InternalError, ResourceError, InputError

    assert [_exit_code(e("x")) for e in (InputError, InternalError, ResourceError)] == [1, 2, 3]


def test_fallback_backend_same_output():
    import os

    args = [sys.executable, "-m", "adsp", "decide", "--mode", "general", str(INST / "nilpotent_member.json")]
    outs = []
    for backend in ("python", ""):
        env = {**os.environ, "ADSP_KERNELS": backend}
        proc = subprocess.run(args, capture_output=True, text=True, env=env)
        assert proc.returncode == 0
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
