import io
import json
import subprocess
import sys

import pytest

from qslogic.cli import run
from qslogic.kripke import cat_model, dump_model, eval_formula, load_model
from qslogic.formula import parse
from qslogic.proofs import script_to_dict, theorem_library


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def cat_file(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(dump_model(cat_model()))
    return str(path)


def test_validate_measurement_factive():
    code, out = call("validate", "M |psi> -> |psi>", "--bound", "3", "--class", "T")
    assert code == 0
    assert "ValidUpToBound(3" in out


def test_eval_cat(cat_file):
    code, out = call("eval", "--model", cat_file, "M (|alive> * |dead>)", "--world", "w0")
    assert code == 0
    assert out.strip() == "w0: true"


def test_eval_all_worlds(cat_file):
    code, out = call("eval", "--model", cat_file, "|alive>")
    assert code == 1
    assert out.splitlines() == ["w0: false", "w1: true", "w2: false"]


def test_countermodel(tmp_path):
    target = tmp_path / "cm.json"
    code, out = call("countermodel", "<>|p> -> []|p>", "--bound", "2", "--class", "T",
                     "--out", str(target))
    assert code == 1
    assert "verdict: Countermodel" in out
    m = load_model(target)
    world = next(line.split(": ")[1] for line in out.splitlines() if line.startswith("world:"))
    assert not eval_formula(m, world, parse("<>|p> -> []|p>"))


def test_parse_prints_canonical():
    code, out = call("parse", "[]|p>")
    assert code == 0
    assert "formula: ~(<>(~|p>))" in out
    assert "basic: false" in out


@pytest.mark.parametrize("argv", [
    ["parse", "|a> &"],
    ["parse", "|psi> * |psi>"],
    ["validate"],
    ["frobnicate"],
    ["validate", "|p>", "--class", "S7"],
    ["eval", "|p>", "--model", "/nonexistent/model.json"],
    ["check-proof"],
])
def test_input_errors_exit_three(argv):
    with pytest.raises(SystemExit) as info:
        code, _ = call(*argv)
        raise SystemExit(code)
    assert info.value.code == 3


def test_unknown_exit_code():
    big = " & ".join(f"|x{i}>" for i in range(12))
    code, out = call("validate", f"({big}) \\/ ~({big})", "--bound", "2", "--class", "K")
    assert code == 2
    assert "verdict: Unknown" in out


def test_check_proof_library():
    code, out = call("check-proof", "--library")
    assert code == 0
    assert out.count("status: ok") == len(theorem_library())


def test_check_proof_file(tmp_path):
    data = script_to_dict(theorem_library()["thm-3.3"])
    good = tmp_path / "good.json"
    good.write_text(json.dumps(data))
    assert call("check-proof", str(good))[0] == 0
    data["lines"][2][3] = [3, 3]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out = call("check-proof", str(bad))
    assert code == 1
    assert "line: 3" in out


def test_qderive_inline():
    code, out = call("qderive", "--gamma", "|p>; ~3 |p>", "--alpha", "|p> & ~3 |p>",
                     "--bound", "2", "--class", "S5")
    assert code == 0
    assert out.splitlines()[:2] == ["derivable: yes", "clause: subset"]


def test_qderive_no_explosion(tmp_path):
    gamma = tmp_path / "gamma.txt"
    gamma.write_text("# paraconsistent pair\n|p>\n~3 |p>\n")
    code, out = call("qderive", "--gamma", str(gamma), "--alpha", "|q>",
                     "--bound", "2", "--class", "S5")
    assert code == 1
    assert out.startswith("derivable: no")


def test_sig_file(tmp_path):
    sig = tmp_path / "sig.json"
    sig.write_text(json.dumps({"atoms": ["up", "down"], "perp": [["up", "down"]]}))
    assert call("parse", "~2 |up>", "--sig", str(sig))[1].startswith("formula: |down>")
    assert call("parse", "|side>", "--sig", str(sig))[0] == 3
    assert call("parse", "|side>", "--sig", str(sig), "--auto-atoms")[0] == 0


def test_literal_meas_flag():
    f = "M(|a> * |b>) -> ~<>(|a> & |b>)"
    assert call("validate", f, "--bound", "2", "--class", "T")[0] == 0
    assert call("validate", f, "--bound", "2", "--class", "T", "--literal-meas")[0] == 1


def test_suite_command():
    code, out = call("suite")
    assert code == 0
    assert len(out.splitlines()) == 8
    assert all(line.endswith("PASS") for line in out.splitlines())


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "qslogic", "countermodel", "<>|p> -> []|p>",
            "--bound", "3", "--class", "S4"]
    first = subprocess.run(argv, capture_output=True, text=True)
    second = subprocess.run(argv, capture_output=True, text=True)
    assert first.returncode == second.returncode == 1
    assert first.stdout == second.stdout
