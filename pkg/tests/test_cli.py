import json
import subprocess
import sys

import pytest

from mckay.cli import main

from conftest import CORPUS

SPECS = {name: str(CORPUS / f"{name}.spec") for name in ("cyclic-3-111", "cyclic-7-124", "bd8", "terminal-5-1423", "a2")}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "argv",
    [
        ["group-info", SPECS["bd8"]],
        ["ages", SPECS["cyclic-7-124"]],
        ["mckay", SPECS["bd8"]],
        ["mckay", SPECS["bd8"], "--format", "dot", "--parallel-edges"],
        ["toric", SPECS["cyclic-7-124"]],
        ["toric", SPECS["terminal-5-1423"]],
        ["stringy", SPECS["cyclic-7-124"]],
        ["stringy", SPECS["a2"], "--route", "fan"],
        ["arcs", "--m", "1,2", "--a", "1,1"],
        ["ghilb", SPECS["cyclic-7-124"]],
        ["invariants", SPECS["bd8"], "--poly", "u^4+v^4"],
    ],
)
def test_commands_succeed_and_are_deterministic(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out
    code2, out2, _ = run(capsys, *argv)
    assert out2 == out
    if "dot" in argv:
        return
    code3, js, _ = run(capsys, *argv, "--format", "structured")
    doc = json.loads(js)
    assert code3 == 0
    assert doc["schema"] == "mckay/1" and doc["command"] == argv[0]


def test_group_info_content(capsys):
    code, out, _ = run(capsys, "group-info", SPECS["cyclic-7-124"], "--format", "structured")
    r = json.loads(out)["result"]
    assert r["order"] == 7


def test_mckay_dynkin_label(capsys):
    _, out, _ = run(capsys, "mckay", SPECS["bd8"])
    assert "~D4" in out
    _, dot, _ = run(capsys, "mckay", SPECS["bd8"], "--format", "dot")
    assert dot.startswith("graph mckay {")


def test_stringy_both_routes(capsys):
    code, out, _ = run(capsys, "stringy", SPECS["cyclic-7-124"], "--format", "structured")
    r = json.loads(out)["result"]
    assert code == 0
    assert "L^3 + 3*L^2 + 3*L" in out
    assert r["cross_check"]


def test_stringy_fan_route_unavailable(capsys):
    code, _, err = run(capsys, "stringy", SPECS["terminal-5-1423"], "--route", "fan")
    assert code == 2 and "error" in err
    code, out, _ = run(capsys, "stringy", SPECS["terminal-5-1423"])
    assert code == 0 and "L^4 + 4*L^2" in out


def test_toric_svg_and_subdivide(capsys, tmp_path):
    target = tmp_path / "t.svg"
    code, _, _ = run(capsys, "toric", SPECS["cyclic-7-124"], "--format", "svg", "-o", str(target))
    assert code == 0 and target.read_text().startswith("<svg")
    # n = 4 starts from the single orthant cone; one blowup resolves C^4/(Z/2)
    half = str(CORPUS / "half-1111.spec")
    code, out, _ = run(capsys, "toric", half)
    assert code == 0 and "smooth=False" in out
    code, out, _ = run(capsys, "toric", half, "--subdivide", "1/2,1/2,1/2,1/2")
    assert code == 0 and "smooth=True" in out and "L^4 - 1" in out


def test_input_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.spec"
    bad.write_text("kind: abelian-diagonal\nn: 3\ngenerator: 3 1 1 2\n")
    assert run(capsys, "ages", str(bad))[0] == 2
    assert run(capsys, "ages", str(tmp_path / "missing.spec"))[0] == 2
    assert run(capsys, "toric", SPECS["cyclic-3-111"], "--format", "dot")[0] == 2
    assert run(capsys, "toric", SPECS["bd8"])[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "arcs", "--m", "1,x")[0] == 2
    assert run(capsys, "invariants", SPECS["bd8"], "--poly", "u^^2")[0] == 2
    assert run(capsys, "ghilb", SPECS["bd8"])[0] == 2


def test_invariants_relation(capsys):
    binds = ["--bind", "x=u^4+v^4", "--bind", "y=u^2*v^2", "--bind", "z=u*v*(u^4-v^4)"]
    code, out, _ = run(capsys, "invariants", "--relation", "z^2 - y*x^2 + 4*y^3", *binds)
    assert code == 0 and "holds" in out and "does not" not in out
    code, out, _ = run(capsys, "invariants", "--relation", "z^2 - y*x^2 + 3*y^3", *binds)
    assert "does not hold" in out


def test_verify_shipped_corpus(capsys):
    code, out, _ = run(capsys, "verify", str(CORPUS))
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("PASS")


def test_verify_wrong_golden_exits_1(capsys, tmp_path):
    text = (CORPUS / "cyclic-7-124.spec").read_text().replace("expect.order: 7", "expect.order: 8")
    (tmp_path / "x.spec").write_text(text)
    code, out, _ = run(capsys, "verify", str(tmp_path))
    assert code == 1
    assert "expected '8', got '7'" in out


def test_verify_empty_corpus_warns(capsys, tmp_path):
    code, out, err = run(capsys, "verify", str(tmp_path))
    assert code == 0
    assert "empty" in err and "empty" not in out
    code, out, _ = run(capsys, "verify", str(tmp_path), "--format", "structured")
    assert json.loads(out)["result"]["warnings"]


def test_console_script_matches_module():
    res = subprocess.run([sys.executable, "-m", "mckay.cli", "ages", SPECS["cyclic-3-111"]], capture_output=True, text=True)
    assert res.returncode == 0 and "age" in res.stdout
