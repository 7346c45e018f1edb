import json
import subprocess
import sys

import pytest

from quatrec.algebra import builtin, commutator
from quatrec.cli import main, run
from quatrec.files import algebra_to_json, load_algebra

from _support import replay


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    root = tmp_path_factory.mktemp("algebras")
    out = {}
    for name in ("hamilton", "split", "lipschitz", "m2q", "m2f2", "ut3q", "hamilton_sqrt2", "qxq", "m2q_plus_q"):
        path = root / f"{name}.json"
        code, _ = run(["examples", "--name", name, "--out", str(path)])
        assert code == 0
        out[name] = str(path)
    bad = algebra_to_json(builtin("hamilton"))
    bad["table"][1][2] = ["0", "0", "0", "-1"]
    (root / "bad.json").write_text(json.dumps(bad))
    out["bad"] = str(root / "bad.json")
    return out


def _witness_algebra(path):
    return load_algebra(path).lift()


def test_recognize_hamilton(files):
    code, rep = run(["recognize", files["hamilton"]])
    assert code == 0 and rep["exit_code"] == 0
    assert rep["result"]["status"] == "quaternion"
    assert rep["result"]["division"]["status"] == "division"
    assert rep["params"] == {"seed": 0, "samples": 64, "height": 10}
    assert len(rep["input"]["sha256"]) == 64


def test_check_m2q(files):
    code, rep = run(["check", files["m2q"]])
    assert code == 1
    hyp = rep["result"]["hypotheses"]
    assert hyp["h2"]["status"] == "holds-symbolic" and hyp["h1"]["status"] == "fails"
    A = _witness_algebra(files["m2q"])
    w = hyp["h1"]["witness"]
    assert replay(A, w)
    assert commutator(A, A.element(w["x"]), A.element(w["y"])) == A.e(1)  # E12


def test_check_hamilton_reaches_implied_h1(files):
    code, rep = run(["check", files["hamilton"]])
    assert code == 0
    assert rep["result"]["hypotheses"]["h1"]["status"] == "holds-implied-by-division"


def test_check_larger_center_is_unknown(files):
    code, rep = run(["check", files["hamilton_sqrt2"]])
    assert code == 2 and rep["result"]["hypotheses"]["h1"]["status"] == "no-violation-sampled"


def test_decompose_hamilton(files):
    code, rep = run(["decompose", files["hamilton"], "--element", "1,2,3,4"])
    assert code == 0 and rep["result"]["coordinates"] == ["1", "2", "3", "4"]


def test_decompose_integral_input_reports_fractions(files):
    code, rep = run(["decompose", files["lipschitz"], "--element", "1,2,3,4"])
    assert code == 0
    assert rep["result"]["fractions"][1] == "(2,0,0,0) / (1,0,0,0)"


@pytest.mark.parametrize("command", ["recognize", "decompose"])
def test_characteristic_two_refusal(files, command):
    argv = [command, files["m2f2"]] + (["--element", "0,1,0,0"] if command == "decompose" else [])
    code, rep = run(argv)
    assert code == 1
    text = json.dumps(rep)
    assert "CharacteristicTwo" in text


def test_center_and_quadratic(files):
    code, rep = run(["center", files["hamilton_sqrt2"]])
    assert code == 0 and rep["result"]["center"]["dim"] == 2
    code, rep = run(["center", files["qxq"]])
    assert code == 1 and replay(_witness_algebra(files["qxq"]), rep["result"]["witnesses"][0])
    code, rep = run(["quadratic", files["hamilton"], "--element", "1,1,0,0"])
    assert code == 0
    cert = rep["result"]["certificate"]
    assert [cert[k][0] for k in "abc"] == ["-4", "8", "-8"]
    code, rep = run(["quadratic", files["hamilton"], "--element", "5,0,0,0"])
    assert code == 0 and rep["result"]["central"] is True


def test_every_refusal_carries_a_replayable_witness(files):
    for name in ("split", "m2q", "m2f2", "ut3q", "qxq", "m2q_plus_q"):
        for command in ("check", "recognize"):
            code, rep = run([command, files[name]])
            if code != 1:
                continue
            ws = rep["result"]["witnesses"]
            assert ws, (name, command)
            A = _witness_algebra(files[name])
            assert all(replay(A, w) for w in ws), (name, command)


@pytest.mark.parametrize(
    "argv",
    [
        ["recognize", "/nonexistent.json"],
        ["decompose", "HAMILTON", "--element", "1,2,3"],
        ["enumerate", "--dim", "4", "--field", "2"],
        ["examples", "--name", "nonsense", "--out", "/tmp/unused.json"],
    ],
)
def test_input_errors_exit_3(files, argv):
    argv = [files["hamilton"] if a == "HAMILTON" else a for a in argv]
    code, rep = run(argv)
    assert code == 3 and rep["result"]["error"]


def test_validation_failure_exit_3_with_triple(files):
    code, rep = run(["recognize", files["bad"]])
    assert code == 3
    assert rep["result"]["witnesses"][0]["kind"] == "associativity"


def test_argument_errors_exit_3():
    with pytest.raises(SystemExit) as err:
        run(["frobnicate"])
    assert err.value.code == 3


def test_enumerate_small(files):
    code, rep = run(["enumerate", "--dim", "2", "--field", "2"])
    assert code == 0 and rep["result"]["noncommutative"] == 0


def test_reports_are_byte_stable(files, capsys):
    outs = []
    for _ in range(2):
        main(["--seed", "5", "recognize", files["hamilton_sqrt2"]])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["params"]["seed"] == 5


def test_global_flags_before_or_after_command(files):
    _, before = run(["--samples", "7", "check", files["m2q"]])
    _, after = run(["check", files["m2q"], "--samples", "7"])
    assert before == after and before["params"]["samples"] == 7


def test_text_format(files, capsys):
    code = main(["--format", "text", "recognize", files["hamilton"]])
    out = capsys.readouterr().out
    assert code == 0 and "status: quaternion" in out and not out.lstrip().startswith("{")


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "quatrec", "decompose", files["hamilton"], "--element", "1,2,3,4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["coordinates"] == ["1", "2", "3", "4"]
