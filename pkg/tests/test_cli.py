import json

import pytest

from pgca.cli import main
from pgca.derivations import Derivation, Window
from pgca.exprio import save_instance
from pgca.algebra import H, I, J, L
from pgca.twolocal import ANCHORS, TwoLocalInstance


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.mark.parametrize(
    "x, y, expected", [("L[1]", "L[2]", "L[3]"), ("H[1]", "J[2]", "-J[3]"), ("I[1]", "I[5]", "0")]
)
def test_bracket(capsys, x, y, expected):
    code, out = run(capsys, "bracket", x, y)
    assert (code, out.strip()) == (0, expected)


def test_bracket_input_errors(capsys):
    assert run(capsys, "bracket", "L[1", "L[2]")[0] == 2
    code, doc = run_json(capsys, "bracket", "Ib[1]", "L[2]")
    assert code == 2 and doc["error"]["code"] == "BasisMismatch"


def test_der_solve(capsys):
    code, doc = run_json(capsys, "der-solve", "--window", "12", "--interior", "6", "--degree", "0")
    assert code == 0 and doc["dimension"] == 5 and doc["contains_D"] is True
    code, doc = run_json(capsys, "der-solve", "--window", "12", "--interior", "6", "--degree", "2")
    assert code == 0 and doc["dimension"] == 4
    code, doc = run_json(capsys, "der-solve", "--window", "2", "--interior", "1", "--degree", "3")
    assert code == 2 and doc["error"]["code"] == "WindowTooSmall"
    code, doc = run_json(capsys, "der-solve", "--window", "12", "--interior", "9", "--degree", "0")
    assert code == 2 and doc["error"]["code"] == "InvalidWindow"


def test_replay(capsys):
    code, doc = run_json(capsys, "replay", "--lemma", "3.4", "--p", "1", "--window", "10")
    assert code == 0 and doc["dimension"] == 3
    code, doc = run_json(capsys, "replay", "--lemma", "3.2", "--i", "5", "--window", "14")
    assert code == 0 and doc["basis"] == []
    code, doc = run_json(capsys, "replay", "--lemma", "3.3", "--x", "I[2]+J[5]", "--window", "24")
    assert code == 0 and doc["dimension"] == 2 and doc["basis"] == ["I[2]", "J[5]"]
    code, doc = run_json(capsys, "replay", "--lemma", "3.1ii", "--window", "6")
    assert code == 0 and doc["details"]["lambda_forced_zero"] is True
    code, doc = run_json(capsys, "replay", "--lemma", "3.5", "--x", "H[0]+I[2]")
    assert code == 0 and doc["details"]["case"] == "2.1b"


def test_replay_failures_and_bad_params(capsys):
    code, doc = run_json(capsys, "replay", "--lemma", "3.5", "--x", "H[0]+I[2]", "--probes", "2")
    assert code == 1 and doc["error"]["code"] == "ProbeSetTooSmall"
    code, doc = run_json(capsys, "replay", "--lemma", "3.4")
    assert code == 2 and doc["error"]["code"] == "InvalidParameter"
    code, doc = run_json(capsys, "replay", "--lemma", "3.3", "--x", "I[2]", "--probes", "a,b")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["replay", "--lemma", "9.9"])
    assert info.value.code == 2


def _write(tmp_path, inst):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(save_instance(inst)))
    return str(path)


def test_extract(capsys, tmp_path):
    w = Window(12)
    inst = TwoLocalInstance.induced(Derivation.ad(H(0)), [*ANCHORS, L(2)], w)
    code, out = run(capsys, "extract", "--file", _write(tmp_path, inst))
    assert code == 0 and out.splitlines() == ["inner: H[0]", "lambda: 0"]
    inst = TwoLocalInstance.induced(Derivation(), ANCHORS, w)
    code, doc = run_json(capsys, "extract", "--file", _write(tmp_path, inst))
    assert code == 0 and doc["derivation"] == {"inner": "0", "outer": "0"}
    inst = inst.replaced(2, H(3))
    code, doc = run_json(capsys, "extract", "--file", _write(tmp_path, inst))
    assert code == 1 and doc["error"]["code"] == "NotInSpan"
    inst = TwoLocalInstance.induced(Derivation(), [*ANCHORS, J(1)], w).replaced(3, I(1))
    code, doc = run_json(capsys, "extract", "--file", _write(tmp_path, inst))
    assert code == 1 and doc["error"]["code"] == "TableMismatch" and doc["error"]["point"] == "J[1]"


def test_extract_schema_errors(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"table": []}))
    code, doc = run_json(capsys, "extract", "--file", str(path))
    assert code == 2 and doc["error"]["path"] == "/window"
    path.write_text("{not json")
    assert run(capsys, "extract", "--file", str(path))[0] == 2
    path.write_text(json.dumps({"window": {"radius": 12}, "table": [{"point": "L[0]", "value": "0"}]}))
    code, doc = run_json(capsys, "extract", "--file", str(path))
    assert code == 2 and doc["error"]["code"] == "MissingAnchor"


@pytest.mark.parametrize("what", ["jacobi", "isomorphism", "leibniz"])
def test_fuzz(capsys, what):
    argv = ("fuzz", "--what", what, "--window", "6", "--samples", "500", "--seed", "7", "--format", "json")
    code, first = run(capsys, *argv)
    assert code == 0
    doc = json.loads(first)
    assert doc["seed"] == 7 and doc["failures"] == 0 and doc["checked"] == 500
    assert run(capsys, *argv) == (0, first)


def test_text_fuzz_echoes_seed(capsys):
    code, out = run(capsys, "fuzz", "--what", "jacobi", "--window", "3", "--samples", "5", "--seed", "11")
    assert code == 0 and "seed 11" in out
