import io
import json
from pathlib import Path


from tropsection.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_o1_json(capsys):
    code, out, _ = run(capsys, "o1", str(DATA / "c3-genus4.json"), "--json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 3
    assert set(data) >= {"command", "inputs", "order", "invariant_factors", "class", "convention"}


def test_json_is_byte_stable(capsys):
    outs = {run(capsys, "o2-tree", str(DATA / "doubled-genus2.json"), "--json")[1] for _ in range(3)}
    assert len(outs) == 1
    assert json.loads(outs.pop())["order"] == 2


def test_stable_check_failure(capsys):
    code, _, err = run(capsys, "stable-check", str(DATA / "bad-degree.json"))
    assert code == 1 and "degree" in err


def test_o2_on_non_tree_is_hypothesis_failure(capsys):
    code, _, err = run(capsys, "o2-tree", str(DATA / "c3-genus4.json"))
    assert code == 2 and "hypothesis" in err


def test_missing_file(capsys):
    assert run(capsys, "o1", str(DATA / "nope.json"))[0] == 1


def test_specializes(capsys):
    a, b = str(DATA / "c3-contracted.json"), str(DATA / "c3-genus4.json")
    assert run(capsys, "specializes", a, b)[1].strip() == "yes"
    assert run(capsys, "specializes", b, a)[1].strip() == "no"


def test_snf_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, "snf", "--json", stdin="2 4 4\n-6 6 12\n10 -4 -16\n", monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["diagonal"] == [2, 6, 12]
    assert run(capsys, "snf", stdin="1 2\n3\n", monkeypatch=monkeypatch)[0] == 1


def test_eval_word(capsys):
    code, out, _ = run(capsys, "eval-word", "2", "a1 b1 A1 B1 a2 b2 A2 B2", "--json")
    data = json.loads(out)
    assert code == 0 and not any(data["h"]) and not any(data["w"])
    assert run(capsys, "eval-word", "2", "z9")[0] == 1


def test_h1_finite(capsys):
    code, out, _ = run(capsys, "h1-finite", str(DATA / "c2.table"), str(DATA / "c2-neg-z4.module"), "--json")
    assert code == 0 and json.loads(out)["invariant_factors"] == [2]


def test_basepoint_override(capsys):
    code, out, _ = run(capsys, "o1", str(DATA / "c3-genus4.json"), "--base", "v2", "--json")
    assert code == 0 and json.loads(out)["basepoint"] == "v2"
    assert run(capsys, "o1", str(DATA / "c3-genus4.json"), "--base", "zz")[0] == 1
