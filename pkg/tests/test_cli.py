import json

import pytest

from ground_kit.calculus import Derivation, RuleId, is_valid
from ground_kit.cli import main, run
from ground_kit.config import CAP_ENV, CalculusConfig, caps_from_env


def lines(argv):
    code, out, _ = run(argv)
    return code, out.splitlines()


@pytest.mark.parametrize("argv, code, out", [
    (["grounds", "~(p | q)"], 0, ["{~p, ~q}"]),
    (["grounds", "p | q", "--star"], 0, ["{p}", "{q}", "{p, q}"]),
    (["grounds", "p | q", "--am"], 0, ["{p}", "{q}", "{p, q}"]),
    (["grounds", "~p"], 0, []),
    (["check", "{p, q} < p & q"], 0, ["yes"]),
    (["check", "{~p} < ~(p | q)"], 1, ["no"]),
    (["check", "{p, q} < p | q", "--am"], 0, ["yes"]),
    (["check", "{p, q} < p | q", "--star", "--no-star"], 1, ["no"]),
    (["parse", "p|q&r"], 0, ["p | q & r"]),
    (["prove", "{p} < ~p"], 1, ["not derivable"]),
])
def test_commands(argv, code, out):
    assert lines(argv) == (code, out)


@pytest.mark.parametrize("claim, rules", [
    ("{~q} < ~(p & q)", [RuleId.AxNegAndR]),
    ("{p} < ~~p", [RuleId.AxNegNeg]),
    ("{p, r} < (p | q) & r", [RuleId.AxAnd, RuleId.ElimOrL]),
])
def test_prove(claim, rules):
    code, out, err = run(["prove", claim, "--verify"])
    assert code == 0 and "verified" in err
    d = Derivation.from_json(out)
    assert d.rules() == rules and is_valid(d)


@pytest.mark.parametrize("argv", [
    ["grounds", "p &"], ["check", "{} < p"], ["check", "p < q"], ["parse", "p $ q"], ["tree", ""],
])
def test_input_errors(argv):
    code, out, err = run(argv)
    assert code == 2 and "parse error" in err and out == ""


def test_usage_error():
    assert run(["frobnicate"])[0] == 2
    assert run([])[0] == 2


def test_verify_round_trip(tmp_path, monkeypatch, capsys):
    path = tmp_path / "d.json"
    for flags in ([], ["--format", "json"]):
        code, out, _ = run(["prove", "{p, q} < p | q", "--am", *flags])
        path.write_text(out)
        assert run(["verify", str(path), "--am"])[0] == 0
        code, out, _ = run(["verify", str(path)])
        assert code == 1 and "Am disabled" in out
    d = Derivation.from_json(run(["prove", "{p, r} < (p | q) & r"])[1])
    bad = Derivation(d.rule, d.conclusion, d.premises, 1)
    path.write_text(bad.to_json())
    code, out, _ = run(["verify", str(path), "--format", "json"])
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "no" and doc["payload"]["valid"] is False
    path.write_text("{not json")
    assert run(["verify", str(path)])[0] == 2
    assert run(["verify", str(tmp_path / "missing.json")])[0] == 2
    monkeypatch.setattr("sys.stdin", open(tmp_path / "d.json", "w+"))
    assert main(["verify", "-"]) == 2  # empty stdin
    capsys.readouterr()


def test_json_envelope():
    code, out, err = run(["--format", "json", "grounds", "p | q", "--star"])
    doc = json.loads(out)
    assert code == 0 and set(doc) == {"status", "payload", "diagnostics"}
    assert doc["payload"]["grounds"] == [["p"], ["q"], ["p", "q"]]
    assert doc["payload"]["cfg"] == {"star": True, "am": False}
    code, out, _ = run(["check", "{p} < ~p", "--format", "json"])
    assert code == 1 and json.loads(out)["status"] == "no"
    code, out, _ = run(["parse", "p &", "--format", "json"])
    doc = json.loads(out)
    assert code == 2 and doc["status"] == "error" and doc["diagnostics"]
    doc = json.loads(run(["parse", "~p", "--format", "json"])[1])
    assert doc["payload"]["ast"] == {"imp": [{"atom": "p"}, {"bottom": True}]}


def test_tree():
    code, out = lines(["tree", "p & q"])
    assert code == 0 and sum("label=" in l for l in out) == 3 and not any("feeble" in l for l in out)
    _, out = lines(["tree", "~(p & q)"])
    assert any('label="p & q"' in l and 'feeble="true"' in l for l in out)
    _, out = lines(["tree", "~~(p | q)"])
    assert any('label="p | q"' in l and 'feeble="true"' in l and 'polarity="positive"' in l for l in out)


@pytest.mark.parametrize("f", ["p & q", "(p | q) & r", "~(p & (q | r))"])
def test_compare(f):
    code, out = lines(["compare", f])
    assert code == 0 and out[-1] == "4/4 pass"


def test_compare_pinned():
    code, out = lines(["compare", "p | q", "--star"])
    assert code == 0 and out[-1] == "2/2 pass"
    code, out = lines(["compare", "p | q", "--no-star", "--no-am"])
    assert out[-1] == "1/1 pass"


def test_resource_errors(monkeypatch):
    monkeypatch.setenv(CAP_ENV, "oracle=3")
    code, _, err = run(["compare", "p & q"])
    assert code == 3 and "oracle cap" in err
    monkeypatch.setenv(CAP_ENV, "closure=10")
    code, _, err = run(["grounds", "(a | b) & (c | d) & (e | g)", "--star", "--am"])
    assert code == 3 and "resource limit" in err
    monkeypatch.setenv(CAP_ENV, "bogus")
    assert run(["grounds", "p"])[0] == 2


def test_caps_from_env():
    assert caps_from_env({}) == {"oracle": 14, "closure": 2 ** 20}
    assert caps_from_env({CAP_ENV: "20"}) == {"oracle": 20, "closure": 20}
    assert caps_from_env({CAP_ENV: "oracle=16, closure=4096"}) == {"oracle": 16, "closure": 4096}
    with pytest.raises(ValueError):
        caps_from_env({CAP_ENV: "oracle=x"})


@pytest.mark.parametrize("argv", [
    ["grounds", "~(p & (q | r)) | (r & ~~s)", "--star", "--am"],
    ["compare", "(p | q) & r", "--format", "json"],
    ["tree", "~(p | ~q) & r"],
    ["prove", "{p, q, r} < (p | q) & r", "--star"],
])
def test_deterministic(argv):
    assert run(argv) == run(argv)


def test_flag_matrix_defaults():
    code, out, _ = run(["--format", "json", "check", "{p} < p | q"])
    assert json.loads(out)["payload"]["cfg"] == {"star": False, "am": False}
    assert str(CalculusConfig()) == "star=false,am=false"
