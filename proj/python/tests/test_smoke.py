import json

import pytest

import setm


def test_sets():
    two = setm.HFSet("{{},{{}}}")
    assert two == setm.numeral(2)
    assert setm.HFSet(2) == two
    assert two.rank == 2
    assert len(two) == 2
    assert setm.numeral(1) in two
    assert str(setm.trcl("{{{}}}")) == "{{},{{}}}"
    assert len(setm.universe(3)) == 16


def test_encode_decode_round_trip():
    for x in setm.universe(3):
        for seed in range(3):
            assert setm.decode(setm.encode([x], seed)) == [x]
    with pytest.raises(ValueError):
        setm.decode("0:[1]\n")


def test_run_end_on_one():
    r = setm.run("end", ["{{}}"], fuel=10)
    assert r["status"] == "halted"
    assert r["steps"] == 3
    assert r["code"] == "0:[] = *\n0:[0]\n0:[1] = **\n"


def test_run_reports_failures():
    r = setm.run("member", [0, 2], fuel=5)
    assert r["status"] == "fuel-exhausted"
    assert setm.run("erase", [0])["status"] == "crashed"
    with pytest.raises(ValueError):
        setm.run("start l0\nl0 1 => 1 q l0\n", [0])


def test_decider():
    for x in setm.universe(2):
        for y in setm.universe(2):
            out = setm.fm_eval("member", [x, y], 3)
            assert out == [setm.numeral(1 if x in y else 0)]


def test_eval_and_compile():
    assert setm.eval("(vn_succ (proj 1 1))", [1]) == setm.numeral(2)
    assert setm.eval("(mu (char_in (proj 2 2) (proj 2 1)))", ["{{},{{}}}"]) == setm.numeral(2)
    with pytest.raises(setm.RecParseError):
        setm.eval("(mu (char_in (proj 2 2) (proj 2 1)))", [0], tier="pREC")
    with pytest.raises(setm.EvalError):
        setm.eval("(mu (vn_succ (proj 2 1)))", [0], fuel=500)
    m = setm.compile("trcl")
    assert m.num_rules > 0
    assert setm.run(m, ["{{{}}}"], fuel=10_000_000)["output"] == [setm.HFSet("{{},{{}}}")]
    assert setm.Machine.parse(m.to_stm()).num_rules == m.num_rules


def test_equiv():
    r = setm.equiv("upair", rank=1, seeds=2)
    assert r["ok"]
    assert r["cases"] == 8
    report = json.loads(r["json"])
    assert report["summary"]["agree"] == 8
    assert {c["verdict"] for c in report["cases"]} == {"agree"}
