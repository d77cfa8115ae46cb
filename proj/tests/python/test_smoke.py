import pathlib

import pytest

import fsmkit

PROGRAMS = pathlib.Path(__file__).resolve().parents[2] / "programs"
WATERTANK = (PROGRAMS / "watertank.fsm").read_text()


def test_canonical_is_a_fixpoint():
    once = fsmkit.canonical(WATERTANK)
    assert fsmkit.canonical(once) == once


def test_stable_models_watertank():
    models = fsmkit.stable_models(WATERTANK, relative_to=["amt1"])
    assert len(models) == 41
    for m in models:
        f = m["funcs"]
        assert f["amt1"] == (0 if m["preds"]["flush"] else f["amt0"] + 1)


def test_methods_agree():
    a = fsmkit.stable_models(WATERTANK, method="reduct")
    b = fsmkit.stable_models(WATERTANK, method="second-order", jobs=2)
    assert a == b


def test_check_stable():
    good = {"funcs": {"amt0": 5, "amt1": 6}, "preds": {"flush": False}}
    bad = {"funcs": {"amt0": 5, "amt1": 3}, "preds": {"flush": False}}
    assert fsmkit.check_stable(WATERTANK, good)
    assert not fsmkit.check_stable(WATERTANK, bad, method="both")


def test_transforms():
    assert fsmkit.is_tight(WATERTANK)
    assert not fsmkit.is_tight("pred p.\npred q.\nintensional p, q.\np :- q.\nq :- p.\n")
    assert "<->" in fsmkit.completion(WATERTANK)
    assert fsmkit.unfold(WATERTANK)


def test_to_smt():
    script = fsmkit.to_smt(WATERTANK)
    assert script.startswith("(set-logic QF_LIA)")
    assert script == fsmkit.to_smt(WATERTANK)


def test_strong_equivalence():
    head = "pred p.\npred q.\nintensional p, q.\n"
    assert not fsmkit.se_refuted(head + "p :- not q.\n", head + "p :- not q.\np :- not not p, not q.\n", 1)
    assert fsmkit.se_refuted(head + "p :- not q.\n", head + "{ p }.\n")


def test_errors():
    with pytest.raises(fsmkit.ParseError):
        fsmkit.canonical("sort s.\nobject a : s\n")
    with pytest.raises(fsmkit.FsmkitError):
        fsmkit.canonical("pred p.\np(a).\n")
    with pytest.raises(fsmkit.FragmentError):
        fsmkit.to_smt("pred p.\npred q.\nintensional p, q.\np :- q.\nq :- p.\n")
