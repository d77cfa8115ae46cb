import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = pathlib.Path(__file__).resolve().parent / "data"
PROGRAMS = ROOT / "programs"
SCHEMAS = ROOT / "schemas"
BIN = os.environ.get("FSMKIT_BIN", str(ROOT / "build" / "fsmkit"))
Z3 = os.environ.get("FSMKIT_TEST_SOLVER", "")


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("FSMKIT_SOLVER", None)
    if env:
        e.update(env)
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=e, timeout=300)


def validate(text, schema):
    doc = json.loads(text)
    jsonschema.validate(doc, json.loads((SCHEMAS / f"{schema}.schema.json").read_text()))
    return doc


def test_schemas_are_valid():
    for path in SCHEMAS.glob("*.schema.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))


def test_parse_echo_round_trips():
    first = run("parse", PROGRAMS / "watertank.fsm")
    assert first.returncode == 0
    tmp = DATA / "_echo.fsm"
    tmp.write_text(first.stdout)
    try:
        second = run("parse", tmp)
        assert second.stdout == first.stdout
    finally:
        tmp.unlink()


def test_parse_json():
    r = run("parse", "--json", PROGRAMS / "car.fsm")
    assert r.returncode == 0
    doc = validate(r.stdout, "parse")
    assert doc["intensional"]


def test_parse_error_has_span():
    tmp = DATA / "_bad.fsm"
    tmp.write_text("sort s.\nobject a : s.\np(a).\n")
    try:
        r = run("parse", tmp)
    finally:
        tmp.unlink()
    assert r.returncode == 2
    assert "_bad.fsm:3:" in r.stderr


def test_usage_errors():
    assert run("stable", PROGRAMS / "watertank.fsm", "--no-such-flag").returncode == 2
    assert run("stable", DATA / "missing.fsm").returncode == 2
    assert run().returncode == 2


def test_stable_watertank():
    r = run("stable", PROGRAMS / "watertank.fsm", "--relative-to", "amt1")
    assert r.returncode == 0
    doc = validate(r.stdout, "stable")
    assert doc["intensional"] == ["amt1"]
    assert doc["count"] == len(doc["models"]) > 0
    for m in doc["models"]:
        a0, a1, flush = m["funcs"]["amt0"], m["funcs"]["amt1"], m["preds"]["flush"]
        assert a1 == (0 if flush else a0 + 1)


def test_stable_methods_agree_and_jobs_are_deterministic():
    base = run("stable", PROGRAMS / "switch.fsm")
    assert base.returncode == 0
    both = run("stable", PROGRAMS / "switch.fsm", "--method", "both")
    assert both.returncode == 0
    assert json.loads(both.stdout)["models"] == json.loads(base.stdout)["models"]
    parallel = run("--jobs", 4, "stable", PROGRAMS / "switch.fsm")
    assert parallel.stdout == base.stdout


def test_stable_none_exits_one():
    r = run("stable", DATA / "loop.fsm", "--relative-to", "p")
    doc = validate(r.stdout, "stable")
    # p :- q. q :- p. relative to p: q is free, p follows q
    assert r.returncode == 0 and doc["count"] == 2
    tmp = DATA / "_none.fsm"
    tmp.write_text("pred p.\nintensional p.\np :- not p.\n")
    try:
        r = run("stable", tmp)
    finally:
        tmp.unlink()
    assert r.returncode == 1
    assert validate(r.stdout, "stable")["count"] == 0


def test_check():
    ok = run("check", PROGRAMS / "watertank.fsm", DATA / "watertank_stable.json")
    assert ok.returncode == 0
    assert validate(ok.stdout, "check")["stable"]
    bad = run("check", PROGRAMS / "watertank.fsm", DATA / "watertank_unstable.json")
    assert bad.returncode == 1
    doc = validate(bad.stdout, "check")
    assert doc["model"] and not doc["stable"] and doc["witness"] is not None
    so = run("check", PROGRAMS / "watertank.fsm", DATA / "watertank_unstable.json", "--method", "second-order")
    assert so.returncode == 1


def test_check_tight():
    r = run("check-tight", PROGRAMS / "watertank.fsm")
    assert r.returncode == 0 and r.stdout == "tight\n"
    r = run("check-tight", DATA / "loop.fsm")
    assert r.returncode == 1 and r.stdout.startswith("not tight: ")
    doc = validate(run("check-tight", "--json", DATA / "loop.fsm").stdout, "tight")
    assert not doc["tight"] and doc["cycle"][0] == doc["cycle"][-1]


def test_text_transforms():
    for cmd in ("complete", "unfold", "desort"):
        r = run(cmd, PROGRAMS / "watertank.fsm")
        assert r.returncode == 0 and r.stdout.strip()
    r = run("ground", PROGRAMS / "watertank.fsm")
    assert r.returncode == 0 and "amt1" in r.stdout
    r = run("ground", PROGRAMS / "watertank.fsm", "--reduct", DATA / "watertank_stable.json")
    assert r.returncode == 0


def test_eliminate():
    r = run("eliminate", PROGRAMS / "watertank.fsm", "--predicate", "flush")
    assert r.returncode == 0 and "flush_fn" in r.stdout
    r = run("eliminate", PROGRAMS / "watertank.fsm", "--function", "amt1", "--as", "level1")
    assert r.returncode == 0 and "pred level1 : level." in r.stdout
    assert run("eliminate", PROGRAMS / "watertank.fsm").returncode == 2


def test_to_smt_deterministic():
    a = run("to-smt", PROGRAMS / "car.fsm", "--logic", "QF_NRA")
    b = run("to-smt", PROGRAMS / "car.fsm", "--logic", "QF_NRA")
    assert a.returncode == 0 and a.stdout == b.stdout
    assert a.stdout == (ROOT / "tests" / "golden" / "car.smt2").read_text()
    r = run("to-smt", DATA / "loop.fsm")
    assert r.returncode == 2 and "p" in r.stderr


@pytest.mark.skipif(not Z3, reason="no SMT solver configured")
def test_to_smt_with_solver():
    r = run("to-smt", PROGRAMS / "watertank.fsm", "--models", 100, env={"FSMKIT_SOLVER": Z3})
    assert r.returncode == 0
    doc = validate(r.stdout, "smt-models")
    stable = json.loads(run("stable", PROGRAMS / "watertank.fsm").stdout)["models"]
    key = lambda m: json.dumps([m["funcs"], m["preds"]], sort_keys=True)
    assert sorted(map(key, doc["models"])) == sorted(map(key, stable))
    # the environment wins over the flag
    r = run("to-smt", PROGRAMS / "watertank.fsm", "--solver", "/nonexistent", env={"FSMKIT_SOLVER": Z3})
    assert r.returncode == 0


def test_compare_switch():
    r = run("compare", PROGRAMS / "switch_causal.fsm", "--semantics", "cm")
    assert r.returncode == 0
    doc = validate(r.stdout, "compare")
    assert doc["accepted"] == {"cm": 5}
    r = run("compare", PROGRAMS / "switch.fsm", "--semantics", "fsm,if,cm,clingcon,ljn,lw", "--all")
    doc = validate(r.stdout, "compare")
    assert doc["accepted"]["fsm"] == 4
    assert set(doc["unavailable"]) == {"cm", "clingcon", "ljn", "lw"}
    assert len(doc["rows"]) == doc["interpretations"]


def test_se_check():
    r = run("se-check", DATA / "choice_free.fsm", DATA / "choice_free_extra.fsm", "--max-universe", 1)
    assert r.returncode == 0
    assert not validate(r.stdout, "se-check")["refuted"]
    r = run("se-check", DATA / "choice_free.fsm", DATA / "choice.fsm")
    assert r.returncode == 1
    doc = validate(r.stdout, "se-check")
    assert doc["refuted"] and doc["counterexample"] is not None
