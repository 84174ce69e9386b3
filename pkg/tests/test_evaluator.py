import math

import numpy as np
import pytest

from uncertain_linear import evaluator, truth
from uncertain_linear.evaluator import (
    Environment, EnvironmentFormatError, UnboundAtomError, evaluate, evaluate_report, parse_environment,
)
from uncertain_linear.formula import nnf, parse
from uncertain_linear.suites import random_env, random_formula
from uncertain_linear.truth import INF, TruthValue

from conftest import SAMPLES


@pytest.mark.parametrize("text,expected", [
    ("American & Crazy", (0.3, 10)),
    ("American + Crazy", (0.5, 20)),
    ("American * Crazy", (0.15, 2)),
    ("American | Crazy", (0.65, 28)),
    ("Crazy^", (0.7, 10)),
    ("!Crazy", (0.3, INF)),
    ("American * 1", (0.5, 20)),
    ("American & T", (0.5, 20)),
    ("American + 0", (0.5, 20)),
    ("American | F", (0.5, 20)),
])
def test_examples(american_crazy_env, text, expected):
    assert evaluate(parse(text), american_crazy_env) == TruthValue(*expected)


def test_lollipop_is_par_of_dual(american_crazy_env):
    env = american_crazy_env
    assert evaluate(parse("American -o Crazy"), env) == evaluate(parse("American^ | Crazy"), env)


def test_unbound_atom(american_crazy_env):
    with pytest.raises(UnboundAtomError) as info:
        evaluate(parse("American * Sane"), american_crazy_env)
    assert str(info.value) == "unbound atom Sane"


def test_report_tree(american_crazy_env):
    rep = evaluate_report(parse("(American * Crazy) + Crazy^"), american_crazy_env)
    assert rep.value == TruthValue(0.7, 10)
    assert rep.lines() == [
        "American * Crazy + Crazy^  =  (0.7, 10)",
        "  American * Crazy  =  (0.15, 2)",
        "    American  =  (0.5, 20)",
        "    Crazy  =  (0.3, 10)",
        "  Crazy^  =  (0.7, 10)",
        "    Crazy  =  (0.3, 10)",
    ]
    assert rep.to_dict()["children"][0]["count"] == 2


def test_report_of_lollipop_shows_expansion(american_crazy_env):
    rep = evaluate_report(parse("American -o Crazy"), american_crazy_env)
    assert [c.value for c in rep.children] == [TruthValue(0.5, 20), TruthValue(0.3, 10)]


def test_report_infinite_count_serializes(american_crazy_env):
    assert evaluate_report(parse("!Crazy"), american_crazy_env).to_dict()["count"] == "inf"


def test_environment_file():
    env = evaluator.load_environment(SAMPLES / "american_crazy.env")
    assert env.cfg.N == 100
    assert env.lookup("American") == TruthValue(0.5, 20)


def test_environment_inf_and_comments():
    env = parse_environment("# header\nuniverse 10\nA 0.25 inf  # forever\n\nB 1 3\n")
    assert env.lookup("A") == TruthValue(0.25, INF)
    assert env.lookup("B") == TruthValue(1, 3)


@pytest.mark.parametrize("text,fragment", [
    ("", "missing"),
    ("A 0.5 3", "universe"),
    ("universe 0", "line 1"),
    ("universe 10\nA 0.5", "line 2"),
    ("universe 10\nA 1.5 3", "line 2"),
    ("universe 10\nA 0.5 11", "line 2"),
    ("universe 10\nA 0.5 3\nA 0.5 3", "bound twice"),
    ("universe 10\nT 0.5 3", "line 2"),
    ("universe 10\nA 0.5 1e999", "bad count"),
])
def test_environment_errors(text, fragment):
    with pytest.raises(EnvironmentFormatError, match=fragment):
        parse_environment(text)


def test_environment_is_immutable(american_crazy_env):
    with pytest.raises(TypeError):
        american_crazy_env.bindings["X"] = TruthValue(0, 0)


def test_constants_use_universe(american_crazy_env):
    assert evaluate(parse("1"), american_crazy_env) == TruthValue(1, 100)
    assert evaluate(parse("T"), american_crazy_env) == TruthValue(1, INF)


def test_nnf_preserves_strength_sampled():
    rng = np.random.default_rng(11)
    names = ["A", "B", "C", "D", "E"]
    for _ in range(500):
        f = random_formula(rng, 6, names)
        env = random_env(rng, names)
        assert evaluate(nnf(f), env).strength == pytest.approx(evaluate(f, env).strength, abs=1e-12)


def test_nnf_can_change_counts(american_crazy_env):
    f = parse("(American & Crazy)^")
    env = american_crazy_env
    assert evaluate(f, env).count == 10
    assert evaluate(nnf(f), env).count == 20


def test_evaluate_dispatches_through_truth_module(monkeypatch, american_crazy_env):
    monkeypatch.setattr(truth, "and_additive", lambda a, b: TruthValue(0, 0))
    assert evaluate(parse("American & Crazy"), american_crazy_env) == TruthValue(0, 0)


def test_environment_of_rejects_count_above_universe():
    with pytest.raises(ValueError, match="binding for A"):
        Environment.of(10, A=(0.5, 11))
    assert math.isinf(Environment.of(10, A=(0.5, INF)).lookup("A").count)
