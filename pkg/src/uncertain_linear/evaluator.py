"""Evaluate formulas to truth values.

``&``/``+`` evaluate under the Max Overlap heuristic, ``*``/``|`` under
Independence.  ``A -o B`` is evaluated as ``A^ | B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from . import truth
from .formula import (
    Atom, Bang, Bottom, Dual, Formula, Lollipop, One, Par, Plus, Quest, Tensor, Top, With, Zero,
    children, render,
)
from .truth import Constant, TruthValue, UniverseConfig


class UnboundAtomError(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"unbound atom {self.name}"


class EnvironmentFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Environment:
    bindings: Mapping[str, TruthValue]
    cfg: UniverseConfig

    def __post_init__(self):
        frozen = MappingProxyType(dict(self.bindings))
        for name, tv in frozen.items():
            try:
                tv.check_universe(self.cfg)
            except ValueError as exc:
                raise ValueError(f"binding for {name}: {exc}") from None
        object.__setattr__(self, "bindings", frozen)

    @classmethod
    def of(cls, N: float, **bindings) -> "Environment":
        """Shorthand: ``Environment.of(100, A=(0.5, 20))``."""
        tvs = {k: v if isinstance(v, TruthValue) else TruthValue(*v) for k, v in bindings.items()}
        return cls(tvs, UniverseConfig(N))

    def lookup(self, name: str) -> TruthValue:
        try:
            return self.bindings[name]
        except KeyError:
            raise UnboundAtomError(name) from None


_CONSTANTS = {Top: Constant.TOP, Zero: Constant.ZERO, One: Constant.ONE, Bottom: Constant.BOTTOM}


def evaluate(f: Formula, env: Environment) -> TruthValue:
    cfg = env.cfg
    if isinstance(f, Atom):
        return env.lookup(f.name)
    if isinstance(f, Dual):
        return truth.negate(evaluate(f.body, env))
    if isinstance(f, With):
        return truth.and_additive(evaluate(f.left, env), evaluate(f.right, env))
    if isinstance(f, Plus):
        return truth.or_additive(evaluate(f.left, env), evaluate(f.right, env))
    if isinstance(f, Tensor):
        return truth.and_multiplicative(evaluate(f.left, env), evaluate(f.right, env), cfg)
    if isinstance(f, Par):
        return truth.or_multiplicative(evaluate(f.left, env), evaluate(f.right, env), cfg)
    if isinstance(f, Lollipop):
        return evaluate(Par(Dual(f.left), f.right), env)
    if isinstance(f, Bang):
        return truth.bang(evaluate(f.body, env))
    if isinstance(f, Quest):
        return truth.quest(evaluate(f.body, env))
    return truth.constant_tv(_CONSTANTS[type(f)], cfg)


@dataclass(frozen=True)
class Report:
    """A formula node with its evaluated truth value and its subreports."""

    formula: Formula
    value: TruthValue
    children: tuple = field(default=())

    def lines(self, indent: str = "  ") -> list[str]:
        out = []

        def walk(node, depth):
            out.append(f"{indent * depth}{render(node.formula)}  =  {node.value}")
            for c in node.children:
                walk(c, depth + 1)

        walk(self, 0)
        return out

    def to_dict(self) -> dict:
        return {
            "formula": render(self.formula),
            "strength": self.value.strength,
            "count": _json_count(self.value.count),
            "children": [c.to_dict() for c in self.children],
        }


def _json_count(n: float):
    return "inf" if math.isinf(n) else n


def evaluate_report(f: Formula, env: Environment) -> Report:
    # A -o B is reported through its expansion so each child carries a value
    if isinstance(f, Lollipop):
        inner = evaluate_report(Par(Dual(f.left), f.right), env)
        return Report(f, inner.value, inner.children)
    subs = tuple(evaluate_report(c, env) for c in children(f))
    return Report(f, evaluate(f, env), subs)


# -- environment files -----------------------------------------------------------

def parse_environment(text: str) -> Environment:
    """Parse the line-oriented environment format.

    The first nonblank line is ``universe <N>``; every later line binds
    ``<atom> <strength> <count>`` where count may be ``inf``.  ``#`` starts
    a comment.
    """
    cfg = None
    bindings = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if cfg is None:
            if len(parts) != 2 or parts[0] != "universe":
                raise EnvironmentFormatError(f"line {lineno}: expected 'universe <N>'")
            try:
                cfg = UniverseConfig(float(parts[1]))
            except ValueError as exc:
                raise EnvironmentFormatError(f"line {lineno}: {exc}") from None
            continue
        if len(parts) != 3:
            raise EnvironmentFormatError(f"line {lineno}: expected '<atom> <strength> <count>'")
        name, s, n = parts
        if name in bindings:
            raise EnvironmentFormatError(f"line {lineno}: atom {name} bound twice")
        try:
            Atom(name)
            count = math.inf if n == "inf" else float(n)
            if math.isinf(count) and n != "inf" or math.isnan(count):
                raise ValueError(f"bad count {n!r}")
            tv = TruthValue(float(s), count)
            tv.check_universe(cfg)
        except ValueError as exc:
            raise EnvironmentFormatError(f"line {lineno}: {exc}") from None
        bindings[name] = tv
    if cfg is None:
        raise EnvironmentFormatError("missing 'universe <N>' line")
    return Environment(bindings, cfg)


def load_environment(path) -> Environment:
    return parse_environment(Path(path).read_text(encoding="utf-8"))
