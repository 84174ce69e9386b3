"""Built-in property suites run by ``ull selftest``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import evaluator, formula as fm, oracle, truth
from .truth import TruthValue, UniverseConfig

TOL = 1e-12


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: int
    example: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = f"{verdict}  {self.name:<24} {self.checked} checks, {self.failures} failures ({self.seconds:.2f}s)"
        if self.example:
            text += f"\n      first failure: {self.example}"
        return text

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "failures": self.failures, "example": self.example}


class _Tally:
    def __init__(self):
        self.checked = 0
        self.failures = 0
        self.example = ""

    def expect(self, ok: bool, describe: Callable[[], str]):
        self.checked += 1
        if not ok:
            self.failures += 1
            if not self.example:
                self.example = describe()


def close(x: float, y: float, tol: float = TOL) -> bool:
    if math.isinf(x) or math.isinf(y):
        return x == y
    return abs(x - y) <= tol


def tv_close(a: TruthValue, b: TruthValue, tol: float = TOL) -> bool:
    return close(a.strength, b.strength, tol) and close(a.count, b.count, tol)


# -- random generators -----------------------------------------------------------

def random_tv(rng: np.random.Generator, N: float) -> TruthValue:
    return TruthValue(float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.0, N)))


def random_env(rng: np.random.Generator, names, N: float = 100.0) -> evaluator.Environment:
    return evaluator.Environment({n: random_tv(rng, N) for n in names}, UniverseConfig(N))


_UNARY = (fm.Dual, fm.Bang, fm.Quest)
_BINARY = (fm.Tensor, fm.Par, fm.With, fm.Plus, fm.Lollipop)
_CONSTS = (fm.TOP, fm.ZERO, fm.ONE, fm.BOTTOM)


def random_formula(rng: np.random.Generator, depth: int, names) -> fm.Formula:
    """A random formula of depth at most ``depth`` over ``names``."""
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.1:
            return _CONSTS[rng.integers(len(_CONSTS))]
        return fm.Atom(names[rng.integers(len(names))])
    if rng.random() < 0.3:
        return _UNARY[rng.integers(len(_UNARY))](random_formula(rng, depth - 1, names))
    kind = _BINARY[rng.integers(len(_BINARY))]
    return kind(random_formula(rng, depth - 1, names), random_formula(rng, depth - 1, names))


# -- suites ------------------------------------------------------------------------

def _families():
    # looked up on each call so a patched module is what gets tested
    return (
        ("max-overlap", truth.tnorm_min, truth.tconorm_max),
        ("independence", truth.tnorm_product, truth.tconorm_probsum),
    )


def tnorm_suite(samples: int = 100_000, seed: int = 0) -> _Tally:
    """T-norm and t-conorm laws on strengths for both families."""
    rng = np.random.default_rng(seed)
    t = _Tally()
    families = _families()
    for a, b, c in rng.uniform(0.0, 1.0, size=(samples, 3)).tolist():
        lo, hi = (a, b) if a <= b else (b, a)
        for name, conj, disj in families:
            for label, op, unit in (("and", conj, 1.0), ("or", disj, 0.0)):
                t.expect(close(op(a, b), op(b, a)), lambda: f"{name} {label} not commutative at {a}, {b}")
                t.expect(close(op(op(a, b), c), op(a, op(b, c))),
                         lambda: f"{name} {label} not associative at {a}, {b}, {c}")
                t.expect(op(lo, c) <= op(hi, c) + TOL and op(c, lo) <= op(c, hi) + TOL,
                         lambda: f"{name} {label} not monotone at {lo} <= {hi}, {c}")
                t.expect(close(op(a, unit), a) and close(op(unit, a), a),
                         lambda: f"{name} {label} unit fails at {a}")
            t.expect(close(disj(a, b), 1.0 - conj(1.0 - a, 1.0 - b)),
                     lambda: f"{name} conorm is not dual to its norm at {a}, {b}")
    return t


def distributivity_suite(samples: int = 100_000, seed: int = 1, N: float = 100.0) -> _Tally:
    """Tensor over plus and par over with, on both components."""
    rng = np.random.default_rng(seed)
    t = _Tally()
    A, B, C = fm.Atom("A"), fm.Atom("B"), fm.Atom("C")
    pairs = (
        (fm.Tensor(A, fm.Plus(B, C)), fm.Plus(fm.Tensor(A, B), fm.Tensor(A, C))),
        (fm.Par(A, fm.With(B, C)), fm.With(fm.Par(A, B), fm.Par(A, C))),
    )
    for _ in range(samples):
        env = random_env(rng, "ABC", N)
        for lhs, rhs in pairs:
            x, y = evaluator.evaluate(lhs, env), evaluator.evaluate(rhs, env)
            t.expect(tv_close(x, y), lambda: f"{fm.render(lhs)} = {x} but {fm.render(rhs)} = {y}")
    return t


def demorgan_suite(samples: int = 100_000, seed: int = 2, N: float = 100.0) -> _Tally:
    """Strength-level De Morgan for both families."""
    rng = np.random.default_rng(seed)
    t = _Tally()
    cfg = UniverseConfig(N)
    pairs = (
        (truth.and_additive, truth.or_additive),
        (truth.or_additive, truth.and_additive),
        (lambda a, b: truth.and_multiplicative(a, b, cfg), lambda a, b: truth.or_multiplicative(a, b, cfg)),
        (lambda a, b: truth.or_multiplicative(a, b, cfg), lambda a, b: truth.and_multiplicative(a, b, cfg)),
    )
    for _ in range(samples):
        a, b = random_tv(rng, N), random_tv(rng, N)
        for op, co in pairs:
            lhs = truth.negate(op(a, b)).strength
            rhs = co(truth.negate(a), truth.negate(b)).strength
            t.expect(close(lhs, rhs), lambda: f"De Morgan fails for {a}, {b}: {lhs} vs {rhs}")
    return t


def nnf_suite(samples: int = 10_000, seed: int = 3, depth: int = 6) -> _Tally:
    """Normalizing a formula leaves its evaluated strength unchanged."""
    rng = np.random.default_rng(seed)
    t = _Tally()
    names = ("A", "B", "C", "D", "E")
    for _ in range(samples):
        f = random_formula(rng, depth, names)
        env = random_env(rng, names)
        x = evaluator.evaluate(f, env).strength
        y = evaluator.evaluate(fm.nnf(f), env).strength
        t.expect(close(x, y), lambda: f"{fm.render(f)}: {x} vs nnf {y}")
    return t


def isomorphism_suite(samples: int = 10_000, seed: int = 4, N: float = 100.0) -> _Tally:
    """``!(A & B)`` and ``!A * !B`` both carry infinite evidence."""
    rng = np.random.default_rng(seed)
    t = _Tally()
    lhs = fm.parse("!(A & B)")
    rhs = fm.parse("!A * !B")
    for _ in range(samples):
        env = random_env(rng, "AB", N)
        x, y = evaluator.evaluate(lhs, env), evaluator.evaluate(rhs, env)
        t.expect(math.isinf(x.count) and math.isinf(y.count), lambda: f"counts {x.count}, {y.count}")
    return t


def max_overlap_cases(max_N: int = 20):
    """Every realizable pair of (n, p) specs for each universe size up to ``max_N``."""
    for N in range(1, max_N + 1):
        u = oracle.Universe(N)
        specs = [(n, Fraction(k, n)) for n in range(1, N + 1) for k in range(n + 1)]
        groundings = oracle.ground_max_overlap(specs, u)
        for (na, pa), ga in zip(specs, groundings):
            for (nb, pb), gb in zip(specs, groundings):
                yield N, (na, pa, nb, pb), ga, gb


def oracle_equivalence_suite(max_N: int = 20) -> _Tally:
    """Exact set semantics on nested groundings against the min/max formulas."""
    t = _Tally()
    for N, (na, pa, nb, pb), ga, gb in max_overlap_cases(max_N):
        conj = oracle.exact_eval_conj(ga, gb)
        disj = oracle.exact_eval_disj(ga, gb)
        want_conj = (min(pa, pb), min(na, nb))
        want_disj = (max(pa, pb), max(na, nb))
        t.expect(tuple(conj) == want_conj and tuple(disj) == want_disj,
                 lambda: (f"N={N} A=({pa}, {na}) B=({pb}, {nb}): conj {_fmt(conj)} vs {_fmt(want_conj)}, "
                          f"disj {_fmt(disj)} vs {_fmt(want_disj)}"))
    return t


def _fmt(pn) -> str:
    p, n = pn
    return f"({p}, {n})"


SUITES: dict[str, Callable[[], _Tally]] = {
    "t-norm": tnorm_suite,
    "distributivity": distributivity_suite,
    "demorgan-strength": demorgan_suite,
    "nnf-strength": nnf_suite,
    "exponential-isomorphism": isomorphism_suite,
    "oracle-equivalence": oracle_equivalence_suite,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    start = time.perf_counter()
    tally = SUITES[name](**kwargs)
    return SuiteResult(name, tally.failures == 0, tally.checked, tally.failures, tally.example,
                       time.perf_counter() - start)
