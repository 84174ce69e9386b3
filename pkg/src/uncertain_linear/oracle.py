"""Ground truth values in finite observation universes.

The Max Overlap formulas are checked against exact set computations on
nested groundings; the Independence formulas and the detector model are
checked by seeded Monte Carlo.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and not os.environ.get("UNCERTAIN_LINEAR_PURE_PYTHON"):
    BACKEND = "compiled"
    _default = _compiled
else:
    BACKEND = "python"
    _default = _kernels_py


def available_backends() -> list[str]:
    return ["python"] + (["compiled"] if _compiled is not None else [])


def kernels(backend: str | None = None):
    if backend is None:
        return _default
    if backend == "python":
        return _kernels_py
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available in this build")
        return _compiled
    raise ValueError(f"unknown backend {backend!r}")


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class Universe:
    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise OracleError(f"universe size must be a positive integer, got {self.N!r}")


@dataclass(frozen=True)
class Grounding:
    eval_set: frozenset
    positive_set: frozenset

    def __post_init__(self):
        if not self.positive_set <= self.eval_set:
            raise OracleError("positive observations must have been evaluated")

    @property
    def n(self) -> int:
        return len(self.eval_set)

    @property
    def p(self) -> Fraction | None:
        if not self.eval_set:
            return None
        return Fraction(len(self.positive_set), len(self.eval_set))


class ExactResult(NamedTuple):
    p: Fraction | None  # None when there is no evidence to take a proportion over
    n: int


def _as_fraction(p) -> Fraction:
    if isinstance(p, float):
        return Fraction(repr(p))
    if isinstance(p, (Rational, str)):
        return Fraction(p)
    raise OracleError(f"strength must be rational, got {p!r}")


def ground_max_overlap(specs: Sequence[tuple], u: Universe) -> list[Grounding]:
    """Nested groundings for ``(n, p)`` specs, in the order given.

    Observation ids are shared prefixes: an atom evaluated on ``n``
    observations sees ids ``0..n-1`` and its ``p*n`` positives are
    ``0..p*n-1``.  Smaller evaluation sets are therefore subsets of larger
    ones, and positive sets nest the same way.
    """
    out = []
    for n, p in specs:
        if not isinstance(n, int) or n < 0:
            raise OracleError(f"count must be a non-negative integer, got {n!r}")
        if n > u.N:
            raise OracleError(f"count {n} exceeds universe size {u.N}")
        frac = _as_fraction(p)
        if not 0 <= frac <= 1:
            raise OracleError(f"strength {p!r} outside [0, 1]")
        k = frac * n
        if k.denominator != 1:
            raise OracleError(f"strength {p!r} over {n} observations is not a whole tally")
        out.append(Grounding(frozenset(range(n)), frozenset(range(int(k)))))
    return out


def exact_eval_conj(ga: Grounding, gb: Grounding) -> ExactResult:
    shared = ga.eval_set & gb.eval_set
    if not shared:
        return ExactResult(None, 0)
    both = len(shared & ga.positive_set & gb.positive_set)
    return ExactResult(Fraction(both, len(shared)), len(shared))


def exact_eval_disj(ga: Grounding, gb: Grounding) -> ExactResult:
    """Disjunction over the union of evaluated observations.

    An observation counts as positive if it is positive for some property it
    was actually evaluated for.
    """
    union = ga.eval_set | gb.eval_set
    if not union:
        return ExactResult(None, 0)
    positive = ga.positive_set | gb.positive_set
    return ExactResult(Fraction(len(positive), len(union)), len(union))


# -- Monte Carlo -----------------------------------------------------------------

@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        if self.trials == 0:
            return False
        return abs(self.mean - target) <= sigmas * self.std_error + 1e-12

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std_error": self.std_error, "trials": self.trials}


def summarize(samples: np.ndarray) -> McEstimate:
    """Mean and standard error of the finite entries of ``samples``."""
    x = samples[~np.isnan(samples)]
    m = len(x)
    if m == 0:
        return McEstimate(math.nan, math.nan, 0)
    mean = float(x.sum() / m)
    se = float(x.std(ddof=1) / math.sqrt(m)) if m > 1 else 0.0
    return McEstimate(mean, se, m)


@dataclass(frozen=True)
class IndependenceEstimate:
    conj_p: McEstimate
    conj_n: McEstimate
    disj_p: McEstimate
    disj_n: McEstimate

    def to_dict(self) -> dict:
        return {
            "conj": {"p": self.conj_p.to_dict(), "n": self.conj_n.to_dict()},
            "disj": {"p": self.disj_p.to_dict(), "n": self.disj_n.to_dict()},
        }


def _check_prob(name, p):
    if not 0.0 <= p <= 1.0:
        raise OracleError(f"{name} must lie in [0, 1], got {p!r}")


def mc_independence(na: int, pa: float, nb: int, pb: float, u: Universe, trials: int,
                    seed: int, backend: str | None = None) -> IndependenceEstimate:
    """Sample independent evaluation sets and score conjunction and disjunction.

    Each trial draws ``eval_a`` and ``eval_b`` as uniform subsets of sizes
    ``na`` and ``nb``, and gives every observation an A outcome
    ~ Bernoulli(pa) and an independent B outcome ~ Bernoulli(pb).  The
    conjunction is scored on the shared observations; the disjunction on the
    union, where an observation is positive when either outcome is.
    Strength estimates skip trials with no evidence; count estimates use
    every trial.
    """
    for name, n in (("na", na), ("nb", nb)):
        if not isinstance(n, (int, np.integer)) or not 0 <= n <= u.N:
            raise OracleError(f"{name} must be an integer in [0, {u.N}], got {n!r}")
    _check_prob("pa", pa)
    _check_prob("pb", pb)
    if trials < 1:
        raise OracleError("need at least one trial")
    conj_n, conj_p, disj_n, disj_p = kernels(backend).mc_trials(
        int(u.N), int(na), float(pa), int(nb), float(pb), int(trials), int(seed))
    return IndependenceEstimate(summarize(conj_p), summarize(conj_n),
                                summarize(disj_p), summarize(disj_n))


@dataclass(frozen=True)
class DetectorEstimate:
    independent_joint: McEstimate
    combined_min: float

    def to_dict(self) -> dict:
        return {"independent_joint": self.independent_joint.to_dict(),
                "combined_min": self.combined_min}


def detector_sim(bt: float, bc: float, ticks: int, trials: int, seed: int,
                 backend: str | None = None) -> DetectorEstimate:
    """Two fuzzy detectors held up at once versus one combined detector.

    The combined "T and C" detector rings at ``min(bt, bc)``.  For two
    detectors ringing independently, the joint ringing rate is estimated by
    counting ticks on which both ring.
    """
    _check_prob("bt", bt)
    _check_prob("bc", bc)
    if ticks < 1 or trials < 1:
        raise OracleError("ticks and trials must be positive")
    joint = kernels(backend).detector_trials(float(bt), float(bc), int(ticks), int(trials), int(seed))
    return DetectorEstimate(summarize(joint), min(bt, bc))
