"""(strength, count) truth values and the two connective families.

Max Overlap connectives (``&``, ``+``) combine strengths and counts with
min/max.  Independence connectives (``*``, ``|``) use the product t-norm
and probabilistic sum, with counts normalized by the universe size ``N``
(the expected overlap of two independent samples of sizes ``na`` and
``nb`` drawn from ``N`` observations is ``na * nb / N``).

Counts are plain floats; ``math.inf`` is the infinite count carried by ``!``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

INF = math.inf


class Constant(enum.Enum):
    TOP = "T"
    ZERO = "0"
    ONE = "1"
    BOTTOM = "F"


@dataclass(frozen=True)
class UniverseConfig:
    """Size of the body of potential observations."""

    N: float

    def __post_init__(self):
        if not (self.N > 0) or math.isinf(self.N):
            raise ValueError(f"universe size must be a positive finite number, got {self.N!r}")


@dataclass(frozen=True)
class TruthValue:
    strength: float
    count: float

    def __post_init__(self):
        s, n = self.strength, self.count
        if not (0.0 <= s <= 1.0):
            raise ValueError(f"strength must lie in [0, 1], got {s!r}")
        if not (n >= 0.0):  # also rejects NaN
            raise ValueError(f"count must be non-negative, got {n!r}")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.count)

    def check_universe(self, cfg: UniverseConfig) -> None:
        if not self.is_infinite and self.count > cfg.N:
            raise ValueError(f"count {self.count!r} exceeds universe size {cfg.N!r}")

    def __iter__(self):
        yield self.strength
        yield self.count

    def __str__(self) -> str:
        return f"({format_number(self.strength)}, {format_count(self.count)})"


def format_number(x: float) -> str:
    return f"{x:.12g}"


def format_count(n: float) -> str:
    return "inf" if math.isinf(n) else format_number(n)


# -- count arithmetic ---------------------------------------------------------

def count_min(a: float, b: float) -> float:
    return min(a, b)


def count_max(a: float, b: float) -> float:
    return max(a, b)


def count_mul_normalized(a: float, b: float, N: float) -> float:
    """Expected overlap ``a * b / N``; zero evidence beats infinite evidence."""
    if a == 0.0 or b == 0.0:
        return 0.0
    if math.isinf(a) or math.isinf(b):
        return INF
    # a * (b / N) is monotone in b under rounding and exact when b == N
    return a * (b / N)


def count_union_normalized(a: float, b: float, N: float) -> float:
    """Expected union size ``a + b - a * b / N``."""
    if math.isinf(a) or math.isinf(b):
        return INF
    return a + b * (1.0 - a / N)


# -- strengths ------------------------------------------------------------------
# The connectives below take their strengths from these, so the t-norm laws can
# be checked on plain floats.

def tnorm_min(a: float, b: float) -> float:
    return min(a, b)


def tconorm_max(a: float, b: float) -> float:
    return max(a, b)


def tnorm_product(a: float, b: float) -> float:
    return a * b


def tconorm_probsum(a: float, b: float) -> float:
    # a + b*(1 - a) can round a hair above 1
    return min(1.0, a + b * (1.0 - a))


# -- connectives --------------------------------------------------------------

def and_additive(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(tnorm_min(a.strength, b.strength), count_min(a.count, b.count))


def or_additive(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(tconorm_max(a.strength, b.strength), count_max(a.count, b.count))


def and_multiplicative(a: TruthValue, b: TruthValue, cfg: UniverseConfig) -> TruthValue:
    return TruthValue(tnorm_product(a.strength, b.strength), count_mul_normalized(a.count, b.count, cfg.N))


def or_multiplicative(a: TruthValue, b: TruthValue, cfg: UniverseConfig) -> TruthValue:
    return TruthValue(tconorm_probsum(a.strength, b.strength), count_union_normalized(a.count, b.count, cfg.N))


def negate(a: TruthValue) -> TruthValue:
    return TruthValue(1.0 - a.strength, a.count)


def bang(a: TruthValue) -> TruthValue:
    return TruthValue(a.strength, INF)


def quest(a: TruthValue) -> TruthValue:
    # ?A is defined as (!(A^))^
    return negate(bang(negate(a)))


def constant_tv(c: Constant, cfg: UniverseConfig | None = None) -> TruthValue:
    if c is Constant.TOP:
        return TruthValue(1.0, INF)
    if c is Constant.ONE:
        if cfg is None:
            raise ValueError("the constant 1 needs a universe size")
        return TruthValue(1.0, float(cfg.N))
    return TruthValue(0.0, 0.0)
