import math
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from uncertain_linear import truth
from uncertain_linear.truth import INF, Constant, TruthValue, UniverseConfig

N100 = UniverseConfig(100)
unit = st.floats(0.0, 1.0, allow_nan=False)
count = st.floats(0.0, 100.0, allow_nan=False)
tvs = st.builds(TruthValue, unit, count)
tvs_any = st.builds(TruthValue, unit, count | st.just(INF))


def approx_tv(a, b, tol=1e-12):
    return a.strength == pytest.approx(b.strength, abs=tol) and (
        a.count == b.count if math.isinf(a.count) or math.isinf(b.count)
        else a.count == pytest.approx(b.count, abs=tol))


# -- exact oracle for the independence counts --------------------------------------
# Draw two uniform subsets of sizes na and nb from N observations.  The overlap is
# hypergeometric; average it exactly over every possible overlap size.

def expected_overlap(na, nb, N):
    total = comb(N, nb)
    return sum(Fraction(k * comb(na, k) * comb(N - na, nb - k), total)
               for k in range(0, min(na, nb) + 1))


@pytest.mark.parametrize("na,nb,N", [(20, 10, 100), (50, 50, 100), (3, 7, 9), (0, 5, 10), (12, 12, 12)])
def test_count_formulas_match_exact_hypergeometric_mean(na, nb, N):
    overlap = expected_overlap(na, nb, N)
    cfg = UniverseConfig(N)
    conj = truth.and_multiplicative(TruthValue(0.5, na), TruthValue(0.5, nb), cfg)
    disj = truth.or_multiplicative(TruthValue(0.5, na), TruthValue(0.5, nb), cfg)
    assert conj.count == pytest.approx(float(overlap), abs=1e-12)
    assert disj.count == pytest.approx(float(na + nb - overlap), abs=1e-12)


# -- worked examples ---------------------------------------------------------------

A, B = TruthValue(0.5, 20), TruthValue(0.3, 10)


def test_and_additive_example():
    assert truth.and_additive(A, B) == TruthValue(0.3, 10)


def test_or_additive_example():
    assert truth.or_additive(A, B) == TruthValue(0.5, 20)
    assert truth.or_additive(TruthValue(0.2, 5), TruthValue(0.2, 7)) == TruthValue(0.2, 7)


def test_and_multiplicative_example():
    assert truth.and_multiplicative(A, B, N100) == TruthValue(0.15, 2)


def test_or_multiplicative_example():
    assert truth.or_multiplicative(A, B, N100) == TruthValue(0.65, 28)
    half = TruthValue(0.5, 50)
    assert truth.or_multiplicative(half, half, N100) == TruthValue(0.75, 75)


def test_infinite_evidence_absorbs_under_tensor():
    assert truth.and_multiplicative(TruthValue(0.9, INF), TruthValue(0.5, 10), N100) == TruthValue(0.45, INF)


def test_count_arithmetic_edge_cases():
    assert truth.count_min(INF, 3.0) == 3.0
    assert truth.count_max(INF, 3.0) == INF
    assert truth.count_mul_normalized(INF, 3.0, 100) == INF
    assert truth.count_mul_normalized(INF, 0.0, 100) == 0.0
    assert truth.count_mul_normalized(0.0, INF, 100) == 0.0
    assert truth.count_union_normalized(INF, 0.0, 100) == INF
    assert truth.count_union_normalized(5.0, INF, 100) == INF


def test_negate_examples():
    assert truth.negate(B) == TruthValue(0.7, 10)
    assert truth.negate(A) == A


def test_bang_examples():
    assert truth.bang(B) == TruthValue(0.3, INF)
    assert truth.bang(TruthValue(0.3, INF)) == TruthValue(0.3, INF)
    assert truth.bang(TruthValue(0, 0)) == TruthValue(0, INF)


def test_quest_composes_negation_and_bang():
    q = truth.quest(B)
    assert q.strength == pytest.approx(0.3, abs=1e-12) and q.count == INF
    assert truth.quest(TruthValue(1, 5)) == TruthValue(1, INF)


def test_constants():
    assert truth.constant_tv(Constant.ONE, N100) == TruthValue(1, 100)
    assert truth.constant_tv(Constant.ZERO) == TruthValue(0, 0)
    assert truth.constant_tv(Constant.BOTTOM) == TruthValue(0, 0)
    assert truth.constant_tv(Constant.TOP) == TruthValue(1, INF)
    with pytest.raises(ValueError):
        truth.constant_tv(Constant.ONE)


def test_unit_of_tensor_is_forced_to_universe_size():
    # n * n1 / N == n for every n only when n1 == N
    for n1 in (50, 99, 100, 101):
        ok = all(truth.count_mul_normalized(n, n1, 100) == pytest.approx(n) for n in (1.0, 7.0, 100.0))
        assert ok == (n1 == 100)


@pytest.mark.parametrize("s,n", [(-0.1, 1), (1.1, 1), (0.5, -1), (0.5, math.nan), (math.nan, 1)])
def test_invalid_truth_values_rejected(s, n):
    with pytest.raises(ValueError):
        TruthValue(s, n)


def test_universe_must_be_positive():
    with pytest.raises(ValueError):
        UniverseConfig(0)
    with pytest.raises(ValueError):
        TruthValue(0.5, 120).check_universe(N100)


def test_str():
    assert str(TruthValue(0.15, 2)) == "(0.15, 2)"
    assert str(TruthValue(1, INF)) == "(1, inf)"


# -- algebraic properties -----------------------------------------------------------

@given(tvs)
def test_additive_idempotent(a):
    assert truth.and_additive(a, a) == a
    assert truth.or_additive(a, a) == a


@given(tvs, tvs, tvs)
def test_additive_commutative_associative(a, b, c):
    for op in (truth.and_additive, truth.or_additive):
        assert op(a, b) == op(b, a)
        assert op(op(a, b), c) == op(a, op(b, c))


@given(tvs, tvs, tvs)
def test_multiplicative_commutative_associative(a, b, c):
    for op in (truth.and_multiplicative, truth.or_multiplicative):
        assert approx_tv(op(a, b, N100), op(b, a, N100))
        assert approx_tv(op(op(a, b, N100), c, N100), op(a, op(b, c, N100), N100))


@given(tvs_any)
def test_unit_laws(a):
    assert truth.and_additive(a, truth.constant_tv(Constant.TOP)) == a
    assert truth.or_additive(a, truth.constant_tv(Constant.ZERO)) == a
    assert approx_tv(truth.and_multiplicative(a, truth.constant_tv(Constant.ONE, N100), N100), a)
    assert truth.or_multiplicative(a, truth.constant_tv(Constant.BOTTOM), N100) == a


@given(tvs_any)
def test_negation_involutive(a):
    assert approx_tv(truth.negate(truth.negate(a)), a)


@given(tvs_any)
def test_quest_is_dual_of_bang(a):
    assert truth.quest(a) == truth.negate(truth.bang(truth.negate(a)))


@given(tvs, tvs, tvs)
def test_mixed_distributivity(a, b, c):
    cfg = N100
    lhs = truth.and_multiplicative(a, truth.or_additive(b, c), cfg)
    rhs = truth.or_additive(truth.and_multiplicative(a, b, cfg), truth.and_multiplicative(a, c, cfg))
    assert lhs == rhs
    lhs = truth.or_multiplicative(a, truth.and_additive(b, c), cfg)
    rhs = truth.and_additive(truth.or_multiplicative(a, b, cfg), truth.or_multiplicative(a, c, cfg))
    assert lhs == rhs


@given(tvs, tvs)
def test_de_morgan_strengths(a, b):
    neg = truth.negate
    for conj, disj in ((truth.and_additive, truth.or_additive),
                       (lambda x, y: truth.and_multiplicative(x, y, N100),
                        lambda x, y: truth.or_multiplicative(x, y, N100))):
        lhs = neg(conj(a, b)).strength
        assert lhs == pytest.approx(disj(neg(a), neg(b)).strength, abs=1e-12)


def test_de_morgan_fails_on_counts():
    a, b = TruthValue(0.5, 20), TruthValue(0.3, 10)
    assert truth.negate(truth.and_additive(a, b)).count == 10
    assert truth.or_additive(truth.negate(a), truth.negate(b)).count == 20


@given(tvs, tvs)
def test_exponential_isomorphism_counts(a, b):
    lhs = truth.bang(truth.and_additive(a, b))
    rhs = truth.and_multiplicative(truth.bang(a), truth.bang(b), N100)
    assert lhs.count == rhs.count == INF


@given(unit, unit)
def test_tconorms_dual_to_tnorms(a, b):
    assert truth.tconorm_max(a, b) == pytest.approx(1 - truth.tnorm_min(1 - a, 1 - b), abs=1e-12)
    assert truth.tconorm_probsum(a, b) == pytest.approx(1 - truth.tnorm_product(1 - a, 1 - b), abs=1e-12)
