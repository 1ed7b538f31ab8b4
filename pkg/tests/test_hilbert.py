import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stweak.errors import InfiniteTrace, UnsupportedDimension
from stweak.hilbert import (Criterion, GeneralProblem, STParams, check_C1, check_C2, check_C3,
                            check_C4, check_trace_condition, info_complexity, initial_error,
                            std_upper_bound, trend_decreasing, trend_increasing)
from stweak.spectra import INFINITE, FiniteRank, Geometric, LogDecay, PolyDecay
from stweak.tensor import TensorProblem, TensorSpectrum


def const(seq):
    return GeneralProblem(lambda d: seq)


def min_form(seq, crit, eps, limit=10_000):
    """Smallest n with lambda_{n+1} <= eps^2 CRI, by scanning."""
    cri = seq.first if crit == "norm" else 1
    for n in range(limit):
        if seq.eigen_at(n + 1) <= eps * eps * cri:
            return n
    raise AssertionError("scan limit too small")


def test_initial_error_examples():
    assert initial_error(const(Geometric(4, F(1, 2))), 7) == 2
    assert initial_error(const(FiniteRank([1])), 1) == 1
    assert initial_error(const(PolyDecay(9, 1)), 3) == 3


def test_info_complexity_examples():
    assert info_complexity(const(PolyDecay(1, 2)), "abs", F(1, 10), 1) == 9
    assert info_complexity(const(Geometric(3, F(1, 2))), "norm", 1, 5) == 0
    assert info_complexity(const(FiniteRank([1, F(1, 4)])), "abs", F(1, 2), 1) == 1
    # decimal input is exact: 0.1 means 1/10
    assert info_complexity(const(PolyDecay(1, 2)), "abs", "0.1", 1) == 9


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([Geometric(1, F(1, 2)), PolyDecay(2, 1), FiniteRank([1, F(1, 2), F(1, 4)]),
                        Geometric(F(1, 2), F(1, 3))]),
       st.sampled_from(["abs", "norm"]), st.integers(20, 999), st.integers(20, 999))
def test_duality_and_monotonicity(seq, crit, a, b):
    p = const(seq)
    e1, e2 = sorted((F(a, 1000), F(b, 1000)))
    n1, n2 = info_complexity(p, crit, e1, 1), info_complexity(p, crit, e2, 1)
    assert n1 >= n2
    assert n1 == min_form(seq, crit, e1)


def test_normalized_equals_absolute_when_first_is_one():
    p = const(Geometric(1, F(2, 3)))
    for k in range(1, 100):
        assert info_complexity(p, "abs", F(k, 100), 1) == info_complexity(p, "norm", F(k, 100), 1)


def test_unsupported_dimension():
    p = GeneralProblem({1: Geometric(1, F(1, 2))})
    with pytest.raises(UnsupportedDimension):
        info_complexity(p, "abs", F(1, 2), 2)


def test_trend_rule():
    assert trend_decreasing([4, 3, 2, 1])
    assert not trend_decreasing([4, 3, 3, 2.5])   # last > first/2
    assert not trend_decreasing([4, 1, 0.5, 0.9])  # tail rises
    assert trend_decreasing([0, 0, 0])
    assert trend_increasing([1, 2, 3, 4]) and not trend_increasing([0, 0])


def test_C1_examples():
    r = check_C1(const(Geometric(1, F(1, 2))), "norm", 1, 1)
    assert r.symbolic is True and r.flag
    r = check_C1(const(LogDecay(1, 2)), "abs", 1, 1)
    assert r.symbolic is False
    vals = [v for _, v in r.samples]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    r = check_C1(const(FiniteRank([1])), "abs", 3, 1)
    assert r.symbolic is True and r.flag


def test_C2_examples():
    tp = TensorProblem(Geometric(1, F(1, 2)))
    r = check_C2(GeneralProblem(lambda d: TensorSpectrum(tp.base, d)), "norm", 1, 1)
    assert r.sup is not None and math.isfinite(r.sup) and r.witness is not None
    assert check_C2(const(FiniteRank([1])), "abs", 1, 1).sup == 0
    small = check_C2(const(LogDecay(1, 4)), "abs", 1, 1, j_budget=10_000).sup
    big = check_C2(const(LogDecay(1, 4)), "abs", 1, 1, j_budget=100_000).sup
    assert big > small


def test_C3_examples():
    r = check_C3(GeneralProblem(lambda d: Geometric(F(1, 2 ** d), F(1, 2))), "abs")
    assert [v for _, v in r.samples] == [F(1, 2 ** (d + 1)) for d in range(1, 9)]
    assert r.flag
    r = check_C3(const(FiniteRank([1])), "norm")
    assert all(v == 0 for _, v in r.samples)
    r = check_C3(const(Geometric(1, F(1, 2))), "norm")
    assert all(v == F(1, 2) for _, v in r.samples) and not r.flag


def test_C4_examples():
    assert check_C4(const(FiniteRank([1])), "abs", 1).sup == 0
    r = check_C4(const(Geometric(1, F(1, 2))), "abs", 1)
    assert math.isfinite(r.sup)
    small = check_C4(const(LogDecay(1, 4)), "abs", 1, j_budget=10_000).sup
    big = check_C4(const(LogDecay(1, 4)), "abs", 1, j_budget=100_000).sup
    assert big > small


def test_std_upper_bound_examples():
    assert std_upper_bound(1, F(1, 2), 2) == 32
    assert std_upper_bound(0, F(1, 3), 7) == 0
    assert std_upper_bound(5, F(1, 2), F(3, 2)) == 160
    with pytest.raises(InfiniteTrace):
        std_upper_bound(1, F(1, 2), INFINITE)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 50), st.integers(1, 99), st.fractions(F(1, 10), F(10)))
def test_std_upper_bound_monotone(n, k, r):
    eps = F(k, 100)
    b = std_upper_bound(n, eps, r)
    assert b >= n * 4 / (eps * eps) * r
    assert std_upper_bound(n + 1, eps, r) >= b
    assert std_upper_bound(n, eps, r + 1) >= b


def test_trace_condition_examples():
    def traces(r):
        return lambda d: r ** d

    assert check_trace_condition(traces(F(1, 2)), F(1, 2), base_ratio=F(1, 2)).symbolic is True
    assert check_trace_condition(traces(2), 2, base_ratio=2).symbolic is True
    r = check_trace_condition(traces(2), 1, base_ratio=2)
    assert r.symbolic is False
    assert all(math.isclose(v, math.log(2)) for _, v in r.samples)


def test_criterion_parse():
    assert Criterion.parse("abs") is Criterion.ABSOLUTE
    assert Criterion.parse(Criterion.NORMALIZED) is Criterion.NORMALIZED
    with pytest.raises(ValueError):
        Criterion.parse("relative")
    with pytest.raises(ValueError):
        STParams(-1, 0)
