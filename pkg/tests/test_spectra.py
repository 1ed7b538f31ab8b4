import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stweak.spectra import (INFINITE, DecayKind, Enclosure, Explicit, FiniteRank, Geometric,
                            LogDecay, PolyDecay, sequence_from_json)


def brute_count(seq, T, limit=5000):
    return sum(1 for j in range(1, limit + 1) if seq.eigen_at(j) > T)


def test_geometric_values_exact():
    g = Geometric(1, F(1, 2))
    assert g.eigen_at(1) == 1
    assert g.eigen_at(4) == F(1, 8)
    assert g.count_above(F(1, 8)) == 3
    assert g.count_above(F(1, 9)) == 4
    assert g.trace() == 2


def test_poly_count_at_tie():
    p = PolyDecay(1, 2)
    # lambda_3 = 1/9 exactly, strict inequality excludes it
    assert p.count_above(F(1, 9)) == 2
    assert p.count_above(F(1, 10)) == 3


def test_finite_rank_and_explicit():
    fr = FiniteRank([4, 1])
    assert fr.count_above(0) == 2
    assert fr.trace() == 5
    assert fr.multiplicity_of_max() == 1
    ex = Explicit([1, 1], Geometric(F(1, 2), F(1, 2)))
    assert [ex.eigen_at(j) for j in range(1, 5)] == [1, 1, F(1, 2), F(1, 4)]
    assert ex.multiplicity_of_max() == 2


@pytest.mark.parametrize("seq", [Geometric(1, F(1, 3)), PolyDecay(2, F(3, 2)), FiniteRank([1, F(1, 2), F(1, 2)]),
                                 Explicit([3, 2], PolyDecay(1, 2))])
@pytest.mark.parametrize("T", [F(1, 7), F(1, 100), F(1, 2), F(1, 1000)])
def test_count_above_matches_scan(seq, T):
    assert seq.count_above(T) == brute_count(seq, T)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(2, 9), st.integers(1, 2000))
def test_geometric_count_property(num, den, k):
    r = F(num, den) if num < den else F(1, den)
    g = Geometric(1, r)
    T = F(1, k)
    n = g.count_above(T)
    assert g.eigen_at(n + 1) <= T if n >= 0 else True
    if n:
        assert g.eigen_at(n) > T


def test_log_decay_class():
    ld = LogDecay(1, 2)
    assert ld.decay_class().kind is DecayKind.LOG_CRITICAL
    assert ld.decay_class().passes(3) and not ld.decay_class().passes(2)
    assert ld.trace() is INFINITE
    assert math.isclose(float(ld.eigen_at(3)), 1 / math.log(4))


def test_decay_classes():
    assert Geometric(1, F(1, 2)).decay_class().kind is DecayKind.SUPER_LOG
    assert PolyDecay(1, 2).decay_class().passes(F(1, 100))
    assert FiniteRank([1]).decay_class().kind is DecayKind.FINITE_RANK_ONE


def test_enclosure_scaling():
    e = Enclosure(1, 2) * 3
    assert (e.lo, e.hi) == (3, 6)


def test_json_round_trip():
    for seq in (Geometric(1, F(1, 4)), PolyDecay(1, 2), LogDecay(F(1, 2), 2), FiniteRank([1, 1, F(1, 2)]),
                Explicit([1, 1], Geometric(F(1, 2), F(1, 2)))):
        assert sequence_from_json(seq.to_json()) == seq


@pytest.mark.parametrize("doc", [{"family": "geometric", "first": "1", "ratio": "1"},
                                 {"family": "geometric", "first": "1", "ratio": "0.5", "x": 1},
                                 {"family": "nope"},
                                 {"family": "finite", "values": ["1", "2"]}])
def test_bad_sequences_rejected(doc):
    with pytest.raises(ValueError):
        sequence_from_json(doc)
