import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stweak._exact import as_fraction, exact_sqrt, fmt_number, iroot, json_number, log_abs, pow_cmp


@given(st.integers(0, 10 ** 300), st.integers(1, 9))
def test_iroot_is_floor(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


def test_iroot_exact_powers():
    for k in (2, 3, 5):
        for r in (1, 7, 10 ** 20 + 3):
            assert iroot(r ** k, k) == r
            assert iroot(r ** k - 1, k) == r - 1


def test_as_fraction_decimal():
    assert as_fraction("0.1") == F(1, 10)
    assert as_fraction(0.1) == F(1, 10)
    assert as_fraction("3/7") == F(3, 7)
    with pytest.raises(TypeError):
        as_fraction(True)
    with pytest.raises(ValueError):
        as_fraction(math.inf)


def test_log_abs_huge():
    big = F(10 ** 500, 3)
    assert log_abs(big) == pytest.approx(500 * math.log(10) - math.log(3))


def test_pow_cmp():
    assert pow_cmp(F(1, 4), F(1, 2), F(1, 2)) == 0
    assert pow_cmp(F(1, 4), F(1, 2), F(1, 3)) == 1
    assert pow_cmp(2, 3, 9) == -1


def test_formatting():
    assert fmt_number(F(1, 4)) == "0.25"
    assert fmt_number(F(1, 3)) == "1/3"
    assert fmt_number(F(-3, 8)) == "-0.375"
    assert fmt_number(math.inf) == "inf"
    assert json_number(F(5, 1)) == "5" and json_number(7) == 7
    assert json_number(math.nan) == "nan"


def test_exact_sqrt():
    assert exact_sqrt(F(9, 4)) == F(3, 2)
    assert exact_sqrt(2) == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        exact_sqrt(-1)
