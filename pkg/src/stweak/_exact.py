"""Exact-arithmetic helpers: decimal parsing, integer roots, big-number logs."""

import math
from fractions import Fraction
from numbers import Rational


def as_fraction(x):
    """Convert ``x`` to a Fraction without binary rounding surprises.

    Strings are parsed as decimals or ``p/q``; floats go through their
    shortest repr, so ``0.1`` becomes ``1/10`` rather than the nearest dyadic.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def iroot(n, k):
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    # integer Newton from above, seeded by floats when n fits in a double
    x = 1 << (n.bit_length() // k + 1)
    try:
        seed = int(math.exp(math.log(n) / k) * (1 + 1e-12)) + 2
        if seed ** k > n:
            x = min(x, seed)
    except OverflowError:
        pass
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def log_abs(x):
    """Natural log of a positive int/Fraction/float, safe for huge or tiny values."""
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError("log of nonpositive value")
        return math.log(x.numerator) - math.log(x.denominator)
    if x <= 0:
        raise ValueError("log of nonpositive value")
    return math.log(x)


def pow_cmp(base, exponent, bound):
    """Sign of ``base ** exponent - bound`` for positive ``base`` and ``bound``.

    Exact when all three are rationals with modest denominators; otherwise
    decided on logarithms (and then never reports a tie).
    """
    exponent = Fraction(exponent)
    if isinstance(base, float) or isinstance(bound, float) or exponent.denominator > 10_000:
        lhs = float(exponent) * log_abs(base)
        rhs = log_abs(bound)
        return (lhs > rhs) - (lhs < rhs)
    base = Fraction(base)
    bound = Fraction(bound)
    a, b = exponent.numerator, exponent.denominator
    # base^(a/b) vs bound  <=>  base^a vs bound^b   (b > 0, both sides positive)
    lhs = base ** a
    rhs = bound ** b
    return (lhs > rhs) - (lhs < rhs)


def fmt_number(x):
    """Full-precision text: exact strings for ints/rationals, 17 digits for floats."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        d = x.denominator
        twos = fives = 0
        while d % 2 == 0:
            d //= 2
            twos += 1
        while d % 5 == 0:
            d //= 5
            fives += 1
        if d == 1:
            places = max(twos, fives)
            scaled = x * 10 ** places
            sign = "-" if scaled < 0 else ""
            digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
            return f"{sign}{digits[:-places]}.{digits[-places:]}"
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    return str(x)


def json_number(x):
    """JSON-friendly value: ints stay ints, rationals become exact strings."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return fmt_number(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            return fmt_number(x)
        return float(fmt_number(x))
    return x


def exact_sqrt(x):
    """Square root of a nonnegative rational: a Fraction when it is a perfect
    square, otherwise a float."""
    x = as_fraction(x) if not isinstance(x, float) else x
    if isinstance(x, float):
        return math.sqrt(x)
    if x < 0:
        raise ValueError("square root of a negative value")
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    if max(x.numerator, x.denominator) < 2 ** 1000:
        return math.sqrt(x.numerator) / math.sqrt(x.denominator)
    return math.exp(log_abs(x) / 2) if x else 0.0
