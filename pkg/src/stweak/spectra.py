"""Univariate eigenvalue sequences and exact threshold counting.

Each family is an immutable value object.  Rational parameters give exact
:class:`~fractions.Fraction` eigenvalues wherever a closed form allows it, so
the strict inequality ``lambda_j > T`` in every count is decided exactly at
the boundary.  ``LogDecay`` has no rational closed form and is evaluated in
double precision; counts within one index of a tie may shift.
"""

from __future__ import annotations

import bisect
import decimal
import enum
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._exact import as_fraction, iroot, log_abs
from .errors import BudgetExceeded, InfiniteCount, SpecError

__all__ = [
    "EigenSeq", "Geometric", "PolyDecay", "LogDecay", "FiniteRank", "Explicit",
    "DecayKind", "DecayClass", "Enclosure", "INFINITE",
    "eigen_at", "count_above", "decay_class", "multiplicity_of_max", "trace",
    "sequence_from_json",
]

# Materializing a LogDecay count means writing out exp(E) in decimal.
MAX_COUNT_DIGITS = 200_000


class _Infinite:
    """Marker for divergent traces; compares greater than every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


INFINITE = _Infinite()


@dataclass(frozen=True)
class Enclosure:
    """Certified interval ``[lo, hi]`` around a real value."""

    lo: float
    hi: float

    @property
    def mid(self):
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self):
        return self.hi - self.lo

    def __add__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        v = float(other)
        return Enclosure(self.lo + v, self.hi + v)

    __radd__ = __add__

    def __mul__(self, c):
        c = float(c)
        if c < 0:
            raise ValueError("negative scale")
        return Enclosure(self.lo * c, self.hi * c)

    __rmul__ = __mul__

    def __float__(self):
        return self.mid


class DecayKind(enum.Enum):
    FINITE_RANK_ONE = "FiniteRankOne"
    SUPER_LOG = "SuperLog"
    LOG_CRITICAL = "LogCritical"
    NO_LOG_DECAY = "NoLogDecay"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class DecayClass:
    """How fast ``lambda_n`` falls against ``ln^(-2/s) n``."""

    kind: DecayKind
    sigma: Fraction | None = None

    def passes(self, s):
        """Whether ``lambda_n * ln^(2/s) n -> 0``; ``None`` when undecidable."""
        if self.kind in (DecayKind.SUPER_LOG, DecayKind.FINITE_RANK_ONE):
            return True
        if self.kind is DecayKind.LOG_CRITICAL:
            return as_fraction(s) > self.sigma
        if self.kind is DecayKind.NO_LOG_DECAY:
            return False
        return None

    def __str__(self):
        if self.kind is DecayKind.LOG_CRITICAL:
            return f"LogCritical({self.sigma})"
        return self.kind.value


def _threshold(T):
    T = as_fraction(T) if not isinstance(T, Fraction) else T
    if T < 0:
        raise ValueError("threshold must be nonnegative")
    return T


class EigenSeq(ABC):
    """Nonincreasing nonnegative sequence ``lambda_1 >= lambda_2 >= ... -> 0``."""

    exact = True

    @property
    @abstractmethod
    def first(self): ...

    @abstractmethod
    def eigen_at(self, j): ...

    @abstractmethod
    def count_above(self, T):
        """Exact ``#{j >= 1 : lambda_j > T}``."""

    @abstractmethod
    def decay_class(self) -> DecayClass: ...

    @abstractmethod
    def multiplicity_of_max(self) -> int: ...

    @abstractmethod
    def trace(self): ...

    @abstractmethod
    def log_decay_dominates(self, t):
        """Whether ``ln(1/lambda_n) / ln^(1/t) n -> infinity``."""

    @abstractmethod
    def to_json(self) -> dict: ...

    def log_eigen_at(self, j):
        v = self.eigen_at(j)
        return -math.inf if v == 0 else log_abs(v)

    def log_count_above(self, T):
        """``ln`` of :meth:`count_above` (``-inf`` for an empty count)."""
        n = self.count_above(T)
        return -math.inf if n == 0 else math.log(n)

    def values(self, n):
        """First ``n`` eigenvalues as a float array (underflow goes to 0)."""
        return np.array([float(self.eigen_at(j)) for j in range(1, n + 1)])

    def _check_index(self, j):
        if j < 1:
            raise ValueError(f"index must be >= 1, got {j}")


def _check_first(first):
    if first <= 0:
        raise ValueError("lambda_1 must be positive (identically zero sequences are rejected)")


@dataclass(frozen=True)
class Geometric(EigenSeq):
    """``lambda_j = first * ratio**(j-1)`` with ``0 <= ratio < 1``."""

    first_value: Fraction
    ratio: Fraction

    def __init__(self, first, ratio):
        object.__setattr__(self, "first_value", as_fraction(first))
        object.__setattr__(self, "ratio", as_fraction(ratio))
        _check_first(self.first_value)
        if not 0 <= self.ratio < 1:
            raise ValueError("ratio must lie in [0, 1)")

    @property
    def first(self):
        return self.first_value

    def eigen_at(self, j):
        self._check_index(j)
        if j == 1:
            return self.first_value
        return self.first_value * self.ratio ** (j - 1)

    def log_eigen_at(self, j):
        self._check_index(j)
        if j == 1:
            return log_abs(self.first_value)
        if self.ratio == 0:
            return -math.inf
        return log_abs(self.first_value) + (j - 1) * log_abs(self.ratio)

    def count_above(self, T):
        T = _threshold(T)
        q, a = self.ratio, self.first_value
        if T == 0:
            if q == 0:
                return 1
            raise InfiniteCount("geometric sequence has no zero tail")
        if a <= T:
            return 0
        if q == 0:
            return 1
        # largest m >= 0 with a*q^m > T; float seed then exact correction
        m = int(math.floor((log_abs(a) - log_abs(T)) / -log_abs(q)))
        m = max(m, 0)
        while m > 0 and not a * q ** m > T:
            m -= 1
        while a * q ** (m + 1) > T:
            m += 1
        return m + 1

    def values(self, n):
        j = np.arange(n, dtype=float)
        if self.ratio == 0:
            out = np.zeros(n)
            out[:1] = float(self.first_value)
            return out
        with np.errstate(under="ignore"):
            return np.exp(log_abs(self.first_value) + j * log_abs(self.ratio))

    def decay_class(self):
        if self.ratio == 0:
            return DecayClass(DecayKind.FINITE_RANK_ONE)
        return DecayClass(DecayKind.SUPER_LOG)

    def multiplicity_of_max(self):
        return 1

    def trace(self):
        return self.first_value / (1 - self.ratio)

    def log_decay_dominates(self, t):
        return True

    def to_json(self):
        return {"family": "geometric", "first": str(self.first_value), "ratio": str(self.ratio)}


@dataclass(frozen=True)
class PolyDecay(EigenSeq):
    """``lambda_j = first * j**(-exponent)``."""

    first_value: Fraction
    exponent: Fraction

    def __init__(self, first, exponent):
        object.__setattr__(self, "first_value", as_fraction(first))
        object.__setattr__(self, "exponent", as_fraction(exponent))
        _check_first(self.first_value)
        if self.exponent <= 0:
            raise ValueError("exponent must be positive")

    @property
    def exact(self):
        return self.exponent.denominator == 1

    @property
    def first(self):
        return self.first_value

    def eigen_at(self, j):
        self._check_index(j)
        if self.exponent.denominator == 1:
            return self.first_value / Fraction(j) ** self.exponent.numerator
        return float(self.first_value) * j ** (-float(self.exponent))

    def log_eigen_at(self, j):
        self._check_index(j)
        return log_abs(self.first_value) - float(self.exponent) * math.log(j)

    def count_above(self, T):
        T = _threshold(T)
        if T == 0:
            raise InfiniteCount("polynomial decay has no zero tail")
        if self.first_value <= T:
            return 0
        R = self.first_value / T
        a, b = self.exponent.numerator, self.exponent.denominator
        if b <= 64:
            # j^(a/b) < R  <=>  j^a < R^b  <=>  j^a <= ceil(R^b) - 1
            u, v = R.numerator ** b, R.denominator ** b
            return iroot((u - 1) // v, a)
        # exponents with huge denominators: float seed, log-space correction
        p = float(self.exponent)
        lr = log_abs(R)
        j = int(math.exp(lr / p))
        while j > 0 and not p * math.log(j) < lr:
            j -= 1
        while p * math.log(j + 1) < lr:
            j += 1
        return j

    def values(self, n):
        j = np.arange(1, n + 1, dtype=float)
        return float(self.first_value) * j ** (-float(self.exponent))

    def decay_class(self):
        return DecayClass(DecayKind.SUPER_LOG)

    def multiplicity_of_max(self):
        return 1

    def trace(self):
        p = self.exponent
        if p <= 1:
            return INFINITE
        return _zeta_enclosure(float(p)) * self.first_value

    def log_decay_dominates(self, t):
        # p ln n / ln^(1/t) n -> inf  iff  1/t < 1
        return as_fraction(t) > 1

    def to_json(self):
        return {"family": "poly", "first": str(self.first_value), "exponent": str(self.exponent)}


def _zeta_enclosure(p, width=1e-9):
    """Certified enclosure of sum_{j>=1} j^-p for p > 1.

    Convexity of x^-p brackets the tail after N terms between the trapezoid
    and midpoint integrals, whose gap shrinks like N^(-p-2).
    """
    N = 256
    while True:
        head = math.fsum(j ** -p for j in range(1, N + 1))
        lo_tail = (N + 1) ** (1 - p) / (p - 1) + 0.5 * (N + 1) ** -p
        hi_tail = (N + 0.5) ** (1 - p) / (p - 1)
        slack = 4 * N * 2.0 ** -52 * head
        enc = Enclosure(head + lo_tail - slack, head + hi_tail + slack)
        if enc.width <= width or N > 1 << 22:
            return enc
        N *= 4


@dataclass(frozen=True)
class LogDecay(EigenSeq):
    """``lambda_1 = first`` and ``lambda_j = first * ln(j+1)**(-2/sigma)`` for j >= 2."""

    first_value: Fraction
    sigma: Fraction
    exact = False

    def __init__(self, first, sigma):
        object.__setattr__(self, "first_value", as_fraction(first))
        object.__setattr__(self, "sigma", as_fraction(sigma))
        _check_first(self.first_value)
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    @property
    def first(self):
        return self.first_value

    def eigen_at(self, j):
        self._check_index(j)
        if j == 1:
            return self.first_value
        return float(self.first_value) * math.log(j + 1) ** (-2.0 / float(self.sigma))

    def log_eigen_at(self, j):
        self._check_index(j)
        if j == 1:
            return log_abs(self.first_value)
        return log_abs(self.first_value) - 2.0 / float(self.sigma) * math.log(math.log(j + 1))

    def _exponent(self, T):
        # lambda_j > T (j >= 2)  <=>  ln(j+1) < (first/T)^(sigma/2) =: E
        return math.exp(float(self.sigma) / 2 * (log_abs(self.first_value) - log_abs(T)))

    def count_above(self, T):
        T = _threshold(T)
        if T == 0:
            raise InfiniteCount("logarithmic decay has no zero tail")
        if self.first_value <= T:
            return 0
        E = self._exponent(T)
        if E <= 700:
            X = math.exp(E)
            return 1 + max(0, math.ceil(X) - 3)
        digits = int(E / math.log(10)) + 30
        if digits > MAX_COUNT_DIGITS:
            raise BudgetExceeded(f"count with ~{digits} decimal digits", MAX_COUNT_DIGITS)
        ctx = decimal.Context(prec=digits)
        X = ctx.exp(decimal.Decimal(repr(E)))
        return 1 + max(0, int(X.to_integral_value(rounding=decimal.ROUND_CEILING)) - 3)

    def log_count_above(self, T):
        T = _threshold(T)
        if T == 0:
            raise InfiniteCount("logarithmic decay has no zero tail")
        if self.first_value <= T:
            return -math.inf
        E = self._exponent(T)
        if E <= 700:
            return math.log(self.count_above(T))
        # ln(1 + e^E - 3) = E + ln(1 - 2 e^-E), the correction is below 1e-300
        return E

    def values(self, n):
        out = np.empty(n)
        out[:1] = float(self.first_value)
        if n > 1:
            j = np.arange(2, n + 1, dtype=float)
            out[1:] = float(self.first_value) * np.log(j + 1) ** (-2.0 / float(self.sigma))
        return out

    def decay_class(self):
        return DecayClass(DecayKind.LOG_CRITICAL, self.sigma)

    def multiplicity_of_max(self):
        return 1  # ln 3 > 1, so lambda_2 < lambda_1

    def trace(self):
        return INFINITE

    def log_decay_dominates(self, t):
        return False

    def to_json(self):
        return {"family": "log", "first": str(self.first_value), "sigma": str(self.sigma)}


def _check_nonincreasing(values):
    for i in range(1, len(values)):
        if values[i] > values[i - 1]:
            raise ValueError(f"values must be nonincreasing (index {i + 1} exceeds index {i})")
    if values and values[-1] < 0:
        raise ValueError("values must be nonnegative")


@dataclass(frozen=True)
class FiniteRank(EigenSeq):
    """Explicit nonincreasing list, zeros beyond it."""

    entries: tuple = field(default=())

    def __init__(self, values):
        vals = tuple(as_fraction(v) for v in values)
        if not vals:
            raise ValueError("empty list")
        _check_nonincreasing(vals)
        _check_first(vals[0])
        object.__setattr__(self, "entries", vals)

    @property
    def first(self):
        return self.entries[0]

    def eigen_at(self, j):
        self._check_index(j)
        return self.entries[j - 1] if j <= len(self.entries) else Fraction(0)

    def count_above(self, T):
        T = _threshold(T)
        # entries are nonincreasing; count those strictly above T
        neg = [-v for v in self.entries]
        return bisect.bisect_left(neg, -T)

    def values(self, n):
        out = np.zeros(n)
        k = min(n, len(self.entries))
        out[:k] = [float(v) for v in self.entries[:k]]
        return out

    def decay_class(self):
        if self.eigen_at(2) == 0:
            return DecayClass(DecayKind.FINITE_RANK_ONE)
        return DecayClass(DecayKind.SUPER_LOG)

    def multiplicity_of_max(self):
        return sum(1 for v in self.entries if v == self.entries[0])

    def trace(self):
        return sum(self.entries, Fraction(0))

    def log_decay_dominates(self, t):
        return True

    def to_json(self):
        return {"family": "finite", "values": [str(v) for v in self.entries]}


@dataclass(frozen=True)
class Explicit(EigenSeq):
    """Explicit nonincreasing prefix followed by a closed-form tail.

    Index ``len(prefix) + i`` carries ``tail.eigen_at(i)``.
    """

    prefix: tuple
    tail: EigenSeq

    def __init__(self, prefix, tail):
        vals = tuple(as_fraction(v) for v in prefix)
        if not vals:
            raise ValueError("empty prefix; use the tail family directly")
        _check_nonincreasing(vals)
        _check_first(vals[0])
        if not isinstance(tail, EigenSeq):
            raise TypeError("tail must be an EigenSeq")
        if tail.first > vals[-1]:
            raise ValueError("tail starts above the last prefix value")
        object.__setattr__(self, "prefix", vals)
        object.__setattr__(self, "tail", tail)

    @property
    def exact(self):
        return self.tail.exact

    @property
    def first(self):
        return self.prefix[0]

    def eigen_at(self, j):
        self._check_index(j)
        P = len(self.prefix)
        return self.prefix[j - 1] if j <= P else self.tail.eigen_at(j - P)

    def log_eigen_at(self, j):
        P = len(self.prefix)
        if j > P:
            return self.tail.log_eigen_at(j - P)
        return super().log_eigen_at(j)

    def count_above(self, T):
        T = _threshold(T)
        n = sum(1 for v in self.prefix if v > T)
        if n < len(self.prefix):
            return n
        return n + self.tail.count_above(T)

    def log_count_above(self, T):
        T = _threshold(T)
        n = sum(1 for v in self.prefix if v > T)
        if n < len(self.prefix):
            return -math.inf if n == 0 else math.log(n)
        lt = self.tail.log_count_above(T)
        if lt == -math.inf:
            return math.log(n)
        return lt + math.log1p(n * math.exp(-lt)) if lt < 700 else lt

    def values(self, n):
        P = len(self.prefix)
        head = np.array([float(v) for v in self.prefix[:n]])
        if n <= P:
            return head
        return np.concatenate([head, self.tail.values(n - P)])

    def decay_class(self):
        cls = self.tail.decay_class()
        if cls.kind is DecayKind.FINITE_RANK_ONE:
            # prefix value plus one positive tail value: at least two nonzeros
            return DecayClass(DecayKind.SUPER_LOG)
        return cls

    def multiplicity_of_max(self):
        m = sum(1 for v in self.prefix if v == self.prefix[0])
        if m == len(self.prefix) and self.tail.first == self.prefix[0]:
            m += self.tail.multiplicity_of_max()
        return m

    def trace(self):
        t = self.tail.trace()
        if t is INFINITE:
            return INFINITE
        return sum(self.prefix, Fraction(0)) + t

    def log_decay_dominates(self, t):
        return self.tail.log_decay_dominates(t)

    def to_json(self):
        return {"family": "explicit", "prefix": [str(v) for v in self.prefix],
                "tail": self.tail.to_json()}


# Function-style API

def eigen_at(seq: EigenSeq, j: int):
    return seq.eigen_at(j)


def count_above(seq: EigenSeq, T) -> int:
    return seq.count_above(T)


def decay_class(seq: EigenSeq) -> DecayClass:
    return seq.decay_class()


def multiplicity_of_max(seq: EigenSeq) -> int:
    return seq.multiplicity_of_max()


def trace(seq: EigenSeq):
    return seq.trace()


_FIELDS = {
    "geometric": {"family", "first", "ratio"},
    "poly": {"family", "first", "exponent"},
    "log": {"family", "first", "sigma"},
    "finite": {"family", "values"},
    "explicit": {"family", "prefix", "tail"},
}


def _num(doc, key):
    raw = doc.get(key)
    if raw is None:
        raise SpecError(f"sequence field {key!r} is required")
    if isinstance(raw, bool) or not isinstance(raw, (str, int, float)):
        raise SpecError(f"sequence field {key!r} must be a number or decimal string")
    try:
        return as_fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"bad number for {key!r}: {raw!r}") from exc


def sequence_from_json(doc) -> EigenSeq:
    """Build a sequence from its JSON form; unknown fields are rejected."""
    if not isinstance(doc, dict):
        raise SpecError("sequence must be an object")
    fam = doc.get("family")
    if fam not in _FIELDS:
        raise SpecError(f"unknown sequence family {fam!r}")
    extra = set(doc) - _FIELDS[fam]
    if extra:
        raise SpecError(f"unknown fields for {fam} sequence: {sorted(extra)}")
    try:
        if fam == "geometric":
            return Geometric(_num(doc, "first"), _num(doc, "ratio"))
        if fam == "poly":
            return PolyDecay(_num(doc, "first"), _num(doc, "exponent"))
        if fam == "log":
            return LogDecay(_num(doc, "first"), _num(doc, "sigma"))
        if fam == "finite":
            vals = doc.get("values")
            if not isinstance(vals, list):
                raise SpecError("finite sequence needs a 'values' list")
            return FiniteRank([_num({"v": v}, "v") for v in vals])
        prefix = doc.get("prefix")
        if not isinstance(prefix, list):
            raise SpecError("explicit sequence needs a 'prefix' list")
        return Explicit([_num({"v": v}, "v") for v in prefix], sequence_from_json(doc.get("tail")))
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc)) from exc
