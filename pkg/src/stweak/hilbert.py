"""General compact linear problems between Hilbert spaces.

A problem is given by the squared singular values ``lambda_{d,j}`` of each
``S_d``.  The information complexity is a threshold count on them; the
(C1)-(C4) checkers report finite-window evidence for the asymptotic
conditions, while verdicts come from the symbolic decay classes.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from ._exact import as_fraction, exact_sqrt, json_number, log_abs
from .errors import InfiniteTrace, UnsupportedDimension
from .spectra import INFINITE, EigenSeq, Enclosure

__all__ = [
    "Criterion", "STParams", "GeneralProblem", "TrendReport", "SupReport",
    "trend_decreasing", "trend_increasing", "initial_error", "info_complexity",
    "check_C1", "check_C2", "check_C3", "check_C4", "std_upper_bound",
    "check_trace_condition", "DEFAULT_WINDOW",
]

DEFAULT_WINDOW = (10, 100, 1000, 10_000)


class Criterion(enum.Enum):
    ABSOLUTE = "abs"
    NORMALIZED = "norm"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        if key in ("abs", "absolute"):
            return cls.ABSOLUTE
        if key in ("norm", "normalized", "normalised"):
            return cls.NORMALIZED
        raise ValueError(f"unknown error criterion {text!r}")

    def cri(self, lambda1):
        """The normalizer: 1 or the largest eigenvalue."""
        return Fraction(1) if self is Criterion.ABSOLUTE else lambda1


@dataclass(frozen=True)
class STParams:
    s: Fraction
    t: Fraction

    def __init__(self, s, t):
        s, t = as_fraction(s), as_fraction(t)
        if s < 0 or t < 0:
            raise ValueError("s and t must be nonnegative")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    def __le__(self, other):
        return self.s <= other.s and self.t <= other.t

    def __str__(self):
        return f"(s={self.s}, t={self.t})"


class GeneralProblem:
    """Per-dimension spectra, either a finite table ``{d: seq}`` or a rule ``d -> seq``."""

    def __init__(self, spectra: Mapping[int, EigenSeq] | Callable[[int], EigenSeq]):
        if isinstance(spectra, Mapping):
            table = {}
            for d, seq in spectra.items():
                if int(d) != d or d < 1:
                    raise ValueError(f"dimension must be a positive integer, got {d!r}")
                if not isinstance(seq, EigenSeq):
                    raise TypeError(f"spectrum for d={d} is not an EigenSeq")
                table[int(d)] = seq
            if not table:
                raise ValueError("no dimensions given")
            self._table, self._rule = table, None
        elif callable(spectra):
            self._table, self._rule = None, spectra
        else:
            raise TypeError("spectra must be a mapping or a callable")

    @property
    def dims(self):
        """Supported dimensions, or ``None`` for a rule defined on every d."""
        return None if self._table is None else tuple(sorted(self._table))

    def sequence(self, d) -> EigenSeq:
        if self._table is not None:
            try:
                return self._table[d]
            except KeyError:
                raise UnsupportedDimension(f"dimension {d} not in {self.dims}") from None
        if int(d) != d or d < 1:
            raise UnsupportedDimension(f"dimension must be a positive integer, got {d!r}")
        return self._rule(int(d))

    def cri(self, crit, d):
        return Criterion.parse(crit).cri(self.sequence(d).first)

    def to_json(self):
        if self._table is None:
            raise ValueError("rule-defined problems have no JSON form")
        return {"kind": "general",
                "dims": [{"d": d, "sequence": s.to_json()} for d, s in sorted(self._table.items())]}


# Trend rule shared by every empirical check

def trend_decreasing(values):
    """Last value at most half the first and the final half nonincreasing.

    An all-zero window counts as decreasing.
    """
    vals = [float(v) for v in values]
    if not vals:
        return False
    if all(v == 0 for v in vals):
        return True
    if not vals[-1] <= 0.5 * vals[0]:
        return False
    tail = vals[len(vals) // 2:]
    return all(b <= a for a, b in zip(tail, tail[1:]))


def trend_increasing(values):
    """Mirror of :func:`trend_decreasing`: last at least twice the first, final half nondecreasing."""
    vals = [float(v) for v in values]
    if not vals or all(v == 0 for v in vals):
        return False
    if not vals[-1] >= 2 * vals[0]:
        return False
    tail = vals[len(vals) // 2:]
    return all(b >= a for a, b in zip(tail, tail[1:]))


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, enum.Enum):
        return v.value
    return json_number(v)


@dataclass
class TrendReport:
    condition: str
    params: dict[str, Any]
    samples: list
    flag: bool
    symbolic: bool | None = None
    increasing: bool = False

    def to_json(self):
        doc = {"condition": self.condition, "params": _jsonable(self.params),
               "samples": _jsonable(self.samples), "flag": self.flag,
               "increasing": self.increasing, "empirical": True}
        if self.symbolic is not None:
            doc["symbolic"] = self.symbolic
        return doc


@dataclass
class SupReport:
    condition: str
    params: dict[str, Any]
    sup: float | None
    witness: dict[str, Any] | None
    samples: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def to_json(self):
        doc = {"condition": self.condition, "params": _jsonable(self.params),
               "samples": _jsonable(self.samples), "flag": self.sup is not None,
               "sup": self.sup, "empirical": True, "skipped": _jsonable(self.skipped)}
        if self.witness is not None:
            doc["witness"] = _jsonable(self.witness)
        return doc


def initial_error(p: GeneralProblem, d):
    """``sqrt(lambda_{d,1})``; exact when it is a rational square."""
    return exact_sqrt(p.sequence(d).first)


def info_complexity(p: GeneralProblem, crit, eps, d) -> int:
    """``min{n : lambda_{d,n+1} <= eps^2 * CRI_d}`` as a threshold count."""
    crit = Criterion.parse(crit)
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    seq = p.sequence(d)
    if crit is Criterion.NORMALIZED and eps >= 1:
        return 0
    return seq.count_above(eps * eps * crit.cri(seq.first))


def _log_lns(j, s):
    # (2/s) * ln ln j, with ln ln 1 = -inf
    return -math.inf if j == 1 else (2.0 / float(s)) * math.log(math.log(j))


def check_C1(p, crit, s, d, window=DEFAULT_WINDOW) -> TrendReport:
    """Sample ``lambda_{d,j}/CRI_d * ln^(2/s) j`` on ``window``."""
    crit = Criterion.parse(crit)
    s = as_fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    window = [int(j) for j in window]
    if len(window) < 4 or any(b <= a for a, b in zip(window, window[1:])) or window[0] < 1:
        raise ValueError("window needs at least 4 increasing positive indices")
    seq = p.sequence(d)
    lcri = log_abs(crit.cri(seq.first))
    samples = []
    for j in window:
        le = seq.log_eigen_at(j)
        v = 0.0 if le == -math.inf or j == 1 else math.exp(le - lcri + _log_lns(j, s))
        samples.append([j, v])
    vals = [v for _, v in samples]
    return TrendReport("C1", {"s": s, "d": d, "criterion": crit.value}, samples,
                       trend_decreasing(vals), symbolic=seq.decay_class().passes(s),
                       increasing=trend_increasing(vals))


def _scaled_tail(seq, cri, s, n):
    """``lambda_j / cri * ln^(2/s) j`` for j = 1..n as a float array."""
    vals = seq.values(n) / float(cri)
    j = np.arange(1, n + 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(j > 1, np.log(j) ** (2.0 / float(s)), 0.0)
    return vals * w


def _check_betas(betas):
    betas = [as_fraction(b) for b in betas]
    if not betas or any(not 0 < b < 1 for b in betas):
        raise ValueError("betas must lie in (0, 1)")
    return betas


def check_C2(p, crit, s, t, betas=(0.1, 0.25, 0.5), d_max=6, j_budget=100_000) -> SupReport:
    """Empirical ``L_{s,t}`` with ``f_{s,t} = 1`` over ``d <= d_max``, ``j <= j_budget``.

    Cells whose index floor ``ceil(exp(d^t sqrt(beta))) + 1`` exceeds the
    budget are listed under ``skipped`` instead of aborting the run.
    """
    crit = Criterion.parse(crit)
    s, t = as_fraction(s), as_fraction(t)
    if s <= 0 or t <= 0:
        raise ValueError("s and t must be positive")
    betas = _check_betas(betas)
    best, witness, samples, skipped = None, None, [], []
    for d in range(1, d_max + 1):
        seq = p.sequence(d)
        prod = _scaled_tail(seq, crit.cri(seq.first), s, j_budget)
        for beta in betas:
            try:
                floor = math.ceil(math.exp(float(d) ** float(t) * math.sqrt(beta))) + 1
            except OverflowError:
                floor = math.inf
            if floor > j_budget:
                skipped.append({"beta": beta, "d": d, "reason": "index floor exceeds budget"})
                continue
            seg = prod[floor - 1:]
            k = int(np.argmax(seg))
            val = float(seg[k]) * float(beta) ** (-2.0 / float(s))
            samples.append([beta, d, val])
            if best is None or val > best:
                best, witness = val, {"beta": beta, "d": d, "j": floor + k}
    params = {"s": s, "t": t, "betas": betas, "d_max": d_max, "j_budget": j_budget,
              "criterion": crit.value, "f": 1}
    return SupReport("C2", params, best, witness, samples, skipped)


def check_C3(p, crit, d_window=range(1, 9)) -> TrendReport:
    crit = Criterion.parse(crit)
    d_window = list(d_window)
    if len(d_window) < 4:
        raise ValueError("need at least 4 dimensions")
    samples = []
    for d in d_window:
        seq = p.sequence(d)
        samples.append([d, seq.eigen_at(2) / crit.cri(seq.first)])
    vals = [v for _, v in samples]
    return TrendReport("C3", {"criterion": crit.value, "dims": d_window}, samples,
                       trend_decreasing(vals), increasing=trend_increasing(vals))


def check_C4(p, crit, s, betas=(0.1, 0.25, 0.5), g=None, j_budget=100_000,
             d_window=range(1, 7)) -> SupReport:
    """As :func:`check_C2`, with a d-independent index floor ``g(beta)`` (default 2)."""
    crit = Criterion.parse(crit)
    s = as_fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    betas = _check_betas(betas)
    g = g or (lambda beta: 2)
    best, witness, samples, skipped = None, None, [], []
    for d in d_window:
        seq = p.sequence(d)
        prod = _scaled_tail(seq, crit.cri(seq.first), s, j_budget)
        for beta in betas:
            floor = max(1, int(g(beta)))
            if floor > j_budget:
                skipped.append({"beta": beta, "d": d, "reason": "index floor exceeds budget"})
                continue
            seg = prod[floor - 1:]
            k = int(np.argmax(seg))
            val = float(seg[k]) * float(beta) ** (-2.0 / float(s))
            samples.append([beta, d, val])
            if best is None or val > best:
                best, witness = val, {"beta": beta, "d": d, "j": floor + k}
    params = {"s": s, "betas": betas, "dims": list(d_window), "j_budget": j_budget,
              "criterion": crit.value, "g": "2" if g.__name__ == "<lambda>" else g.__name__}
    return SupReport("C4", params, best, witness, samples, skipped)


def _ceil_ratio(r):
    if r is INFINITE:
        raise InfiniteTrace("trace ratio is infinite")
    if isinstance(r, Enclosure):
        r = r.hi  # upper end keeps the bound valid
    if isinstance(r, float):
        if not math.isfinite(r):
            raise InfiniteTrace("trace ratio is infinite")
        return math.ceil(r)
    return math.ceil(as_fraction(r))


def std_upper_bound(n_all_at_scaled, eps, trace_ratio) -> int:
    """Integer upper bound ``ceil(n_all * 4 eps^-2 * ceil(trace_ratio))`` for standard information."""
    ceil_r = _ceil_ratio(trace_ratio)
    n_all = int(n_all_at_scaled)
    if n_all < 0:
        raise ValueError("complexity must be nonnegative")
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if n_all == 0:
        return 0
    return math.ceil(n_all * 4 / (eps * eps) * ceil_r)


def _log_ceil(r):
    c = _ceil_ratio(r)
    return math.log(c) if c > 1 else 0.0


def check_trace_condition(traces, t, d_window=range(1, 11), base_ratio=None) -> TrendReport:
    """Sample ``ln ceil(trace(W_d)/CRI_d) / d^t``.

    ``traces`` maps d to the ratio (or is a callable).  Pass ``base_ratio`` for
    a tensor product problem to get the closed-form verdict, which holds iff
    ``t > 1`` or the univariate ratio is at most one.
    """
    t = as_fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    get = traces if callable(traces) else traces.__getitem__
    samples = []
    for d in d_window:
        samples.append([d, _log_ceil(get(d)) / float(d) ** float(t)])
    symbolic = None
    if base_ratio is not None:
        if base_ratio is INFINITE:
            raise InfiniteTrace("univariate trace is infinite")
        r1 = base_ratio.hi if isinstance(base_ratio, Enclosure) else base_ratio
        symbolic = t > 1 or r1 <= 1
    vals = [v for _, v in samples]
    return TrendReport("trace", {"t": t, "dims": list(d_window)}, samples,
                       trend_decreasing(vals), symbolic=symbolic,
                       increasing=trend_increasing(vals))
