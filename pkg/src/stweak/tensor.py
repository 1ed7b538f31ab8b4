"""Linear tensor product problems.

The d-variate eigenvalues are all products ``lambda_{j_1} ... lambda_{j_d}``
of one univariate sequence.  Counts are exact for rational bases (memoized
recursion on the exact residual threshold) and run in the log domain with a
tie warning otherwise.
"""

from __future__ import annotations

import math
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import kernels
from ._exact import as_fraction, exact_sqrt, iroot, log_abs
from .errors import BudgetExceeded, TieWarning
from .hilbert import Criterion, STParams, TrendReport, trend_decreasing, trend_increasing
from .spectra import (INFINITE, DecayClass, EigenSeq, Enclosure, Explicit, FiniteRank,
                      Geometric, LogDecay, PolyDecay)
from .verdict import Outcome, Verdict, holds

__all__ = [
    "TensorProblem", "TensorSpectrum", "tensor_count", "brute_force_count",
    "factorial_bound", "power_lower_bound", "classify_tensor", "suff_cond_evidence",
    "lemacik3_check", "lemacik4_check", "PairedReport", "trace_ratio",
]

DEFAULT_BUDGET = 10 ** 9
TIE_TOL = 1e-12          # log-domain tie band, i.e. relative 1e-12 on products
MAX_CANDIDATES = 10 ** 7  # univariate list length for the log-domain kernel


@dataclass(frozen=True)
class TensorProblem:
    base: EigenSeq

    def __post_init__(self):
        if not isinstance(self.base, EigenSeq):
            raise TypeError("base must be an EigenSeq")

    def initial_error(self, d):
        return exact_sqrt(self.base.first ** d)

    def cri(self, crit, d):
        crit = Criterion.parse(crit)
        return Fraction(1) if crit is Criterion.ABSOLUTE else self.base.first ** d

    def to_json(self):
        return {"kind": "tensor", "sequence": self.base.to_json()}


def _threshold(tp, crit, eps, d):
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if d < 1 or int(d) != d:
        raise ValueError("d must be a positive integer")
    return eps * eps * tp.cri(crit, d)


class _Lazy:
    """Exact univariate eigenvalues, cached as the recursion asks for them."""

    def __init__(self, seq):
        self.seq = seq
        self.vals = []

    def __getitem__(self, j):
        while len(self.vals) < j:
            self.vals.append(self.seq.eigen_at(len(self.vals) + 1))
        return self.vals[j - 1]


def _count_exact(base, d, T, budget):
    lam = _Lazy(base)
    pw = [Fraction(1)]
    for _ in range(d):
        pw.append(pw[-1] * base.first)
    memo = {}
    nodes = 0

    def rec(depth, T):
        nonlocal nodes
        if pw[depth] <= T:
            return 0
        if depth == 1:
            return base.count_above(T)
        key = (depth, T)
        hit = memo.get(key)
        if hit is not None:
            return hit
        top = pw[depth - 1]
        total, j = 0, 1
        while True:
            lj = lam[j]
            if lj * top <= T:
                break
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("tensor recursion nodes", budget)
            total += rec(depth - 1, T / lj)
            j += 1
        memo[key] = total
        return total

    limit = sys.getrecursionlimit()
    if d + 200 > limit:
        sys.setrecursionlimit(d + 200)
    try:
        return rec(d, T)
    finally:
        sys.setrecursionlimit(limit)


def _log_values(seq, n):
    with np.errstate(divide="ignore"):
        out = np.log(seq.values(n))
    return out[np.isfinite(out)]


def _count_log(base, d, T, budget):
    logT = log_abs(T)
    llam1 = log_abs(base.first)
    if d * llam1 <= logT - TIE_TOL:
        return 0
    # coordinates that can take part: lambda_j * lambda_1^(d-1) > T (minus the tie band)
    lt1 = logT - (d - 1) * llam1 - TIE_TOL
    if lt1 < -700:
        raise BudgetExceeded("tensor candidate list (threshold underflow)", MAX_CANDIDATES)
    T1 = Fraction(math.exp(lt1))
    if base.log_count_above(T1) > math.log(MAX_CANDIDATES):
        raise BudgetExceeded("tensor candidate list", MAX_CANDIDATES)
    L = base.count_above(T1)
    logl = _log_values(base, L).tolist()
    count, near = kernels.count_products_log(logl, d, logT, tol=TIE_TOL, cap=budget)
    if near:
        warnings.warn(f"{near} index tuples lie within relative {TIE_TOL:g} of the "
                      "threshold; the count may be off by up to that many", TieWarning,
                      stacklevel=3)
    return count


def count_products_above(base, d, T, budget=DEFAULT_BUDGET):
    """``#{j in N^d : prod lambda_{j_l} > T}`` for ``T > 0``."""
    T = as_fraction(T) if not isinstance(T, float) else T
    if T <= 0:
        raise ValueError("threshold must be positive")
    if base.exact and isinstance(T, Fraction):
        return _count_exact(base, d, T, budget)
    return _count_log(base, d, T, budget)


def tensor_count(tp: TensorProblem, crit, eps, d, *, budget=DEFAULT_BUDGET) -> int:
    """``n^crit(eps, S_d) = #{j in N^d : lambda_{d,j} > eps^2 CRI_d}``."""
    T = _threshold(tp, crit, eps, d)
    return count_products_above(tp.base, d, T, budget)


def brute_force_count(tp: TensorProblem, crit, eps, d, *, max_box=10 ** 6) -> int:
    """Reference count by full enumeration of the candidate box."""
    T = _threshold(tp, crit, eps, d)
    base = tp.base
    if base.first ** d <= T:
        return 0
    L = base.count_above(T / base.first ** (d - 1))
    if L ** d > max_box:
        raise BudgetExceeded("brute-force box", max_box)
    vals = [base.eigen_at(j) for j in range(1, L + 1)]
    n = 0
    for idx in product(range(L), repeat=d):
        p = Fraction(1) if base.exact else 1.0
        for i in idx:
            p *= vals[i]
        n += p > T
    return n


# Bounds through the rescaled univariate problem lambda'_j = lambda_j / lambda_1

def _root_floor(R, l):
    """A dyadic lower approximation of ``R^(1/l)`` with ~60 significant bits."""
    if l == 1:
        return R
    e = log_abs(R) / (l * math.log(2))
    k = max(0, 64 - math.floor(e))
    return Fraction(iroot((R.numerator << (k * l)) // R.denominator, l), 1 << k)


def _pow_count(base, R, l):
    """``#{j : lambda_j^l > R}`` for ``R > 0``."""
    if base.exact:
        n = base.count_above(_root_floor(R, l))
        while n > 0 and not base.eigen_at(n) ** l > R:
            n -= 1
        while (v := base.eigen_at(n + 1)) > 0 and v ** l > R:
            n += 1
        return n
    lr = log_abs(R) / l
    n = base.count_above(Fraction(math.exp(lr)))
    while n > 0 and not base.log_eigen_at(n) > lr:
        n -= 1
    while base.log_eigen_at(n + 1) > lr:
        n += 1
    return n


def _rescaled_count(tp, eps, d, l):
    # n^abs((eps/lambda_1^(d/2))^(1/l), S'_1) = #{j : lambda_j^l lambda_1^(d-l) > eps^2}
    eps = as_fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if not 1 <= l <= d:
        raise ValueError("need 1 <= l <= d")
    return _pow_count(tp.base, eps * eps / tp.base.first ** (d - l), l)


def factorial_bound(tp: TensorProblem, eps, d) -> int:
    """``d! * prod_{l=1..d} n^abs((eps/lambda_1^(d/2))^(1/l), S'_1)``."""
    out = math.factorial(d)
    for l in range(1, d + 1):
        out *= _rescaled_count(tp, eps, d, l)
        if out == 0:
            break
    return out


def power_lower_bound(tp: TensorProblem, eps, d, l) -> int:
    """``n^abs((eps/lambda_1^(d/2))^(1/l), S'_1)^l``, a lower bound for the absolute count."""
    return _rescaled_count(tp, eps, d, l) ** l


# Log-domain univariate counts at thresholds far below double range

def _log_count_log(seq, logT):
    """``ln #{j : lambda_j > exp(logT)}`` (``-inf`` for none); approximate in the far tail."""
    if logT > -700:
        return seq.log_count_above(Fraction(math.exp(logT)))
    la = log_abs(seq.first)
    if isinstance(seq, Geometric):
        if seq.ratio == 0:
            return 0.0
        return math.log(math.floor((la - logT) / -log_abs(seq.ratio)) + 1)
    if isinstance(seq, PolyDecay):
        return (la - logT) / float(seq.exponent)
    if isinstance(seq, LogDecay):
        return math.exp(min(700.0, float(seq.sigma) / 2 * (la - logT)))
    if isinstance(seq, FiniteRank):
        return math.log(sum(1 for v in seq.entries if v > 0))
    if isinstance(seq, Explicit):
        return float(np.logaddexp(math.log(len(seq.prefix)), _log_count_log(seq.tail, logT)))
    if isinstance(seq, TensorSpectrum):
        raise NotImplementedError("nested tensor spectra")
    raise TypeError(f"unsupported sequence {type(seq).__name__}")


def _suff_quantity(base, s, t, eps, d):
    # ln d * max_l l * ln n^abs((eps/lambda_1^(d/2))^(1/l), S'_1) / (eps^-s + d^t)
    la = log_abs(base.first)
    le = log_abs(eps)
    best = 0.0
    for l in range(1, d + 1):
        lc = _log_count_log(base, la + (2 * le - d * la) / l)
        if lc > 0:
            best = max(best, l * lc)
    denom = math.exp(-float(s) * le) + float(d) ** float(t)
    return math.log(d) * best / denom


def suff_cond_evidence(base, s, t, dims=tuple(2 ** k for k in range(1, 13)), eps_fixed=Fraction(1, 2)):
    """Sample the sufficient-condition quantity along a diagonal and a fixed-eps family."""
    fams = {"diagonal": [(Fraction(1, d), d) for d in dims],
            "fixed-eps": [(as_fraction(eps_fixed), d) for d in dims]}
    out = {}
    for name, cells in fams.items():
        samples = [[e, d, _suff_quantity(base, s, t, e, d)] for e, d in cells]
        vals = [v for *_, v in samples]
        out[name] = {"samples": samples, "flag": trend_decreasing(vals)}
    return {"families": out, "flag": all(f["flag"] for f in out.values())}


# Classification

def _decay(base, s):
    return base.decay_class().passes(s)


def _normalized_branch(base, s, t, clause_prefix):
    ok = _decay(base, s)
    m = base.multiplicity_of_max()
    clause = f"{clause_prefix}.m1" if m == 1 else f"{clause_prefix}.m>1"
    if ok is None:
        return Verdict(Outcome.INCONCLUSIVE, clause, {"reason": "decay class unknown"})
    ev = {"decay": str(base.decay_class()), "m": m}
    return holds(ok and (m == 1 or t > 1), clause, ev)


def classify_tensor(tp: TensorProblem, crit, st: STParams) -> Verdict:
    crit = Criterion.parse(crit)
    base = tp.base
    s, t = st.s, st.t
    lam1, lam2 = base.first, base.eigen_at(2)

    if s == 0:
        return holds(lam2 == 0, "tensor.s-zero", {"lambda2": lam2})
    if lam2 == 0:
        return holds(True, "tensor.rank-one")
    if t == 0:
        if crit is Criterion.NORMALIZED:
            return holds(False, "tensor.t-zero.normalized", {"lambda2": lam2})
        ok = _decay(base, s)
        if lam1 < 1 and ok is None:
            return Verdict(Outcome.INCONCLUSIVE, "tensor.t-zero.absolute", {"reason": "decay class unknown"})
        return holds(lam1 < 1 and ok, "tensor.t-zero.absolute",
                     {"lambda1": lam1, "decay": str(base.decay_class())})
    if crit is Criterion.NORMALIZED:
        return _normalized_branch(base, s, t, "tensor.normalized")
    if lam1 < 1:
        ok = _decay(base, s)
        if ok is None:
            return Verdict(Outcome.INCONCLUSIVE, "tensor.absolute.lambda1<1", {"reason": "decay class unknown"})
        return holds(ok, "tensor.absolute.lambda1<1", {"decay": str(base.decay_class())})
    if lam1 == 1:
        return _normalized_branch(base, s, t, "tensor.absolute.lambda1=1")

    clause = "tensor.absolute.lambda1>1"
    if t <= 1:
        return Verdict(Outcome.NECESSARY_FAILS, clause, {"necessary": "t > 1", "t": t})
    ok = _decay(base, s)
    if ok is False:
        return Verdict(Outcome.NECESSARY_FAILS, clause,
                       {"necessary": "univariate decay at s", "decay": str(base.decay_class())})
    if not base.log_decay_dominates(t):
        return Verdict(Outcome.NECESSARY_FAILS, clause,
                       {"necessary": "ln(1/lambda_n) / ln^(1/t) n -> infinity"})
    ev = suff_cond_evidence(base, s, t)
    ev["necessary"] = "t > 1, decay and log-decay conditions hold"
    if ok is None:
        return Verdict(Outcome.INCONCLUSIVE, clause, ev)
    return Verdict(Outcome.SUFFICIENT_HOLDS if ev["flag"] else Outcome.INCONCLUSIVE, clause, ev)


# Univariate <-> multivariate lemma checks

@dataclass
class PairedReport:
    lemma: str
    left: TrendReport
    right: TrendReport

    @property
    def agree(self):
        return self.left.flag == self.right.flag

    def to_json(self):
        return {"lemma": self.lemma, "left": self.left.to_json(),
                "right": self.right.to_json(), "agree": self.agree}


DEFAULT_N_WINDOW = (10, 100, 1000, 10 ** 4, 10 ** 5, 10 ** 6)
DEFAULT_EPS_GRID = ("0.1", "0.01", "0.001", "0.0001", "0.00001")


def lemacik3_check(base, s, eps_grid=DEFAULT_EPS_GRID, n_window=DEFAULT_N_WINDOW) -> PairedReport:
    """Decay ``lambda_n ln^(2/s) n -> 0`` against ``ln n^abs(eps,S_1) / eps^-s -> 0``."""
    s = as_fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    left = []
    for n in n_window:
        le = base.log_eigen_at(n)
        left.append([n, 0.0 if le == -math.inf else math.exp(le + 2 / float(s) * math.log(math.log(n)))])
    right = []
    for e in eps_grid:
        e = as_fraction(e)
        lc = base.log_count_above(e * e)
        right.append([e, 0.0 if lc == -math.inf else lc * math.exp(float(s) * log_abs(e))])
    lv, rv = [v for _, v in left], [v for _, v in right]
    return PairedReport(
        "decay-vs-univariate-complexity",
        TrendReport("lambda_n ln^(2/s) n", {"s": s}, left, trend_decreasing(lv), increasing=trend_increasing(lv)),
        TrendReport("ln n(eps) / eps^-s", {"s": s}, right, trend_decreasing(rv), increasing=trend_increasing(rv)),
    )


def lemacik4_check(base, L, t, k_window=tuple(2 ** k for k in range(1, 11)),
                   n_window=DEFAULT_N_WINDOW) -> PairedReport:
    """``ln(1/lambda_n) / ln^(1/t) n -> inf`` against ``ln n^abs(L^-k, S_1) / k^t -> 0``."""
    L, t = as_fraction(L), as_fraction(t)
    if L <= 1 or t <= 0:
        raise ValueError("need L > 1 and t > 0")
    left = []
    for n in n_window:
        le = base.log_eigen_at(n)
        left.append([n, math.inf if le == -math.inf else -le / math.log(n) ** (1 / float(t))])
    right = []
    for k in k_window:
        lc = base.log_count_above(L ** (-2 * k))
        right.append([k, 0.0 if lc == -math.inf else lc / float(k) ** float(t)])
    lv, rv = [v for _, v in left], [v for _, v in right]
    params = {"L": L, "t": t}
    return PairedReport(
        "log-decay-vs-geometric-accuracy",
        TrendReport("ln(1/lambda_n) / ln^(1/t) n", params, left, trend_increasing(lv),
                    increasing=trend_increasing(lv)),
        TrendReport("ln n(L^-k) / k^t", params, right, trend_decreasing(rv),
                    increasing=trend_increasing(rv)),
    )


# The d-variate spectrum as a sequence of its own

def _top_products(a, b, n):
    # the i-th (1-based) entry of a times the j-th of b can only be in the
    # top n if i*j <= n, since all smaller index pairs dominate it
    m = min(len(a), n)
    k = np.minimum(len(b), n // np.arange(1, m + 1))
    k = k[k > 0]
    starts = np.cumsum(k) - k
    ii = np.repeat(np.arange(len(k)), k)
    jj = np.arange(int(k.sum())) - np.repeat(starts, k)
    c = a[ii] * b[jj]
    if len(c) > n:
        c = np.partition(c, len(c) - n)[len(c) - n:]
    return np.sort(c)[::-1]


class TensorSpectrum(EigenSeq):
    """Nonincreasing rearrangement of the d-fold products of ``base``.

    Only ``first``, ``eigen_at(2)`` and counts are exact; other entries come
    from a float merge of the leading products.
    """

    def __init__(self, base: EigenSeq, d: int):
        if d < 1:
            raise ValueError("d must be >= 1")
        self.base, self.d = base, int(d)
        self._cache = np.empty(0)

    @property
    def exact(self):
        return self.base.exact

    @property
    def first(self):
        return self.base.first ** self.d

    def values(self, n):
        if len(self._cache) < n:
            b = self.base.values(n)
            v = b
            for _ in range(self.d - 1):
                v = _top_products(v, b, n)
            if len(v) < n:
                v = np.concatenate([v, np.zeros(n - len(v))])
            self._cache = v
        return self._cache[:n].copy()

    def eigen_at(self, j):
        self._check_index(j)
        if j == 1:
            return self.first
        if j == 2:
            return self.base.first ** (self.d - 1) * self.base.eigen_at(2)
        return float(self.values(j)[j - 1])

    def count_above(self, T):
        T = as_fraction(T) if not isinstance(T, float) else T
        if T == 0:
            return self.base.count_above(0) ** self.d
        return count_products_above(self.base, self.d, T)

    def decay_class(self) -> DecayClass:
        return self.base.decay_class()

    def multiplicity_of_max(self):
        return self.base.multiplicity_of_max() ** self.d

    def trace(self):
        tr = self.base.trace()
        if tr is INFINITE:
            return INFINITE
        if isinstance(tr, Enclosure):
            return Enclosure(tr.lo ** self.d, tr.hi ** self.d)
        return tr ** self.d

    def log_decay_dominates(self, t):
        return self.base.log_decay_dominates(t)

    def to_json(self):
        return {"family": "tensor-power", "base": self.base.to_json(), "d": self.d}


def trace_ratio(tp: TensorProblem, crit):
    """Univariate ``trace(W_1)/CRI_1``; the d-variate ratio is its d-th power."""
    crit = Criterion.parse(crit)
    tr = tp.base.trace()
    if tr is INFINITE:
        return INFINITE
    cri = tp.cri(crit, 1)
    if isinstance(tr, Enclosure):
        return tr * (1 / cri)
    return tr / cri
