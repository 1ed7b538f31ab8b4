"""Periodic Sobolev embeddings ``H^{alpha,norm}(T^d) -> L_2(T^d)``.

The singular value at frequency ``k in Z^d`` is ``w(k)^(-1/2)`` with

* plus:  ``w(k) = (1 + sum k_j^2)^alpha``
* star:  ``w(k) = 1 + sum |k_j|^(2 alpha)``
* sharp: ``w(k) = (1 + sum |k_j|)^(2 alpha)``

When the inner sum runs over integer values (always for plus and sharp, and
for star when ``2 alpha`` is an integer) the weights are increasing functions
of an integer level ``v``, and the number of frequencies on each level is an
exact big-integer convolution.  Star with non-integer ``2 alpha`` falls back
to lattice enumeration with a relative grouping tolerance.
"""

from __future__ import annotations

import enum
import functools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import NamedTuple

import numpy as np

from . import kernels
from ._exact import as_fraction, log_abs, pow_cmp
from .errors import BudgetExceeded, TieWarning
from .hilbert import STParams
from .verdict import Outcome, Verdict, holds

__all__ = [
    "Norm", "SobolevProblem", "weight", "count_weight_leq", "approx_number",
    "approx_numbers", "approx_table", "sobolev_complexity", "classify_sobolev",
    "verify_identities", "verify_bounds", "l1_ball_count", "LadderRow",
]

DEFAULT_CAP = 10 ** 8
GROUP_RTOL = 1e-9


class Norm(enum.Enum):
    PLUS = "plus"
    STAR = "star"
    SHARP = "sharp"


@dataclass(frozen=True)
class SobolevProblem:
    alpha: Fraction
    norm: Norm
    gamma: Fraction | None = None
    beta: Fraction | None = None

    def __init__(self, alpha, norm, gamma=None, beta=None):
        alpha = as_fraction(alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        norm = norm if isinstance(norm, Norm) else Norm(str(norm).lower())
        for name, v in (("gamma", gamma), ("beta", beta)):
            if v is not None and as_fraction(v) < 0:
                raise ValueError(f"{name} must be nonnegative")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "norm", norm)
        object.__setattr__(self, "gamma", None if gamma is None else as_fraction(gamma))
        object.__setattr__(self, "beta", None if beta is None else as_fraction(beta))

    @property
    def hybrid(self):
        return self.gamma is not None or self.beta is not None

    def to_json(self):
        doc = {"kind": "sobolev", "alpha": str(self.alpha), "norm": self.norm.value}
        if self.gamma is not None:
            doc["gamma"] = str(self.gamma)
        if self.beta is not None:
            doc["beta"] = str(self.beta)
        return doc


def _ladder_form(p):
    """``(e, g)`` with ``w = (1 + v)^g`` on level ``v = sum |k_j|^e``; ``None`` if ``e`` is not integral."""
    if p.norm is Norm.PLUS:
        return 2, p.alpha
    if p.norm is Norm.SHARP:
        return 1, 2 * p.alpha
    e = 2 * p.alpha
    return (int(e), Fraction(1)) if e.denominator == 1 else None


def _power(base, g):
    return base ** g.numerator if g.denominator == 1 else float(base) ** float(g)


def weight(p: SobolevProblem, k):
    """``w(k)``; an exact integer whenever the outer exponent is integral."""
    k = [abs(int(x)) for x in k]
    if not k:
        raise ValueError("empty frequency vector")
    if p.norm is Norm.PLUS:
        return _power(1 + sum(x * x for x in k), p.alpha)
    if p.norm is Norm.SHARP:
        return _power(1 + sum(k), 2 * p.alpha)
    e = 2 * p.alpha
    if e.denominator == 1:
        return 1 + sum(x ** e.numerator for x in k)
    return 1.0 + math.fsum(float(x) ** float(e) for x in k)


# Level counts: #{k in Z^d : sum |k_j|^e = v}

def _bucket(V):
    b = 16
    while b < V:
        b *= 2
    return b


@functools.lru_cache(maxsize=256)
def _levels(e, d, V):
    if d == 0:
        out = np.zeros(V + 1, dtype=object)
        out[0] = 1
        return out
    prev = _levels(e, d - 1, V)
    out = np.zeros(V + 1, dtype=object)
    k = 0
    while (t := k ** e) <= V:
        out[t:] += (1 if k == 0 else 2) * prev[:V + 1 - t]
        k += 1
    out.flags.writeable = False
    return out


@functools.lru_cache(maxsize=256)
def _cumulative(e, d, V):
    out = np.array(list(accumulate(_levels(e, d, V))), dtype=object)
    out.flags.writeable = False
    return out


def _check_work(e, d, V, cap):
    terms = iroot_floor(V, e) + 1
    if d * (V + 1) * terms > cap:
        raise BudgetExceeded(f"level table d={d}, V={V}", cap)


def iroot_floor(V, e):
    r = int(round(V ** (1.0 / e)))
    while r ** e > V:
        r -= 1
    while (r + 1) ** e <= V:
        r += 1
    return r


def _top_level(g, W, strict):
    """Largest ``v >= -1`` with ``(1+v)^g <= W`` (``< W`` if strict)."""
    def ok(v):
        c = pow_cmp(1 + v, g, W)
        return c < 0 if strict else c <= 0

    v = max(-1, int(math.exp(log_abs(W) / float(g))) - 1)
    while v >= 0 and not ok(v):
        v -= 1
    while ok(v + 1):
        v += 1
    return v


def _count_integer(e, g, d, W, strict, cap):
    v = _top_level(g, W, strict)
    if v < 0:
        return 0
    V = _bucket(v)
    _check_work(e, d, V, cap)
    return int(_cumulative(e, d, V)[v])


def _star_phi(alpha, limit):
    e = 2 * float(alpha)
    phi, k = [], 0
    while (x := float(k) ** e) <= limit:
        phi.append(x)
        k += 1
    return phi


def _count_star_float(p, d, W, strict, cap):
    limit = float(W) - 1.0
    if limit < 0:
        return 0
    tol = GROUP_RTOL * float(W)
    phi = _star_phi(p.alpha, limit + tol)
    n, near = kernels.count_separable(phi, d, limit, strict=strict, tol=tol, cap=cap)
    if near:
        warnings.warn(f"{near} frequencies have weight within relative {GROUP_RTOL:g} of {W}",
                      TieWarning, stacklevel=3)
    return n


def _count(p, d, W, strict, cap):
    if d < 1:
        raise ValueError("d must be >= 1")
    form = _ladder_form(p)
    if form is None:
        return _count_star_float(p, d, W, strict, cap)
    return _count_integer(*form, d, W, strict, cap)


def count_weight_leq(p: SobolevProblem, d, W, *, cap=DEFAULT_CAP) -> int:
    """``#{k in Z^d : w(k) <= W}``."""
    W = W if isinstance(W, float) else as_fraction(W)
    if W < 1:
        return 0
    return _count(p, d, W, False, cap)


def sobolev_complexity(p: SobolevProblem, eps, d, *, cap=DEFAULT_CAP) -> int:
    """``min{n : a_{n+1,d} <= eps} = #{k : w(k) < eps^-2}``; the two criteria coincide."""
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eps >= 1:
        return 0
    return _count(p, d, 1 / (eps * eps), True, cap)


class LadderRow(NamedTuple):
    n: int
    a: float
    level_weight: object
    cumulative: int


def _ladder(p, d, n, cap):
    """Distinct weights in increasing order as ``(weight, a, cumulative)`` until ``cumulative >= n``."""
    form = _ladder_form(p)
    rows = []
    if form is not None:
        e, g = form
        V = 16
        while True:
            _check_work(e, d, V, cap)
            cum = _cumulative(e, d, V)
            if cum[V] >= n:
                break
            V *= 2
        levels = _levels(e, d, V)
        for v in range(V + 1):
            if levels[v]:
                rows.append((_power(1 + v, g), (1.0 + v) ** (-float(g) / 2), int(cum[v])))
                if cum[v] >= n:
                    break
        return rows
    W = 4.0
    while True:
        got = kernels.collect_separable(_star_phi(p.alpha, W), d, W, cap=cap)
        # keep clear of the cut so a tie group is never split by it
        inside = np.asarray(got[0]) <= W * (1 - 1e-6)
        if int(np.asarray(got[1], dtype=object)[inside].sum()) >= n:
            break
        W *= 2
    sums, mult = got
    order = np.argsort(sums, kind="stable")
    total, merged = 0, False
    cur_w, cur_lo = None, None
    for i in order:
        w = 1.0 + sums[i]
        if cur_w is not None and w - cur_lo <= GROUP_RTOL * cur_lo:
            merged |= w != cur_w
            total += mult[i]
            rows[-1] = (cur_w, rows[-1][1], total)
            continue
        if rows and rows[-1][2] >= n:
            break
        total += mult[i]
        cur_w = cur_lo = w
        rows.append((w, w ** -0.5, total))
    if merged:
        warnings.warn(f"distinct weights within relative {GROUP_RTOL:g} were grouped", TieWarning,
                      stacklevel=3)
    return rows


def approx_table(p: SobolevProblem, d, n_max, *, cap=DEFAULT_CAP) -> list[LadderRow]:
    """Rows ``(n, a_{n,d}, weight of its level, cumulative count of that level)`` for n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = []
    n = 1
    for w, a, cum in _ladder(p, d, n_max, cap):
        while n <= min(cum, n_max):
            out.append(LadderRow(n, a, w, cum))
            n += 1
    return out


def approx_numbers(p: SobolevProblem, d, n_max, *, cap=DEFAULT_CAP):
    """``a_{1,d}, ..., a_{n_max,d}`` as a float array."""
    return np.array([r.a for r in approx_table(p, d, n_max, cap=cap)])


def approx_number(p: SobolevProblem, n, d, *, cap=DEFAULT_CAP) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    return float(approx_numbers(p, d, n, cap=cap)[n - 1])


def l1_ball_count(m, d) -> int:
    """``C(m,d) = #{k in Z^d : |k|_1 <= m}``."""
    if m < 0:
        return 0
    return sum(2 ** k * math.comb(d, k) * math.comb(m, k) for k in range(min(m, d) + 1))


# Classification

def classify_sobolev(p: SobolevProblem, st: STParams) -> Verdict:
    s, t = st.s, st.t
    a = p.alpha
    suffix = "+hybrid-transfer" if p.hybrid else ""
    ev = {"hybrid": "same verdict as the unlifted embedding"} if p.hybrid else None
    if p.norm is Norm.PLUS:
        return holds((s > 2 / a and t > 0) or (s > 0 and t > 1), "sobolev.plus" + suffix, ev)
    if p.norm is Norm.SHARP:
        return holds((s > 1 / a and t > 0) or (s > 0 and t > 1), "sobolev.sharp" + suffix, ev)
    clause = "sobolev.star" + suffix
    if (s > max(Fraction(2), 1 / a) and t > 0) or (s > 0 and t > 1):
        return Verdict(Outcome.SUFFICIENT_HOLDS, clause,
                       {"sufficient": "(s > max(2, 1/alpha) and t > 0) or (s > 0 and t > 1)", **(ev or {})})
    if not ((s > 2 and t > 0) or (s > 0 and t > 1)):
        return Verdict(Outcome.NECESSARY_FAILS, clause,
                       {"necessary": "(s > 2 and t > 0) or (s > 0 and t > 1)", **(ev or {})})
    return Verdict(Outcome.INCONCLUSIVE, clause,
                   {"gap": "2 < s <= 1/alpha with t <= 1 is open for alpha < 1/2", **(ev or {})})


# Identity and bound verification

def _check(name, params, violations, **extra):
    return {"check": name, "params": params, "pass": not violations,
            "violations": violations[:10], "n_violations": len(violations), **extra}


def verify_identities(d_max=3, n_max=500, alphas=(Fraction(1, 2), 1, 2), star_d_max=10,
                      *, tol=1e-12, cap=DEFAULT_CAP):
    """Check the three approximation-number identities on a finite grid."""
    alphas = [as_fraction(a) for a in alphas]
    checks = []
    v1, v2, worst1 = [], [], 0.0
    for d in range(1, d_max + 1):
        star1 = approx_numbers(SobolevProblem(1, Norm.STAR), d, n_max, cap=cap)
        for a in alphas:
            plus = approx_numbers(SobolevProblem(a, Norm.PLUS), d, n_max, cap=cap)
            rel = np.abs(plus - star1 ** float(a)) / plus
            worst1 = max(worst1, float(rel.max()))
            for n in np.nonzero(rel > tol)[0]:
                v1.append({"d": d, "alpha": a, "n": int(n) + 1, "rel_err": float(rel[n])})
            sharp = approx_numbers(SobolevProblem(a, Norm.SHARP), d, n_max, cap=cap)
            plus2 = approx_numbers(SobolevProblem(2 * a, Norm.PLUS), d, n_max, cap=cap)
            for n in np.nonzero(sharp < plus2 - tol)[0]:
                v2.append({"d": d, "alpha": a, "n": int(n) + 1, "sharp": float(sharp[n]),
                           "plus": float(plus2[n])})
    checks.append(_check("plus-equals-star-power", {"d_max": d_max, "n_max": n_max, "alphas": alphas},
                         v1, max_rel_err=worst1))
    checks.append(_check("sharp-dominates-plus-2alpha", {"d_max": d_max, "n_max": n_max, "alphas": alphas}, v2))
    v3, worst3 = [], 0.0
    target = 2 ** -0.5
    for d in range(1, star_d_max + 1):
        for a in alphas:
            val = approx_number(SobolevProblem(a, Norm.STAR), 2 * d + 1, d, cap=cap)
            worst3 = max(worst3, abs(val - target))
            if abs(val - target) > tol:
                v3.append({"d": d, "alpha": a, "value": val})
    checks.append(_check("star-2d+1", {"d_max": star_d_max, "alphas": alphas}, v3, max_abs_err=worst3))
    return {"suite": "sobolev-identities", "checks": checks, "pass": all(c["pass"] for c in checks)}


def ksu_floor(d):
    """Smallest index covered by the plus-norm lower bound."""
    return math.ceil(11 ** d * math.exp(d / 2))


def verify_bounds(d, alpha, n_range=None, eps_range=(0.5, 0.3, 0.1), *, cap=DEFAULT_CAP):
    """Pointwise check of the plus-norm lower bound and the sharp-norm complexity upper bound."""
    alpha = as_fraction(alpha)
    checks = []
    if n_range is not None:
        n_range = list(n_range)
        if min(n_range) < ksu_floor(d):
            raise ValueError(f"lower bound needs n >= {ksu_floor(d)}")
        a = approx_numbers(SobolevProblem(alpha, Norm.PLUS), d, max(n_range), cap=cap)
        c = (1 / (math.e * (d + 2))) ** (float(alpha) / 2)
        viol, margin = [], math.inf
        for n in n_range:
            lb = c * n ** (-float(alpha) / d)
            margin = min(margin, a[n - 1] - lb)
            if a[n - 1] < lb:
                viol.append({"n": n, "a": float(a[n - 1]), "bound": lb})
        checks.append(_check("plus-lower-bound", {"d": d, "alpha": alpha,
                                                  "n": [min(n_range), max(n_range)]}, viol, min_margin=margin))
    viol, margin = [], math.inf
    p = SobolevProblem(alpha, Norm.SHARP)
    for eps in eps_range:
        n = sobolev_complexity(p, eps, d, cap=cap)
        x = float(as_fraction(eps)) ** (-1 / float(alpha))
        rhs = min(x, d) * math.log(2 * (x + d))
        lhs = math.log(n) if n else -math.inf
        margin = min(margin, rhs - lhs)
        if lhs > rhs:
            viol.append({"eps": eps, "n": n, "lhs": lhs, "rhs": rhs})
    checks.append(_check("sharp-upper-bound", {"d": d, "alpha": alpha, "eps": list(eps_range)},
                         viol, min_margin=margin))
    return {"suite": "sobolev-bounds", "checks": checks, "pass": all(c["pass"] for c in checks)}
