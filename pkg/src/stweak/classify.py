"""Verdict dispatch, the tractability hierarchy, and the empirical limit sweep.

Verdicts only say Holds/Fails when a characterization decides the case.
The sweep samples ``ln n / (eps^-s + d^t)`` along double sequences and
reports trend flags; it never upgrades a verdict.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ._exact import as_fraction, fmt_number, log_abs
from .errors import InadmissibleCell
from .hilbert import (Criterion, GeneralProblem, STParams, check_C1, check_C2, check_C3, check_C4,
                      info_complexity, trend_decreasing, trend_increasing)
from .integration import IntegrationBound, a_cost_log, classify_integration
from .sobolev import Norm, SobolevProblem, classify_sobolev, sobolev_complexity
from .spectra import Explicit, FiniteRank, Geometric, LogDecay, PolyDecay
from .tensor import TensorProblem, classify_tensor, tensor_count
from .verdict import Outcome, Verdict, holds

__all__ = [
    "Outcome", "Verdict", "classify", "classify_general", "SweepGrid", "SweepResult", "sweep",
    "hierarchy_relations", "uwt_probe", "weak_tractability", "portfolio", "consistency_gate",
    "complexity", "SWEEP_HEADER",
]

SWEEP_HEADER = ("eps", "d", "n", "log_n", "denom", "ratio", "family")


# Complexity and admissibility for every problem kind

def _init_sq(problem, d):
    """Squared initial error."""
    if isinstance(problem, TensorProblem):
        return problem.base.first ** d
    if isinstance(problem, GeneralProblem):
        return problem.sequence(d).first
    return Fraction(1)


def admissible(problem, crit, eps, d):
    crit = Criterion.parse(crit)
    if eps <= 0 or d < 1:
        return False
    if crit is Criterion.NORMALIZED:
        return eps < 1
    return eps * eps < _init_sq(problem, d)


def complexity(problem, crit, eps, d, *, budget=None):
    """``(n, ln n)``; integration yields ``(None, upper-bound surrogate)``."""
    kw = {} if budget is None else {"budget": budget}
    if isinstance(problem, TensorProblem):
        n = tensor_count(problem, crit, eps, d, **kw)
    elif isinstance(problem, GeneralProblem):
        n = info_complexity(problem, crit, eps, d)
    elif isinstance(problem, SobolevProblem):
        n = sobolev_complexity(problem, eps, d, **({} if budget is None else {"cap": budget}))
    elif isinstance(problem, IntegrationBound):
        return None, a_cost_log(eps, d, problem.C)
    else:
        raise TypeError(f"unsupported problem {type(problem).__name__}")
    return n, (math.log(n) if n > 0 else 0.0)


# Verdicts

def classify_general(p: GeneralProblem, crit, st: STParams, dims=range(1, 9)) -> Verdict:
    crit = Criterion.parse(crit)
    dims = list(p.dims or dims)
    if st.s == 0:
        nonzero = [d for d in dims if p.sequence(d).eigen_at(2) > 0]
        if nonzero:
            return holds(False, "general.s-zero", {"lambda_d2_positive_at": nonzero[:5]})
        if p.dims is not None:
            return holds(True, "general.s-zero", {"dims": dims})
        return Verdict(Outcome.INCONCLUSIVE, "general.s-zero",
                       {"note": "lambda_{d,2} = 0 on every probed d", "dims": dims})
    for d in dims:
        ok = p.sequence(d).decay_class().passes(st.s)
        if ok is False:
            return holds(False, "general.C1", {"d": d, "decay": str(p.sequence(d).decay_class())})
    probe = dims[:6]
    c1 = [check_C1(p, crit, st.s, d).to_json() for d in probe[:3]]
    if st.t == 0:
        ev = {"C1": c1, "C3": check_C3(p, crit, dims if len(dims) >= 4 else range(1, 5)).to_json(),
              "C4": check_C4(p, crit, st.s, d_window=probe, j_budget=10_000).to_json()}
    else:
        ev = {"C1": c1, "C2": check_C2(p, crit, st.s, st.t, d_max=max(probe), j_budget=10_000).to_json()}
    return Verdict(Outcome.INCONCLUSIVE, "general.evidence", ev)


def classify(problem, crit, st: STParams) -> Verdict:
    if isinstance(problem, TensorProblem):
        return classify_tensor(problem, crit, st)
    if isinstance(problem, SobolevProblem):
        return classify_sobolev(problem, st)
    if isinstance(problem, IntegrationBound):
        return classify_integration(st, problem.variant)
    if isinstance(problem, GeneralProblem):
        return classify_general(problem, crit, st)
    raise TypeError(f"unsupported problem {type(problem).__name__}")


def weak_tractability(problem, crit) -> Verdict:
    """Classical weak tractability is the (1,1) case."""
    return classify(problem, crit, STParams(1, 1))


# Sweeps

@dataclass
class SweepGrid:
    families: dict[str, list[tuple[Fraction, int]]] = field(default_factory=dict)

    @property
    def cells(self):
        return [c for cells in self.families.values() for c in cells]

    @classmethod
    def diagonal(cls, problem, crit, size=40):
        """``d_k = k`` and ``eps_k = min(1, init_k) / k`` for ``k = 2..size+1``."""
        cells = []
        for k in range(2, size + 2):
            cells.append((_scaled_init(problem, crit, k) / k, k))
        return cls({"diagonal": cells})

    @classmethod
    def fixed_d(cls, problem, crit, d=2, size=40):
        top = _scaled_init(problem, crit, d)
        return cls({f"fixed-d={d}": [(top / (k + 1), d) for k in range(1, size + 1)]})

    @classmethod
    def fixed_eps(cls, eps, size=40):
        eps = as_fraction(eps)
        return cls({f"fixed-eps={fmt_number(eps)}": [(eps, d) for d in range(1, size + 1)]})

    @classmethod
    def custom(cls, cells, name="custom"):
        return cls({name: [(as_fraction(e), int(d)) for e, d in cells]})

    @classmethod
    def named(cls, kind, problem, crit, size=40, eps=None, d=None):
        if kind == "diagonal":
            return cls.diagonal(problem, crit, size)
        if kind == "fixed-d":
            return cls.fixed_d(problem, crit, 2 if d is None else d, size)
        if kind == "fixed-eps":
            return cls.fixed_eps(Fraction(3, 10) if eps is None else eps, size)
        raise ValueError(f"unknown grid family {kind!r}")


def _scaled_init(problem, crit, d):
    # min(1, initial error) as an exact rational where possible
    if Criterion.parse(crit) is Criterion.NORMALIZED:
        return Fraction(1)
    sq = _init_sq(problem, d)
    if sq >= 1:
        return Fraction(1)
    r = math.isqrt(sq.numerator), math.isqrt(sq.denominator)
    if r[0] ** 2 == sq.numerator and r[1] ** 2 == sq.denominator:
        return Fraction(*r)
    return as_fraction(math.exp(log_abs(sq) / 2))


@dataclass
class SweepResult:
    rows: list
    flags: dict
    surrogate: bool = False

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        for eps, d, n, log_n, denom, ratio, fam in self.rows:
            w.writerow([fmt_number(eps), d, "" if n is None else n, fmt_number(log_n),
                        fmt_number(denom), fmt_number(ratio), fam])
        return buf.getvalue()

    def summary(self):
        return {"families": self.flags, "surrogate": self.surrogate,
                "label": "upper-bound surrogate" if self.surrogate else "exact complexity"}


def _cell(problem, crit, st, eps, d, fam, budget):
    n, log_n = complexity(problem, crit, eps, d, budget=budget)
    denom = math.exp(-float(st.s) * log_abs(eps)) + float(d) ** float(st.t)
    ratio = log_n / denom
    return (eps, d, n, log_n, denom, ratio, fam)


def sweep(problem, crit, st: STParams, grid: SweepGrid, *, budget=None, workers=None) -> SweepResult:
    """Ratios ``ln n / (eps^-s + d^t)`` on every grid cell, with per-family trend flags."""
    crit = Criterion.parse(crit)
    bad = [(e, d) for e, d in grid.cells if not admissible(problem, crit, e, d)]
    if bad:
        raise InadmissibleCell(bad)
    jobs = [(eps, d, fam) for fam, cells in grid.families.items() for eps, d in cells]

    def run(job):
        return _cell(problem, crit, st, *job, budget)

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(run, jobs))
    else:
        rows = [run(j) for j in jobs]
    flags = {}
    for fam in grid.families:
        vals = [r[5] for r in rows if r[6] == fam]
        tail = vals[len(vals) // 2:]
        flags[fam] = {"decreasing": trend_decreasing(vals), "increasing": trend_increasing(vals),
                      "tail_max": max(tail) if tail else None, "n_zero": sum(1 for r in rows
                                                                            if r[6] == fam and r[2] == 0)}
    return SweepResult(rows, flags, isinstance(problem, IntegrationBound))


# Hierarchy

def hierarchy_relations(entries, st_list):
    """Check that positive verdicts propagate to componentwise larger (s,t).

    ``entries`` is a list of ``(name, problem, crit)``.  A violation is a
    positive verdict at (s,t) next to a negative one at some (sigma,tau) >= (s,t).
    """
    st_list = [p if isinstance(p, STParams) else STParams(*p) for p in st_list]
    violations, unpropagated = [], 0
    for name, problem, crit in entries:
        verdicts = {p: classify(problem, crit, p) for p in st_list}
        for a in st_list:
            if not verdicts[a].outcome.positive:
                continue
            for b in st_list:
                if a == b or not a <= b:
                    continue
                ob = verdicts[b].outcome
                if ob.negative:
                    violations.append({"problem": name, "from": [a.s, a.t], "to": [b.s, b.t],
                                       "verdicts": [str(verdicts[a]), str(verdicts[b])]})
                elif not ob.positive:
                    unpropagated += 1
    return {"problems": len(entries), "grid": [[p.s, p.t] for p in st_list],
            "violations": violations, "unpropagated": unpropagated, "pass": not violations}


DEFAULT_UWT_GRID = tuple(STParams(s, t) for s in ("0.05", "0.1", "0.25", "0.5", "1")
                         for t in ("0.05", "0.1", "0.25", "0.5", "1"))


def uwt_probe(problem, crit, st_grid=DEFAULT_UWT_GRID) -> Verdict:
    """Uniform weak tractability means (s,t)-weak tractability for all s,t > 0."""
    st_grid = list(st_grid)
    if any(p.s <= 0 or p.t <= 0 for p in st_grid):
        raise ValueError("grid points must have s, t > 0")
    verdicts = [(p, classify(problem, crit, p)) for p in st_grid]
    neg = [(p, v) for p, v in verdicts if v.outcome.negative]
    if neg:
        p, v = neg[0]
        return holds(False, "hierarchy.uwt", {"counterexample": [p.s, p.t], "verdict": str(v)})
    if all(v.outcome is Outcome.HOLDS for _, v in verdicts):
        return holds(True, "hierarchy.uwt", {"grid_points": len(verdicts)})
    return Verdict(Outcome.INCONCLUSIVE, "hierarchy.uwt",
                   {"note": "no counterexample on grid",
                    "undecided": [[p.s, p.t] for p, v in verdicts if not v.outcome.decided]})


# Curated portfolio and the empirical/symbolic gate

def portfolio():
    """``(name, problem, crit, gate)``; ``gate`` marks problems whose diagonal counts are feasible."""
    half = Fraction(1, 2)
    return [
        ("tensor finite [1] abs", TensorProblem(FiniteRank([1])), Criterion.ABSOLUTE, True),
        ("tensor geometric(1,1/2) norm", TensorProblem(Geometric(1, half)), Criterion.NORMALIZED, True),
        ("tensor explicit [1,1]+geometric norm",
         TensorProblem(Explicit([1, 1], Geometric(half, half))), Criterion.NORMALIZED, True),
        ("tensor log(1/2,2) abs", TensorProblem(LogDecay(half, 2)), Criterion.ABSOLUTE, False),
        ("tensor geometric(1/2,1/2) abs", TensorProblem(Geometric(half, half)), Criterion.ABSOLUTE, True),
        ("tensor poly(1,2) abs", TensorProblem(PolyDecay(1, 2)), Criterion.ABSOLUTE, True),
        ("tensor finite [4,1] abs", TensorProblem(FiniteRank([4, 1])), Criterion.ABSOLUTE, True),
        ("sobolev plus alpha=3", SobolevProblem(3, Norm.PLUS), Criterion.ABSOLUTE, True),
        ("sobolev plus alpha=1", SobolevProblem(1, Norm.PLUS), Criterion.ABSOLUTE, True),
        ("sobolev sharp alpha=2", SobolevProblem(2, Norm.SHARP), Criterion.ABSOLUTE, True),
        ("sobolev star alpha=1", SobolevProblem(1, Norm.STAR), Criterion.ABSOLUTE, True),
        ("integration a-rule", IntegrationBound("a"), Criterion.ABSOLUTE, True),
        ("integration ccs", IntegrationBound("ccs"), Criterion.ABSOLUTE, True),
    ]


TAIL_FLOOR = 1e-3


def consistency_gate(problem, crit, st: STParams, size=40, *, budget=None):
    """Compare a symbolic verdict with the diagonal sweep.

    Contradictions: a positive verdict with an increasing trend, or a
    negative verdict whose ratio tail stays below ``TAIL_FLOOR``.
    """
    v = classify(problem, crit, st)
    res = sweep(problem, crit, st, SweepGrid.diagonal(problem, crit, size), budget=budget)
    f = res.flags["diagonal"]
    problems = []
    if v.outcome.positive and f["increasing"]:
        problems.append("positive verdict with increasing ratios")
    if v.outcome.negative and f["tail_max"] is not None and f["tail_max"] < TAIL_FLOOR:
        problems.append("negative verdict with vanishing ratios")
    return {"verdict": v.to_json(), "trend": f, "contradictions": problems, "pass": not problems}
