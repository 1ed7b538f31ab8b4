"""Invariant suites behind ``stweak verify``."""

import random
from fractions import Fraction

from .sobolev import verify_bounds, verify_identities
from .spectra import FiniteRank, Geometric, LogDecay, PolyDecay
from .tensor import (TensorProblem, brute_force_count, factorial_bound, lemacik3_check,
                     lemacik4_check, power_lower_bound, tensor_count)

SUITES = ("tensor-oracle", "sobolev-identities", "sobolev-bounds", "lemmas")


def oracle_bases():
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    return [Geometric(1, half), Geometric(1, quarter), PolyDecay(1, 2),
            FiniteRank([1, 1, half]), FiniteRank([4, 1])]


def random_eps(rng, count):
    # three-digit decimals in [0.1, 1) keep every brute-force box small
    return [Fraction(rng.randint(100, 999), 1000) for _ in range(count)]


def tensor_oracle(n_eps=50, d_max=4, seed=20240, budget=None):
    rng = random.Random(seed)
    kw = {} if budget is None else {"budget": budget}
    box = {} if budget is None else {"max_box": budget}
    mismatches, sandwich, cases = [], [], 0
    for base in oracle_bases():
        tp = TensorProblem(base)
        for d in range(1, d_max + 1):
            for eps in random_eps(rng, n_eps):
                for crit in ("abs", "norm"):
                    n = tensor_count(tp, crit, eps, d, **kw)
                    ref = brute_force_count(tp, crit, eps, d, **box)
                    cases += 1
                    if n != ref:
                        mismatches.append({"base": base.to_json(), "crit": crit, "d": d,
                                           "eps": str(eps), "count": n, "oracle": ref})
                if base.first <= 1:
                    n = tensor_count(tp, "abs", eps, d, **kw)
                    ub = factorial_bound(tp, eps, d)
                    for l in {1, d}:
                        lb = power_lower_bound(tp, eps, d, l)
                        if not lb <= n <= ub:
                            sandwich.append({"base": base.to_json(), "d": d, "eps": str(eps),
                                             "l": l, "lower": lb, "count": n, "upper": ub})
    checks = [
        {"check": "oracle-equivalence", "cases": cases, "pass": not mismatches,
         "violations": mismatches[:10], "n_violations": len(mismatches)},
        {"check": "sandwich", "pass": not sandwich, "violations": sandwich[:10],
         "n_violations": len(sandwich)},
    ]
    return {"suite": "tensor-oracle", "checks": checks, "pass": all(c["pass"] for c in checks)}


def lemmas():
    half = Fraction(1, 2)
    checks = []
    for base, s in ((Geometric(1, half), 1), (LogDecay(1, 2), 1), (PolyDecay(1, 2), 1)):
        r = lemacik3_check(base, s)
        checks.append({"check": "decay-vs-univariate-complexity", "base": base.to_json(), "s": s,
                       "left": r.left.flag, "right": r.right.flag, "pass": r.agree})
    for base, L, t in ((Geometric(1, half), 2, half), (PolyDecay(1, 2), 2, 1), (PolyDecay(1, 2), 2, 2)):
        r = lemacik4_check(base, L, t)
        checks.append({"check": "log-decay-vs-geometric-accuracy", "base": base.to_json(), "L": L,
                       "t": t, "left": r.left.flag, "right": r.right.flag, "pass": r.agree})
    return {"suite": "lemmas", "checks": checks, "pass": all(c["pass"] for c in checks)}


def sobolev_identities(budget=None):
    return verify_identities(**({} if budget is None else {"cap": budget}))


def sobolev_bounds(budget=None):
    kw = {} if budget is None else {"cap": budget}
    checks = []
    for alpha in (1, 2):
        checks += verify_bounds(2, alpha, range(330, 2001), (), **kw)["checks"][:1]
        for d in (1, 2, 3):
            checks += verify_bounds(d, alpha, None, (0.5, 0.3, 0.1), **kw)["checks"]
    return {"suite": "sobolev-bounds", "checks": checks, "pass": all(c["pass"] for c in checks)}


def run(suite, budget=None):
    runners = {
        "tensor-oracle": lambda: tensor_oracle(budget=budget),
        "sobolev-identities": lambda: sobolev_identities(budget),
        "sobolev-bounds": lambda: sobolev_bounds(budget),
        "lemmas": lemmas,
    }
    if suite == "all":
        reports = [runners[name]() for name in SUITES]
        return {"suite": "all", "reports": reports, "pass": all(r["pass"] for r in reports)}
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}")
    return runners[suite]()
