"""Command-line front end.

Data (JSON or CSV) goes to stdout; human-readable summaries go to stderr.
Exit codes: 0 ok, 1 verification failure, 2 bad spec or arguments,
3 inadmissible input, 4 budget exceeded.
"""

import argparse
import csv
import json
import math
import sys
import warnings
from fractions import Fraction

from . import specfile, verify
from ._exact import as_fraction, fmt_number, json_number
from .classify import SweepGrid, classify, complexity, sweep
from .errors import BudgetExceeded, InadmissibleCell, SpecError, UnsupportedDimension
from .hilbert import Criterion, STParams
from .integration import IntegrationBound, a_cost_branch
from .sobolev import SobolevProblem, approx_table
from .spectra import INFINITE

EXIT_FAIL, EXIT_SPEC, EXIT_INADMISSIBLE, EXIT_BUDGET = 1, 2, 3, 4


class Inadmissible(Exception):
    pass


def _clean(obj):
    # JSON has no inf/nan and no rationals: use exact strings
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if obj is INFINITE:
        return "inf"
    if isinstance(obj, float) and not math.isfinite(obj):
        return fmt_number(obj)
    if isinstance(obj, Fraction):
        return json_number(obj)
    return obj


def _emit_json(doc, out):
    out.write(json.dumps(_clean(doc), default=specfile.to_jsonable) + "\n")


def _number(text, name):
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"--{name}: not a number: {text!r}") from None


def _dim(text):
    try:
        d = int(text)
    except ValueError:
        raise SpecError(f"--d: not an integer: {text!r}") from None
    if d < 1:
        raise Inadmissible(f"dimension must be >= 1, got {d}")
    return d


def _st(args):
    s, t = _number(args.s, "s"), _number(args.t, "t")
    if s < 0 or t < 0:
        raise Inadmissible("s and t must be nonnegative")
    return STParams(s, t)


def cmd_complexity(args, out, err):
    problem, crit = specfile.load(args.spec)
    eps, d = _number(args.eps, "eps"), _dim(args.d)
    if eps <= 0:
        raise Inadmissible("eps must be positive")
    if isinstance(problem, IntegrationBound):
        if eps >= 1:
            raise Inadmissible("integration cost bounds need eps < 1")
        _, log_n = complexity(problem, crit, eps, d)
        rec = {"eps": eps, "d": d, "log_n_upper": log_n, "branch": a_cost_branch(eps, d),
               "criterion": crit.value, "label": "upper-bound surrogate"}
        n_text = f"ln n <= {fmt_number(log_n)}"
    else:
        n, _ = complexity(problem, crit, eps, d, budget=args.budget)
        rec = {"eps": eps, "d": d, "n": n, "criterion": crit.value}
        n_text = f"n = {n}"
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(rec))
        w.writerow([fmt_number(v) if not isinstance(v, str) else v for v in rec.values()])
    else:
        _emit_json(rec, out)
    err.write(f"{n_text} at eps={fmt_number(eps)}, d={d} ({crit.value})\n")
    return 0


def cmd_approx_numbers(args, out, err):
    problem, _ = specfile.load(args.spec)
    if not isinstance(problem, SobolevProblem):
        raise Inadmissible("approx-numbers needs a sobolev spec")
    d = _dim(args.d)
    if args.n_max < 1:
        raise Inadmissible("--n-max must be >= 1")
    kw = {} if args.budget is None else {"cap": args.budget}
    rows = approx_table(problem, d, args.n_max, **kw)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "a_n", "level-weight", "cumulative-count"])
    for r in rows:
        w.writerow([r.n, fmt_number(r.a), fmt_number(r.level_weight), r.cumulative])
    err.write(f"{len(rows)} approximation numbers, d={d}\n")
    return 0


def cmd_classify(args, out, err):
    problem, crit = specfile.load(args.spec)
    st = _st(args)
    v = classify(problem, crit, st)
    _emit_json(v.to_json(), out)
    err.write(f"{v} at {st}\n")
    return 0


def cmd_sweep(args, out, err):
    problem, crit = specfile.load(args.spec)
    st = _st(args)
    if args.size < 1:
        raise Inadmissible("--size must be >= 1")
    eps = None if args.eps is None else _number(args.eps, "eps")
    d = None if args.d is None else _dim(args.d)
    grid = SweepGrid.named(args.grid, problem, crit, args.size, eps=eps, d=d)
    res = sweep(problem, crit, st, grid, budget=args.budget)
    if args.format == "json":
        rows = [dict(zip(("eps", "d", "n", "log_n", "denom", "ratio", "family"), r)) for r in res.rows]
        _emit_json({"rows": rows, "summary": res.summary()}, out)
    else:
        out.write(res.to_csv())
    _emit_json(res.summary(), err)
    return 0


def cmd_verify(args, out, err):
    report = verify.run(args.suite, budget=args.budget)
    _emit_json(report, out)
    err.write(f"verify {args.suite}: {'pass' if report['pass'] else 'FAIL'}\n")
    return 0 if report["pass"] else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stweak",
        description="Information complexity and (s,t)-weak tractability of linear problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("--spec", required=True, help="problem spec JSON file")
        p.add_argument("--budget", type=int, default=None, help="work cap (nodes / lattice points)")

    p = sub.add_parser("complexity", help="information complexity n(eps, d)")
    common(p)
    p.add_argument("--eps", required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("approx-numbers", help="approximation numbers of a Sobolev embedding (CSV)")
    common(p)
    p.add_argument("--d", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_approx_numbers)

    p = sub.add_parser("classify", help="(s,t)-weak tractability verdict (JSON)")
    common(p)
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="empirical ratio sweep (CSV)")
    common(p)
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--grid", choices=("diagonal", "fixed-d", "fixed-eps"), default="diagonal")
    p.add_argument("--size", type=int, default=40)
    p.add_argument("--eps", default=None, help="accuracy for --grid fixed-eps")
    p.add_argument("--d", default=None, help="dimension for --grid fixed-d")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run invariant suites (JSON report)")
    p.add_argument("suite", choices=verify.SUITES + ("all",))
    common(p, spec=False)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = args.func(args, out, err)
        for w in caught:
            err.write(f"warning: {w.message}\n")
        return code
    except SpecError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SPEC
    except (Inadmissible, InadmissibleCell, UnsupportedDimension) as exc:
        err.write(f"error: inadmissible input: {exc}\n")
        return EXIT_INADMISSIBLE
    except BudgetExceeded as exc:
        err.write(f"error: budget exceeded: {exc}\n")
        return EXIT_BUDGET


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
