"""Cost bounds for integrating smooth functions on the unit cube.

Only the bounds are implemented, not the cubature rules themselves.
"""

import enum
import math
from dataclasses import dataclass

from ._exact import as_fraction
from .hilbert import STParams
from .verdict import Outcome, Verdict

__all__ = ["Variant", "IntegrationBound", "eps0", "q_cost", "log_q_cost", "a_cost_log",
           "a_cost_branch", "classify_integration", "cost_table", "DEFAULT_C"]

DEFAULT_C = 5.0
# ceil() of a value computed in floating point: snap to the integer when the
# value is that close to it, so ln(e^-16) = 16.000000000000004 stays 16
_SNAP = 1e-12


class Variant(enum.Enum):
    QRULE = "q"
    ARULE = "a"
    CCS = "ccs"


@dataclass(frozen=True)
class IntegrationBound:
    variant: Variant = Variant.ARULE
    C: float = DEFAULT_C

    def __post_init__(self):
        if not isinstance(self.variant, Variant):
            object.__setattr__(self, "variant", Variant(str(self.variant).lower()))
        if not self.C > 0:
            raise ValueError("C must be positive")

    def to_json(self):
        return {"kind": "integration", "variant": self.variant.value, "C": self.C}


def eps0(d):
    """Branch point ``exp(-4 sqrt(d))``."""
    return math.exp(-4 * math.sqrt(d))


def _ceil(x):
    r = round(x)
    return int(r) if abs(x - r) <= _SNAP * max(1.0, abs(x)) else math.ceil(x)


def _log_inv(eps):
    eps = float(as_fraction(eps)) if not isinstance(eps, float) else eps
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return -math.log(eps)


def log_q_cost(eps, d):
    """``ceil(max(4 sqrt d, ln 1/eps)) * (1 + ln(1 + d / ln 1/eps))``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    L = _log_inv(eps)
    if L == 0:
        raise ZeroDivisionError("the cost formula is undefined at eps = 1")
    return _ceil(max(4 * math.sqrt(d), L)) * (1 + math.log1p(d / L))


def q_cost(eps, d):
    """Node bound of the cubature rule; ``inf`` past double range."""
    try:
        return math.exp(log_q_cost(eps, d))
    except OverflowError:
        return math.inf


def a_cost_branch(eps, d):
    return "sqrt-d" if _log_inv(eps) <= 4 * math.sqrt(d) else "log-squared"


def a_cost_log(eps, d, C=DEFAULT_C):
    """Two-branch bound on ``ln n(eps, Int_d)``.

    ``C sqrt(d) ln max(d, 2)`` for ``eps >= eps0(d)``, else ``C ln^2(1/eps)``.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    L = _log_inv(eps)
    if L == 0:
        raise ValueError("eps must be < 1")
    if a_cost_branch(eps, d) == "sqrt-d":
        return C * math.sqrt(d) * math.log(max(d, 2))
    return C * L * L


_THRESHOLDS = {Variant.QRULE: (1, 2), Variant.ARULE: (1, 2), Variant.CCS: (2, 3)}


def classify_integration(st: STParams, variant=Variant.ARULE) -> Verdict:
    variant = variant if isinstance(variant, Variant) else Variant(str(variant).lower())
    num, den = _THRESHOLDS[variant]
    clause = {Variant.QRULE: "integration.q-rule", Variant.ARULE: "integration.a-rule",
              Variant.CCS: "integration.ccs"}[variant]
    cond = f"s > 0 and t > {num}/{den}"
    if st.s > 0 and st.t * den > num:
        return Verdict(Outcome.SUFFICIENT_HOLDS, clause, {"sufficient": cond})
    return Verdict(Outcome.INCONCLUSIVE, clause,
                   {"gap": f"only sufficiency is known ({cond})"})


def cost_table(bound: IntegrationBound, eps_list, d_list):
    """Rows ``(eps, d, ln_cost, branch)``; the q variant uses the cubature rule itself."""
    rows = []
    for d in d_list:
        for eps in eps_list:
            if bound.variant is Variant.QRULE:
                rows.append((eps, d, log_q_cost(eps, d), "q-rule"))
            else:
                branch = a_cost_branch(eps, d)
                if branch == "sqrt-d" and d == 1:
                    branch += " (ln 2 for ln 1)"
                rows.append((eps, d, a_cost_log(eps, d, bound.C), branch))
    return rows
