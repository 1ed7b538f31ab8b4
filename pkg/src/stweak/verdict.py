"""Classification outcomes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Outcome(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    SUFFICIENT_HOLDS = "SufficientHolds"
    NECESSARY_FAILS = "NecessaryFails"
    INCONCLUSIVE = "Inconclusive"

    @property
    def positive(self):
        return self in (Outcome.HOLDS, Outcome.SUFFICIENT_HOLDS)

    @property
    def negative(self):
        return self in (Outcome.FAILS, Outcome.NECESSARY_FAILS)

    @property
    def decided(self):
        # only a characterization branch may say Holds/Fails
        return self in (Outcome.HOLDS, Outcome.FAILS)


@dataclass(frozen=True)
class Verdict:
    """Outcome of an (s,t) classification plus the rule branch that produced it.

    ``clause`` is a stable tag such as ``"tensor.normalized.m1"``; ``evidence``
    carries the numeric sweep summary or the open-gap note for the three
    non-decisive outcomes.
    """

    outcome: Outcome
    clause: str
    evidence: dict[str, Any] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.outcome.decided and not self.evidence:
            raise ValueError(f"{self.outcome.value} verdicts must carry evidence")

    def to_json(self):
        doc = {"outcome": self.outcome.value, "clause": self.clause}
        doc["evidence"] = self.evidence
        return doc

    def __str__(self):
        return f"{self.outcome.value} [{self.clause}]"


def holds(flag, clause, evidence=None):
    """Holds/Fails from a boolean decided by a characterization."""
    return Verdict(Outcome.HOLDS if flag else Outcome.FAILS, clause, evidence)
