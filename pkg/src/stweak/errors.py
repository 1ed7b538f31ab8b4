"""Exception and warning types shared across the package."""


class StweakError(Exception):
    """Base class for all errors raised by this package."""


class InfiniteCount(StweakError):
    """A threshold count is infinite (threshold zero with no zero tail)."""


class InfiniteMultiplicity(StweakError):
    pass


class InfiniteTrace(StweakError):
    pass


class UnsupportedDimension(StweakError, KeyError):
    pass


class BudgetExceeded(StweakError):
    """A computation would exceed its configured work or size cap."""

    def __init__(self, what, budget):
        super().__init__(f"{what} exceeds budget {budget}")
        self.what = what
        self.budget = budget


class InadmissibleCell(StweakError, ValueError):
    """Accuracy/dimension pairs outside the admissible region."""

    def __init__(self, cells):
        self.cells = list(cells)
        super().__init__(f"inadmissible (eps, d) cells: {self.cells[:5]}"
                         + (" ..." if len(self.cells) > 5 else ""))


class SpecError(StweakError, ValueError):
    """Malformed problem-spec document."""


class TieWarning(UserWarning):
    """A floating-point comparison landed within tolerance of a threshold."""
