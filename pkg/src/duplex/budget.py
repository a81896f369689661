"""Candidate-evaluation budget shared by the exhaustive enumerators."""

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**7


class Budget:
    """Counts candidate evaluations and raises once ``limit`` is passed."""

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(
                f"candidate budget of {self.limit} evaluations exceeded",
                witness=self.used,
            )


def as_budget(budget):
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))
