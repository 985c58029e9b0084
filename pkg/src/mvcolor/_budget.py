import time


class BudgetExceeded(Exception):
    pass


class Budget:
    """Wall-clock allowance shared by nested searches; ``None`` means unlimited."""

    def __init__(self, budget_ms: float | None = None):
        self.deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
        self._ticks = 0

    @classmethod
    def of(cls, budget) -> "Budget":
        return budget if isinstance(budget, Budget) else cls(budget)

    def tick(self) -> None:
        self._ticks += 1
        if self.deadline is not None and not self._ticks & 255:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline
