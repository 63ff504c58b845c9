"""Wall-clock budgets for long enumerations."""

from __future__ import annotations

import os
import time


class BudgetExceeded(RuntimeError):
    pass


class Budget:
    def __init__(self, seconds: float | None):
        self.seconds = seconds
        self.deadline = None if seconds is None else time.monotonic() + seconds

    @classmethod
    def from_env(cls, default: float | None) -> "Budget":
        raw = os.environ.get("TORIC_BUDGET_SECS")
        return cls(float(raw) if raw else default)

    def check(self):
        if self.deadline is not None and time.monotonic() >= self.deadline:
            raise BudgetExceeded(f"budget of {self.seconds:g}s exhausted")
