"""Search budgets shared by the exhaustive procedures."""
from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_BUDGET = 200000


class BudgetExceeded(RuntimeError):
    pass


def env_budget(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("NCDEF_BUDGET")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NCDEF_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("NCDEF_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class SearchConfig:
    budget: int = DEFAULT_BUDGET
    trials: int = 32
    seed: int = 0

    @classmethod
    def from_env(cls, seed: int = 0) -> "SearchConfig":
        return cls(budget=env_budget(), seed=seed)
