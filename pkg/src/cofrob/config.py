"""Run-time knobs shared by the solvers and the command line."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

BUDGET_ENV = "COFROB_BUDGET"


@dataclass(frozen=True)
class Settings:
    # determinant evaluations allowed before falling back to symbolic / random routes
    budget: int = 10**6
    # max number of family parameters for symbolic determinant expansion
    symbolic_cap: int = 6
    # per-object dimension cap for coalgebras, comodules and algebras
    dim_cap: int = 64
    # sample count for the randomized (Schwartz-Zippel) route
    random_trials: int = 32
    # size of the integer sample set used over the rationals
    sample_set_size: int = 1 << 32

    def with_budget(self, budget: int | None) -> "Settings":
        if budget is None:
            return self
        if budget < 1:
            raise ValueError("budget must be positive")
        return replace(self, budget=budget)


def default_settings() -> Settings:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return Settings().with_budget(int(raw))
    return Settings()
