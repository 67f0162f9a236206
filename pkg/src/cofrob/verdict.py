from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import FamilyResult

YES, NO, UNKNOWN = "yes", "no", "unknown"

# reasons attached to a No
DIM_MISMATCH = "dim-mismatch"
NOT_PROJECTIVE = "not-projective"
DET_ZERO = "det-family-identically-zero"
SEARCH_EXHAUSTED = "search-exhausted"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: object = None
    evidence: str | None = None
    route: str = ""
    transcript: tuple = ()
    family: FamilyResult | None = None
    confidence: Fraction | None = None
    seed: int = 0

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    @property
    def is_no(self) -> bool:
        return self.status == NO

    @property
    def exit_code(self) -> int:
        return {YES: 0, NO: 1, UNKNOWN: 2}[self.status]

    def __repr__(self):
        extra = f", {self.evidence}" if self.evidence else ""
        return f"Verdict<{self.status}{extra}, route {self.route}>"
