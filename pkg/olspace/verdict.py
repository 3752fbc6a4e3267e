"""Three-valued verdicts."""

from enum import Enum
from typing import Iterable


class Verdict(str, Enum):
    """Outcome of a decision that may be undecidable from the available data."""

    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Verdict":
        """Convert a boolean into a decided verdict."""
        return cls.HOLDS if value else cls.FAILS

    def negate(self) -> "Verdict":
        if self is Verdict.UNKNOWN:
            return self
        return Verdict.FAILS if self is Verdict.HOLDS else Verdict.HOLDS

    @property
    def decided(self) -> bool:
        return self is not Verdict.UNKNOWN


def all_of(verdicts: Iterable[Verdict]) -> Verdict:
    """Kleene conjunction: fails if any fails, unknown if any is unknown, else holds."""
    result = Verdict.HOLDS
    for verdict in verdicts:
        if verdict is Verdict.FAILS:
            return Verdict.FAILS
        if verdict is Verdict.UNKNOWN:
            result = Verdict.UNKNOWN
    return result


def any_of(verdicts: Iterable[Verdict]) -> Verdict:
    """Kleene disjunction: holds if any holds, unknown if any is unknown, else fails."""
    result = Verdict.FAILS
    for verdict in verdicts:
        if verdict is Verdict.HOLDS:
            return Verdict.HOLDS
        if verdict is Verdict.UNKNOWN:
            result = Verdict.UNKNOWN
    return result
