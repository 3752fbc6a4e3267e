"""Underlying measure spaces: an interval [0, γ) or the natural numbers."""

import math
from enum import Enum

import pydantic


class Kind(str, Enum):
    FUNCTION = "function"
    SEQUENCE = "sequence"


class Domain(pydantic.BaseModel):
    """Interval [0, gamma) for function spaces, ℕ with counting measure for sequence spaces."""

    model_config = pydantic.ConfigDict(frozen=True)

    gamma: float = math.inf
    kind: Kind = Kind.FUNCTION

    @pydantic.field_validator("gamma", mode="before")
    @classmethod
    def _parse_gamma(cls, value: object) -> object:
        if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "∞"):
            return math.inf
        return value

    @pydantic.model_validator(mode="after")
    def _check_gamma(self) -> "Domain":
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.kind is Kind.SEQUENCE and math.isfinite(self.gamma):
            # the index set of a sequence space is all of ℕ
            object.__setattr__(self, "gamma", math.inf)
        return self

    @property
    def is_sequence(self) -> bool:
        return self.kind is Kind.SEQUENCE

    def describe(self) -> str:
        if self.is_sequence:
            return "ℕ"
        return "[0, ∞)" if math.isinf(self.gamma) else f"[0, {self.gamma:g})"
