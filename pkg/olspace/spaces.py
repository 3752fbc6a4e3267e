"""Orlicz–Lorentz spaces Λ_{φ,w}, λ_{φ,w} and their Köthe-dual counterparts M_{φ,w}, m_{φ,w}."""

import math
from enum import Enum
from functools import cached_property

import pydantic

from olspace.domain import Domain, Kind
from olspace.exceptions import PreconditionError
from olspace.orlicz import ExtendedOrliczFunction, GrowthReport
from olspace.verdict import Verdict
from olspace.weights import Weight


class Side(str, Enum):
    """Λ_{φ,w} (modular ρ or α) or M_{φ,w} (modulars P and Q)."""

    LAMBDA = "lambda"
    M = "m"


class SpaceSpec(pydantic.BaseModel):
    """An Orlicz function, a weight and the side of the duality identifying one space."""

    model_config = pydantic.ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phi: ExtendedOrliczFunction
    weight: Weight
    side: Side = Side.LAMBDA

    @pydantic.model_validator(mode="after")
    def _check_side(self) -> "SpaceSpec":
        if self.side is Side.LAMBDA and not self.phi.is_finite:
            raise ValueError("Λ-side spaces need a finite Orlicz function")
        return self

    @property
    def domain(self) -> Domain:
        return self.weight.domain

    @property
    def kind(self) -> Kind:
        return self.weight.kind

    @property
    def gamma(self) -> float:
        return self.weight.gamma

    @property
    def is_sequence(self) -> bool:
        return self.kind is Kind.SEQUENCE

    @cached_property
    def growth(self) -> GrowthReport:
        return self.phi.growth_report()

    def appropriate_delta2(self) -> Verdict:
        """Δ₂⁰ for sequences, Δ₂ at infinity when γ < ∞, full Δ₂ when γ = ∞."""
        return self.growth.appropriate_delta2(self.gamma, self.is_sequence)

    def dual(self) -> "SpaceSpec":
        """M-side spec with the conjugate function, the Köthe dual of Λ_{φ,w}."""
        if self.side is not Side.LAMBDA:
            raise PreconditionError("Only Λ-side specs are dualized")
        return SpaceSpec(phi=self.phi.conjugate(), weight=self.weight, side=Side.M)

    def describe(self) -> str:
        letter = {
            (Side.LAMBDA, Kind.FUNCTION): "Λ",
            (Side.LAMBDA, Kind.SEQUENCE): "λ",
            (Side.M, Kind.FUNCTION): "M",
            (Side.M, Kind.SEQUENCE): "m",
        }[(self.side, self.kind)]
        gamma = "" if self.is_sequence or math.isinf(self.gamma) else f" on [0, {self.gamma:g})"
        return f"{letter}[{self.phi!r}, {self.weight!r}]{gamma}"
