"""JSON configuration of spaces, validated before any computation."""

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Tuple, Union

import pydantic
from typing_extensions import Annotated

from olspace.domain import Domain, Kind
from olspace.exceptions import ConfigError, OlspaceError
from olspace.orlicz import (
    ConjugateOrlicz,
    ExpMinusOneOrlicz,
    ExtendedOrliczFunction,
    LinearOrlicz,
    LinearSplicePowerOrlicz,
    PowerOrlicz,
    PowerSpliceLinearOrlicz,
    ShiftedPowerOrlicz,
    TabulatedOrlicz,
)
from olspace.spaces import Side, SpaceSpec
from olspace.weights import ConstantWeight, ExpPlusConstWeight, PowerDecayWeight, TabulatedWeight, Weight

Gamma = Union[float, Literal["inf"]]


class _Strict(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(extra="forbid", frozen=True)


class PowerConfig(_Strict):
    family: Literal["power"] = "power"
    p: float
    k: float = 1.0

    def build(self) -> ExtendedOrliczFunction:
        return PowerOrlicz(self.p, self.k)


class LinearConfig(_Strict):
    family: Literal["linear"] = "linear"
    k: float = 1.0

    def build(self) -> ExtendedOrliczFunction:
        return LinearOrlicz(self.k)


class ExpMinusOneConfig(_Strict):
    family: Literal["exp_minus_one"] = "exp_minus_one"

    def build(self) -> ExtendedOrliczFunction:
        return ExpMinusOneOrlicz()


class LinearSplicePowerConfig(_Strict):
    family: Literal["linear_splice_power"] = "linear_splice_power"
    u0: float
    p: float
    k: float = 1.0

    def build(self) -> ExtendedOrliczFunction:
        return LinearSplicePowerOrlicz(self.u0, self.p, self.k)


class PowerSpliceLinearConfig(_Strict):
    family: Literal["power_splice_linear"] = "power_splice_linear"
    u0: float
    p: float
    k: float = 1.0

    def build(self) -> ExtendedOrliczFunction:
        return PowerSpliceLinearOrlicz(self.u0, self.p, self.k)


class ShiftedPowerConfig(_Strict):
    family: Literal["shifted_power"] = "shifted_power"
    a: float
    p: float
    k: float = 1.0

    def build(self) -> ExtendedOrliczFunction:
        return ShiftedPowerOrlicz(self.a, self.p, self.k)


class TabulatedOrliczConfig(_Strict):
    """Nodes (u, φ(u)); `finite_domain` makes φ infinite past the last node."""

    family: Literal["tabulated"] = "tabulated"
    nodes: List[Tuple[float, float]]
    finite_domain: bool = False

    def build(self) -> ExtendedOrliczFunction:
        return TabulatedOrlicz(self.nodes, self.finite_domain)


class ConjugateConfig(_Strict):
    """Complementary function of another configured function."""

    family: Literal["conjugate"] = "conjugate"
    of: "OrliczConfig"

    def build(self) -> ExtendedOrliczFunction:
        return ConjugateOrlicz(self.of.build())


OrliczConfig = Annotated[
    Union[
        PowerConfig,
        LinearConfig,
        ExpMinusOneConfig,
        LinearSplicePowerConfig,
        PowerSpliceLinearConfig,
        ShiftedPowerConfig,
        TabulatedOrliczConfig,
        ConjugateConfig,
    ],
    pydantic.Field(discriminator="family"),
]
ConjugateConfig.model_rebuild()


class _WeightConfig(_Strict):
    gamma: Gamma = "inf"

    def domain(self, kind: Kind) -> Domain:
        return Domain(gamma=self.gamma, kind=kind)


class ConstantWeightConfig(_WeightConfig):
    family: Literal["constant"] = "constant"
    c: float = 1.0

    def build(self, kind: Kind = Kind.FUNCTION) -> Weight:
        return ConstantWeight(self.c, domain=self.domain(kind))


class PowerDecayWeightConfig(_WeightConfig):
    family: Literal["power_decay"] = "power_decay"
    alpha: float

    def build(self, kind: Kind = Kind.FUNCTION) -> Weight:
        return PowerDecayWeight(self.alpha, domain=self.domain(kind))


class ExpPlusConstWeightConfig(_WeightConfig):
    family: Literal["exp_plus_const"] = "exp_plus_const"
    beta: float
    c: float = 0.0

    def build(self, kind: Kind = Kind.FUNCTION) -> Weight:
        return ExpPlusConstWeight(self.beta, self.c, domain=self.domain(kind))


class TabulatedWeightConfig(_WeightConfig):
    """(length, value) pieces; the last value extends to gamma."""

    family: Literal["tabulated"] = "tabulated"
    pieces: List[Tuple[float, float]]

    def build(self, kind: Kind = Kind.FUNCTION) -> Weight:
        return TabulatedWeight(self.pieces, domain=self.domain(kind))


WeightConfig = Annotated[
    Union[ConstantWeightConfig, PowerDecayWeightConfig, ExpPlusConstWeightConfig, TabulatedWeightConfig],
    pydantic.Field(discriminator="family"),
]


class SpaceSpecConfig(_Strict):
    """A space as it appears in configuration files.

    Example:
        ```json
        {
            "orlicz": {"family": "power", "p": 2},
            "weight": {"family": "power_decay", "alpha": 0.5, "gamma": "inf"},
            "kind": "function",
            "side": "lambda"
        }
        ```
    """

    orlicz: OrliczConfig
    weight: WeightConfig
    kind: Kind = Kind.FUNCTION
    side: Side = Side.LAMBDA

    def build(self) -> SpaceSpec:
        """Construct the space, turning family-level validation errors into `ConfigError`."""
        try:
            return SpaceSpec(phi=self.orlicz.build(), weight=self.weight.build(self.kind), side=self.side)
        except (OlspaceError, ValueError) as error:
            raise ConfigError(f"Invalid space: {error}") from error

    @classmethod
    def from_spec(cls, spec: SpaceSpec) -> "SpaceSpecConfig":
        """Serialize a space back into its configuration."""
        return cls.model_validate(
            {"orlicz": spec.phi.to_config(), "weight": spec.weight.to_config(), "kind": spec.kind, "side": spec.side}
        )


def parse_spec(data: Dict[str, Any]) -> SpaceSpec:
    """Validate a JSON object and build the space it describes.

    Raises:
        ConfigError: If the object does not describe a valid space.
    """
    try:
        config = SpaceSpecConfig.model_validate(data)
    except pydantic.ValidationError as error:
        raise ConfigError(f"Invalid configuration: {error}") from error
    return config.build()


def load_spec(path: Union[str, Path]) -> SpaceSpec:
    """Read a space from a JSON file.

    Args:
        path (Union[str, Path]): JSON file holding a `SpaceSpecConfig`.

    Raises:
        ConfigError: If the file cannot be read, is not JSON, or does not describe a valid space.

    Returns:
        SpaceSpec: The configured space.
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as error:
        raise ConfigError(f"Cannot read {path}: {error}") from error
    except json.JSONDecodeError as error:
        raise ConfigError(f"{path} is not valid JSON: {error}") from error
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a JSON object")
    return parse_spec(data)
