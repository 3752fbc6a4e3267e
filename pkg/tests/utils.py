import json
from pathlib import Path
from typing import Any, Dict

from olspace.config import parse_spec
from olspace.domain import Domain, Kind
from olspace.orlicz import ExpMinusOneOrlicz, LinearOrlicz, PowerOrlicz
from olspace.spaces import Side, SpaceSpec
from olspace.weights import ConstantWeight, PowerDecayWeight, Weight

FIXTURES = Path(__file__).parent / "fixtures"


def function_domain(gamma: float = float("inf")) -> Domain:
    return Domain(gamma=gamma, kind=Kind.FUNCTION)


def sequence_domain() -> Domain:
    return Domain(kind=Kind.SEQUENCE)


def unit_weight(gamma: float = float("inf"), kind: Kind = Kind.FUNCTION) -> Weight:
    return ConstantWeight(1.0, domain=Domain(gamma=gamma, kind=kind))


def root_weight(gamma: float = float("inf"), kind: Kind = Kind.FUNCTION) -> Weight:
    return PowerDecayWeight(0.5, domain=Domain(gamma=gamma, kind=kind))


def square_space(weight: Weight = None, side: Side = Side.LAMBDA) -> SpaceSpec:
    phi = PowerOrlicz(2.0)
    if side is Side.M:
        phi = phi.conjugate()
    return SpaceSpec(phi=phi, weight=weight or unit_weight(), side=side)


def lorentz_space(weight: Weight = None) -> SpaceSpec:
    return SpaceSpec(phi=LinearOrlicz(), weight=weight or unit_weight())


def exponential_space(weight: Weight = None) -> SpaceSpec:
    return SpaceSpec(phi=ExpMinusOneOrlicz(), weight=weight or unit_weight())


def load_fixture(name: str) -> Any:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def write_config(directory: Path, config: Dict[str, Any], name: str = "space.json") -> Path:
    path = directory / name
    path.write_text(json.dumps(config), encoding="utf-8")
    return path


def spec_from(config: Dict[str, Any]) -> SpaceSpec:
    return parse_spec(config)
