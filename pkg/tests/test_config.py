# type: ignore

import math

import pytest
from utils import spec_from, write_config

from olspace.config import SpaceSpecConfig, load_spec, parse_spec
from olspace.domain import Kind
from olspace.exceptions import ConfigError
from olspace.orlicz import (
    ConjugateOrlicz,
    ExpMinusOneOrlicz,
    LinearOrlicz,
    LinearSplicePowerOrlicz,
    PowerOrlicz,
    PowerSpliceLinearOrlicz,
    ShiftedPowerOrlicz,
    TabulatedOrlicz,
)
from olspace.spaces import Side
from olspace.weights import ConstantWeight, ExpPlusConstWeight, PowerDecayWeight, TabulatedWeight

CONSTANT = {"family": "constant"}


class TestParse:
    @pytest.mark.parametrize(
        ("orlicz", "expected"),
        [
            ({"family": "power", "p": 2}, PowerOrlicz),
            ({"family": "linear", "k": 2}, LinearOrlicz),
            ({"family": "exp_minus_one"}, ExpMinusOneOrlicz),
            ({"family": "linear_splice_power", "u0": 1, "p": 2}, LinearSplicePowerOrlicz),
            ({"family": "power_splice_linear", "u0": 1, "p": 2}, PowerSpliceLinearOrlicz),
            ({"family": "shifted_power", "a": 1, "p": 2}, ShiftedPowerOrlicz),
            ({"family": "tabulated", "nodes": [[1, 0.5], [2, 2]]}, TabulatedOrlicz),
            ({"family": "conjugate", "of": {"family": "power", "p": 2}}, ConjugateOrlicz),
        ],
    )
    def test_orlicz_families(self, orlicz, expected):
        assert isinstance(spec_from({"orlicz": orlicz, "weight": CONSTANT}).phi, expected)

    @pytest.mark.parametrize(
        ("weight", "expected"),
        [
            ({"family": "constant", "c": 2}, ConstantWeight),
            ({"family": "power_decay", "alpha": 0.5}, PowerDecayWeight),
            ({"family": "exp_plus_const", "beta": 1, "c": 0.5}, ExpPlusConstWeight),
            ({"family": "tabulated", "pieces": [[1, 2], [1, 1]], "gamma": 4}, TabulatedWeight),
        ],
    )
    def test_weight_families(self, weight, expected):
        assert isinstance(spec_from({"orlicz": {"family": "power", "p": 2}, "weight": weight}).weight, expected)

    def test_defaults(self):
        spec = parse_spec({"orlicz": {"family": "linear"}, "weight": CONSTANT})
        assert spec.kind is Kind.FUNCTION
        assert spec.side is Side.LAMBDA
        assert math.isinf(spec.gamma)

    def test_sequence_and_side(self):
        config = {
            "orlicz": {"family": "conjugate", "of": {"family": "exp_minus_one"}},
            "weight": {"family": "power_decay", "alpha": 0.5},
            "kind": "sequence",
            "side": "m",
        }
        spec = parse_spec(config)
        assert spec.kind is Kind.SEQUENCE
        assert spec.side is Side.M

    def test_finite_gamma(self):
        spec = parse_spec({"orlicz": {"family": "linear"}, "weight": {"family": "constant", "gamma": 2.5}})
        assert spec.gamma == 2.5

    @pytest.mark.parametrize(
        "config",
        [
            {"orlicz": {"family": "power", "p": 2, "q": 3}, "weight": CONSTANT},
            {"orlicz": {"family": "power", "p": 2}, "weight": CONSTANT, "extra": True},
            {"orlicz": {"family": "cubic"}, "weight": CONSTANT},
            {"orlicz": {"family": "power"}, "weight": CONSTANT},
            {"orlicz": {"family": "power", "p": 2}},
            {"orlicz": {"family": "power", "p": 2}, "weight": CONSTANT, "side": "both"},
            {"orlicz": {"family": "power", "p": 2}, "weight": {"family": "constant", "gamma": -1}},
            {"orlicz": {"family": "power", "p": 0.5}, "weight": CONSTANT},
            {
                "orlicz": {
                    "family": "conjugate",
                    "of": {"family": "tabulated", "nodes": [[1, 0.5], [2, 2]], "finite_domain": True},
                },
                "weight": CONSTANT,
            },
        ],
        ids=[
            "extra orlicz field",
            "extra space field",
            "unknown family",
            "missing parameter",
            "missing weight",
            "unknown side",
            "negative gamma",
            "power below one",
            "conjugate of infinite function",
        ],
    )
    def test_invalid(self, config):
        with pytest.raises(ConfigError):
            parse_spec(config)


class TestLoad:
    def test_load(self, tmp_path):
        path = write_config(tmp_path, {"orlicz": {"family": "power", "p": 2}, "weight": CONSTANT})
        assert isinstance(load_spec(path).phi, PowerOrlicz)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="Cannot read"):
            load_spec(tmp_path / "missing.json")

    def test_not_json(self, tmp_path):
        path = tmp_path / "space.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_spec(path)

    def test_not_an_object(self, tmp_path):
        path = tmp_path / "space.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigError, match="JSON object"):
            load_spec(path)


class TestFromSpec:
    @pytest.mark.parametrize(
        "config",
        [
            {"orlicz": {"family": "power", "p": 1.5, "k": 2.0}, "weight": {"family": "power_decay", "alpha": 0.5}},
            {
                "orlicz": {"family": "conjugate", "of": {"family": "exp_minus_one"}},
                "weight": {"family": "tabulated", "pieces": [[1.0, 2.0], [2.0, 1.0]], "gamma": 5.0},
                "side": "m",
            },
        ],
    )
    def test_describe_survives(self, config):
        spec = parse_spec(config)
        assert SpaceSpecConfig.from_spec(spec).build().describe() == spec.describe()
