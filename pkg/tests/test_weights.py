# type: ignore

import math

import numpy as np
import pytest

from olspace.domain import Domain, Kind
from olspace.exceptions import DomainError
from olspace.verdict import Verdict
from olspace.weights import ConstantWeight, ExpPlusConstWeight, PowerDecayWeight, TabulatedWeight

SEQUENCE = Domain(kind=Kind.SEQUENCE)


class TestDomain:
    def test_gamma_parsing(self):
        assert Domain(gamma="inf").gamma == math.inf
        assert Domain(gamma="∞").gamma == math.inf
        assert Domain(gamma=2.0).describe() == "[0, 2)"

    def test_sequence_domain_is_all_of_n(self):
        assert Domain(gamma=3.0, kind=Kind.SEQUENCE).gamma == math.inf
        assert SEQUENCE.describe() == "ℕ"

    def test_nonpositive_gamma(self):
        with pytest.raises(ValueError, match="gamma must be positive"):
            Domain(gamma=0.0)


class TestPrimitives:
    def test_power_decay(self):
        w = PowerDecayWeight(0.5)
        assert w.big_w(4.0) == pytest.approx(4.0)
        assert w.big_w_inverse(4.0) == pytest.approx(4.0)
        assert w(4.0) == pytest.approx(0.5)
        assert w.initial_value == math.inf
        assert w.limit_t_over_w == 0.0

    def test_exp_plus_const(self):
        w = ExpPlusConstWeight(1.0, 0.5)
        assert w.big_w(1.0) == pytest.approx(1.0 - math.exp(-1.0) + 0.5)
        assert w.big_w_inverse(float(w.big_w(3.0))) == pytest.approx(3.0)
        assert w.limit_t_over_w == pytest.approx(1.0 / 1.5)

    def test_integrable_weight_needs_finite_interval(self):
        with pytest.raises(DomainError):
            ExpPlusConstWeight(1.0)
        assert ExpPlusConstWeight(1.0, domain=Domain(gamma=2.0)).big_w(2.0) == pytest.approx(1.0 - math.exp(-2.0))

    def test_tabulated(self):
        w = TabulatedWeight([(1.0, 2.0), (1.0, 1.0)])
        assert w.big_w(1.0) == 2.0
        assert w.big_w(3.0) == 4.0
        assert w.big_w_inverse(3.0) == 2.0
        assert w(0.5) == 2.0
        assert w(10.0) == 1.0

    @pytest.mark.parametrize(
        "pieces",
        [[], [(1.0, 1.0), (1.0, 2.0)], [(0.0, 1.0)], [(1.0, -1.0)]],
    )
    def test_invalid_tabulated(self, pieces):
        with pytest.raises(DomainError):
            TabulatedWeight(pieces)

    def test_times_outside_the_interval(self):
        w = ConstantWeight(domain=Domain(gamma=1.0))
        with pytest.raises(DomainError):
            w.big_w(2.0)
        with pytest.raises(DomainError):
            w.big_w(-0.5)
        with pytest.raises(DomainError):
            w.big_w_inverse(1.5)


class TestSequenceWeights:
    def test_unit_cells(self):
        w = PowerDecayWeight(0.5, domain=SEQUENCE)
        np.testing.assert_allclose(w.sequence_values(2), [2.0, 2.0 * (math.sqrt(2.0) - 1.0)])
        assert w(0.5) == pytest.approx(2.0)

    def test_primitive_interpolates_between_integers(self):
        w = ConstantWeight(domain=SEQUENCE)
        assert w.big_w(2.5) == 2.5
        assert w.big_w_inverse(2.5) == 2.5

    def test_inverse_on_decreasing_sequence(self):
        w = PowerDecayWeight(0.5, domain=SEQUENCE)
        t = w.big_w_inverse(2.5)
        assert 1.0 < t < 2.0
        assert w.big_w(t) == pytest.approx(2.5)

    def test_tabulated_sequence_needs_integer_lengths(self):
        with pytest.raises(DomainError):
            TabulatedWeight([(1.5, 2.0), (1.0, 1.0)], domain=SEQUENCE)


class TestRegularity:
    @pytest.mark.parametrize(
        ("weight", "ratio"),
        [
            (ConstantWeight(), 1.0),
            (PowerDecayWeight(0.5), 2.0),
            (TabulatedWeight([(1.0, 2.0), (1.0, 1.0)]), 2.0),
        ],
        ids=repr,
    )
    def test_regularity_ratio(self, weight, ratio):
        assert weight.regularity_ratio() == pytest.approx(ratio)
        assert weight.is_regular() is Verdict.HOLDS

    def test_sequence_regularity(self):
        assert PowerDecayWeight(0.5, domain=SEQUENCE).regularity_ratio() >= 2.0


class TestSerialization:
    def test_config_and_equality(self):
        w = PowerDecayWeight(0.5, domain=Domain(gamma=1.0))
        assert w.to_config() == {"family": "power_decay", "alpha": 0.5, "gamma": 1.0}
        assert w == PowerDecayWeight(0.5, domain=Domain(gamma=1.0))
        assert w != PowerDecayWeight(0.5)
        assert ConstantWeight().to_config()["gamma"] == "inf"
