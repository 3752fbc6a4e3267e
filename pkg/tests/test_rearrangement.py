# type: ignore

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from utils import root_weight, unit_weight

from olspace.domain import Domain, Kind
from olspace.exceptions import DomainError, PreconditionError
from olspace.rearrangement import (
    StepFunction,
    as_signed,
    distribution,
    is_decreasing,
    level_function,
    pointwise_abs,
    rearrange,
    submajorizes,
)
from olspace.weights import TabulatedWeight

pieces_strategy = st.lists(
    st.tuples(st.floats(min_value=0.01, max_value=10.0), st.floats(min_value=0.0, max_value=100.0)),
    min_size=1,
    max_size=8,
)


class TestStepFunction:
    def test_canonical_form(self):
        f = StepFunction.from_arrays([1.0, 1.0, 2.0], [3.0, 3.0, 0.0])
        assert f.pieces == ((2.0, 3.0),)
        assert f == StepFunction(pieces=[(1.0, 3.0), (1.0, 3.0), (2.0, 0.0)])

    def test_zero_function(self):
        f = StepFunction.from_arrays([1.0, 2.0], [0.0, 0.0])
        assert f.is_zero
        assert f.support == 0.0
        assert f.integral() == 0.0

    def test_sequence_from_values(self):
        x = StepFunction.from_values([3.0, 0.0, 1.0])
        assert x.kind is Kind.SEQUENCE
        assert x.pieces == ((1.0, 3.0), (1.0, 0.0), (1.0, 1.0))

    @pytest.mark.parametrize(
        ("lengths", "values", "kind"),
        [
            ([0.0], [1.0], Kind.FUNCTION),
            ([1.0], [-1.0], Kind.FUNCTION),
            ([1.0], [float("inf")], Kind.FUNCTION),
            ([1.5], [1.0], Kind.SEQUENCE),
            ([1.0, 2.0], [1.0], Kind.FUNCTION),
        ],
    )
    def test_invalid_pieces(self, lengths, values, kind):
        with pytest.raises(ValueError):
            StepFunction.from_arrays(lengths, values, kind)

    def test_evaluation_and_cumulative(self):
        f = StepFunction.from_arrays([1.0, 2.0], [1.0, 3.0])
        np.testing.assert_allclose(f([-1.0, 0.0, 0.5, 1.0, 2.9, 3.0]), [0.0, 1.0, 1.0, 3.0, 3.0, 0.0])
        assert f.cumulative(2.0) == pytest.approx(4.0)
        assert f.integral() == pytest.approx(7.0)

    def test_scale(self):
        f = StepFunction.indicator(2.0, 3.0)
        assert f.scale(2.0).pieces == ((2.0, 6.0),)
        assert f.scale(0.0).is_zero
        with pytest.raises(DomainError):
            f.scale(-1.0)

    def test_from_csv(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("length,value\n4,1\n1,0.5\n", encoding="utf-8")
        assert StepFunction.from_csv(path).pieces == ((4.0, 1.0), (1.0, 0.5))

    def test_from_csv_missing_column(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("len,value\n4,1\n", encoding="utf-8")
        with pytest.raises(ValueError, match="length and value"):
            StepFunction.from_csv(path)

    def test_check_domain(self):
        f = StepFunction.indicator(2.0)
        f.check_domain(Domain())
        with pytest.raises(DomainError):
            f.check_domain(Domain(gamma=1.0))
        with pytest.raises(PreconditionError):
            f.check_domain(Domain(kind=Kind.SEQUENCE))


class TestRearrangement:
    def test_rearrange(self):
        f = StepFunction.from_arrays([1.0, 2.0, 1.0], [1.0, 3.0, 2.0])
        assert rearrange(f).pieces == ((2.0, 3.0), (1.0, 2.0), (1.0, 1.0))
        assert is_decreasing(rearrange(f))
        assert not is_decreasing(f)

    def test_distribution(self):
        f = StepFunction.from_arrays([1.0, 2.0], [1.0, 3.0])
        assert distribution(f, 0.0) == 3.0
        assert distribution(f, 1.0) == 2.0
        assert distribution(f, 3.0) == 0.0
        with pytest.raises(DomainError):
            distribution(f, -1.0)

    @given(pieces_strategy)
    def test_equimeasurable_and_decreasing(self, pieces):
        f = StepFunction(pieces=pieces)
        f_star = rearrange(f)
        assert is_decreasing(f_star)
        assert f_star.integral() == pytest.approx(f.integral(), rel=1e-12, abs=1e-12)
        for level in (0.0, 1.0, 50.0):
            assert distribution(f_star, level) == pytest.approx(distribution(f, level), rel=1e-12, abs=1e-12)

    def test_submajorization(self):
        f = StepFunction.from_arrays([2.0], [1.0])
        g = StepFunction.from_arrays([1.0], [2.0])
        assert submajorizes(g, f)
        assert not submajorizes(f, g)
        with pytest.raises(PreconditionError):
            submajorizes(StepFunction.from_values([1.0]), f)


class TestPointwiseAbs:
    def test_sum_and_difference(self):
        first = [(1.0, 1.0), (1.0, -1.0)]
        second = [(2.0, 1.0)]
        assert pointwise_abs(first, second).pieces == ((1.0, 2.0),)
        assert pointwise_abs(first, second, sign=-1.0).pieces == ((1.0, 0.0), (1.0, 2.0))

    def test_as_signed(self):
        f = StepFunction.from_arrays([1.0, 2.0], [2.0, 1.0])
        assert as_signed(f) == [(1.0, 2.0), (2.0, 1.0)]
        assert pointwise_abs(as_signed(f), [], sign=1.0).pieces == f.pieces


class TestLevelFunction:
    def test_decreasing_ratio_is_kept(self):
        f = StepFunction.from_arrays([1.0, 3.0], [2.0, 1.0])
        level = level_function(f, unit_weight())
        assert level.ratio.pieces == f.pieces
        assert level.integral() == pytest.approx(f.integral())

    def test_indicator_with_decreasing_weight(self):
        w = root_weight()
        level = level_function(StepFunction.indicator(4.0), w)
        assert level.ratio.pieces == ((4.0, 1.0),)
        assert level(1.0) == pytest.approx(w(1.0))
        assert level.integral() == pytest.approx(4.0)

    def test_violators_are_pooled(self):
        w = TabulatedWeight([(1.0, 4.0), (1.0, 1.0)])
        f = StepFunction.from_arrays([1.0, 1.0], [2.0, 1.0])
        level = level_function(f, w)
        assert level.ratio.pieces == ((2.0, pytest.approx(0.6)),)
        np.testing.assert_allclose(level.masses, [5.0])
        assert level.integral() == pytest.approx(3.0)
        assert level.cumulative(1.0) == pytest.approx(2.4)

    def test_level_function_dominates(self):
        w = TabulatedWeight([(1.0, 4.0), (1.0, 1.0)])
        f = StepFunction.from_arrays([1.0, 1.0], [2.0, 1.0])
        level = level_function(f, w)
        edges = np.array([0.5, 1.0, 1.5, 2.0])
        assert np.all(np.asarray(level.cumulative(edges)) >= np.asarray(f.cumulative(edges)) - 1e-12)

    def test_needs_decreasing_input(self):
        with pytest.raises(PreconditionError):
            level_function(StepFunction.from_arrays([1.0, 1.0], [1.0, 2.0]), unit_weight())

    def test_zero_function(self):
        level = level_function(StepFunction(), unit_weight())
        assert level.integral() == 0.0
