# type: ignore

import math

import pytest
from utils import lorentz_space, root_weight, square_space, unit_weight

from olspace.domain import Domain, Kind
from olspace.exceptions import ConvergenceWarning, DomainError, NumericalFailure, PreconditionError
from olspace.norms import (
    amemiya_norm_lambda,
    fundamental_lambda,
    fundamental_m,
    lambda_norm,
    lorentz_norm_distribution,
    luxemburg_norm,
    m_norm,
    modular_alpha,
    modular_q,
    modular_rho,
    orlicz_amemiya_norm,
)
from olspace.orlicz import ExpMinusOneOrlicz, PowerOrlicz, PowerSpliceLinearOrlicz
from olspace.rearrangement import StepFunction
from olspace.spaces import Side, SpaceSpec
from olspace.weights import ConstantWeight, PowerDecayWeight

SEQUENCE = Domain(kind=Kind.SEQUENCE)


class TestModulars:
    def test_rho_is_a_sum_over_pieces(self):
        f = StepFunction.from_arrays([2.0, 1.0], [1.0, 2.0])
        assert modular_rho(square_space(), f) == pytest.approx(6.0)

    def test_rho_uses_the_rearrangement(self):
        spec = square_space(root_weight())
        f = StepFunction.from_arrays([1.0, 1.0], [1.0, 2.0])
        g = StepFunction.from_arrays([1.0, 1.0], [2.0, 1.0])
        assert modular_rho(spec, f) == modular_rho(spec, g)

    def test_alpha(self):
        spec = square_space(ConstantWeight(domain=SEQUENCE))
        assert modular_alpha(spec, StepFunction.from_values([1.0, 3.0])) == pytest.approx(10.0)

    def test_kind_mismatch(self):
        with pytest.raises(PreconditionError):
            modular_rho(square_space(ConstantWeight(domain=SEQUENCE)), StepFunction.from_values([1.0]))
        with pytest.raises(PreconditionError):
            modular_alpha(square_space(), StepFunction.indicator(1.0))

    def test_q_of_indicator(self):
        spec = square_space(side=Side.M)
        assert modular_q(spec, StepFunction.indicator(4.0)) == pytest.approx(1.0)

    def test_q_is_infinite_outside_the_domain(self):
        spec = lorentz_space().dual()
        assert modular_q(spec, StepFunction.indicator(1.0, 2.0)) == math.inf
        assert modular_q(spec, StepFunction.indicator(1.0, 0.5)) == 0.0


class TestLuxemburg:
    def test_indicator_in_square_space(self):
        assert lambda_norm(square_space(), StepFunction.indicator(4.0)) == pytest.approx(2.0, rel=1e-12)

    def test_generic_modular_agrees(self):
        spec = square_space(root_weight())
        f = StepFunction.from_arrays([0.5, 2.0, 1.0], [3.0, 1.0, 2.0])
        assert luxemburg_norm(lambda g: modular_rho(spec, g), f) == pytest.approx(lambda_norm(spec, f), rel=1e-12)

    def test_zero(self):
        assert lambda_norm(square_space(), StepFunction()) == 0.0
        assert luxemburg_norm(lambda g: math.inf, StepFunction()) == 0.0

    def test_infinite_modular(self):
        assert luxemburg_norm(lambda g: math.inf, StepFunction.indicator(1.0)) == math.inf

    def test_lorentz_norm(self):
        spec = lorentz_space(root_weight())
        f = StepFunction.from_arrays([1.0, 1.0], [1.0, 2.0])
        expected = 2.0 + 2.0 * math.sqrt(2.0)
        assert lambda_norm(spec, f) == pytest.approx(expected, rel=1e-12)
        assert lorentz_norm_distribution(spec.weight, f) == pytest.approx(expected, rel=1e-14)

    def test_exponential_norm_of_indicator(self):
        spec = SpaceSpec(phi=ExpMinusOneOrlicz(), weight=unit_weight())
        # (e^(1/ε) − 1)·2 = 1
        assert lambda_norm(spec, StepFunction.indicator(2.0)) == pytest.approx(1.0 / math.log(1.5), rel=1e-12)

    def test_side_is_checked(self):
        with pytest.raises(PreconditionError):
            lambda_norm(square_space(side=Side.M), StepFunction.indicator(1.0))
        with pytest.raises(PreconditionError):
            m_norm(square_space(), StepFunction.indicator(1.0))


class TestDualNorms:
    def test_m_norm_through_q(self):
        assert m_norm(square_space(side=Side.M), StepFunction.indicator(4.0)) == pytest.approx(1.0, rel=1e-10)

    def test_m_norm_of_non_n_function(self):
        spec = lorentz_space().dual()
        assert m_norm(spec, StepFunction.indicator(4.0)) == pytest.approx(1.0, rel=1e-9)

    def test_m_norm_with_bounded_conjugate_domain(self):
        # ψ(v) = v²/4 on [0, 2]: Q(s·χ_(0,1)) = s²/8 reaches one at s = √8
        spec = SpaceSpec(phi=PowerSpliceLinearOrlicz(1.0, 2.0).conjugate(), weight=root_weight(), side=Side.M)
        norm = m_norm(spec, StepFunction.indicator(1.0))
        assert norm == pytest.approx(fundamental_m(spec, 1.0), rel=1e-10)
        assert norm == pytest.approx(1.0 / math.sqrt(8.0), rel=1e-10)

    def test_orlicz_norm_with_bounded_conjugate_domain(self):
        # inf over k of (1 + k²/8)/k is reached at k = √8 < 4, inside the domain
        spec = SpaceSpec(phi=PowerSpliceLinearOrlicz(1.0, 2.0).conjugate(), weight=root_weight(), side=Side.M)
        assert orlicz_amemiya_norm(spec, StepFunction.indicator(1.0)) == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-5)

    def test_orlicz_norm_falls_back_to_q(self, monkeypatch):
        def failing(*args, **kwargs):
            raise NumericalFailure("no convergence", best_value=math.inf)

        monkeypatch.setattr("olspace.norms.modular_p", failing)
        spec = lorentz_space().dual()
        with pytest.warns(ConvergenceWarning):
            norm = orlicz_amemiya_norm(spec, StepFunction.indicator(4.0))
        assert norm == pytest.approx(1.0, rel=1e-8)

    def test_dual_lorentz_norm_is_largest_average(self):
        spec = lorentz_space(root_weight()).dual()
        f = StepFunction.indicator(4.0)
        assert m_norm(spec, f) == pytest.approx(fundamental_m(spec, 4.0), rel=1e-8)

    def test_orlicz_norm_of_indicator(self):
        # inf over k of (1 + k²/4·t)/k at t = 4 is 2
        spec = square_space(side=Side.M)
        assert orlicz_amemiya_norm(spec, StepFunction.indicator(4.0)) == pytest.approx(2.0, rel=1e-9)

    def test_zero(self):
        assert m_norm(square_space(side=Side.M), StepFunction()) == 0.0
        assert orlicz_amemiya_norm(square_space(side=Side.M), StepFunction()) == 0.0


class TestAmemiya:
    def test_square_indicator(self):
        assert amemiya_norm_lambda(square_space(), StepFunction.indicator(1.0)) == pytest.approx(2.0, rel=1e-12)

    def test_linear_amemiya_is_the_lorentz_norm(self):
        spec = lorentz_space(root_weight())
        f = StepFunction.from_arrays([1.0, 1.0], [1.0, 2.0])
        assert amemiya_norm_lambda(spec, f) == pytest.approx(lambda_norm(spec, f), rel=1e-9)

    @pytest.mark.parametrize("spec", [square_space(), square_space(root_weight())], ids=["w=1", "w=t^-1/2"])
    def test_between_one_and_two_luxemburg_norms(self, spec):
        f = StepFunction.from_arrays([0.5, 1.5, 3.0], [2.0, 0.5, 1.0])
        luxemburg = lambda_norm(spec, f)
        amemiya = amemiya_norm_lambda(spec, f)
        assert luxemburg * (1 - 1e-10) <= amemiya <= 2.0 * luxemburg * (1 + 1e-10)


class TestFundamental:
    @pytest.mark.parametrize(("t", "expected"), [(1.0, 1.0), (4.0, 2.0), (9.0, 3.0)])
    def test_square_space(self, t, expected):
        assert fundamental_lambda(square_space(), t) == pytest.approx(expected, rel=1e-14)

    def test_matches_norm_of_indicator(self):
        spec = SpaceSpec(phi=PowerOrlicz(3.0), weight=PowerDecayWeight(0.5))
        assert fundamental_lambda(spec, 2.0) == pytest.approx(lambda_norm(spec, StepFunction.indicator(2.0)), rel=1e-12)

    def test_m_side(self):
        spec = square_space(side=Side.M)
        assert fundamental_m(spec, 4.0) == pytest.approx(1.0, rel=1e-14)
        assert fundamental_m(lorentz_space().dual(), 4.0) == 1.0

    @pytest.mark.parametrize("t", [0.0, -1.0, 1.0, 2.0])
    def test_time_outside_the_interval(self, t):
        spec = square_space(ConstantWeight(domain=Domain(gamma=1.0)))
        with pytest.raises(DomainError):
            fundamental_lambda(spec, t)
