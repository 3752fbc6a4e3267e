"""Orlicz function base classes and growth reports."""

import logging
import math
import warnings
from typing import Any, ClassVar, Dict, Optional, Tuple, Union

import numpy as np
import pydantic
from numpy.typing import ArrayLike
from scipy import optimize

from olspace.exceptions import DomainError, NumericalFailure, PreconditionError, ProbedRangeWarning
from olspace.verdict import Verdict, all_of

logger = logging.getLogger(__name__)

Value = Union[float, np.ndarray]


class GrowthReport(pydantic.BaseModel):
    """Doubling (Δ₂) conditions and growth at infinity of an Orlicz function."""

    model_config = pydantic.ConfigDict(frozen=True)

    delta2_zero: Verdict
    delta2_inf: Verdict
    n_at_infinity: Verdict
    witness_K: Optional[float] = pydantic.Field(default=None, ge=2.0)
    witness_u0: Optional[float] = pydantic.Field(default=None, ge=0.0)
    probed_range: Optional[Tuple[float, float]] = None

    @pydantic.computed_field  # type: ignore[prop-decorator]
    @property
    def delta2_full(self) -> Verdict:
        """Δ₂ holds iff it holds both near zero and near infinity."""
        return all_of((self.delta2_zero, self.delta2_inf))

    @pydantic.model_validator(mode="after")
    def _witness_present(self) -> "GrowthReport":
        if self.delta2_inf is Verdict.HOLDS and (self.witness_K is None or self.witness_u0 is None):
            raise ValueError("Δ₂ at infinity requires witness_K and witness_u0")
        return self

    def appropriate_delta2(self, gamma: float, sequence: bool) -> Verdict:
        """Return the Δ₂ condition relevant for a space on [0, gamma) or for sequences.

        Args:
            gamma (float): Length of the underlying interval (may be infinite).
            sequence (bool): Whether the space is a sequence space.

        Returns:
            Verdict: Δ₂⁰ for sequences, Δ₂ at infinity when gamma is finite, full Δ₂ otherwise.
        """
        if sequence:
            return self.delta2_zero
        if math.isfinite(gamma):
            return self.delta2_inf
        return self.delta2_full


def _as_array(u: ArrayLike) -> np.ndarray:
    return np.asarray(u, dtype=float)


def _unwrap(values: np.ndarray) -> Value:
    return float(values) if values.ndim == 0 else values


class ExtendedOrliczFunction:
    """Convex, left-continuous function on [0, ∞) with values in [0, ∞], zero at zero.

    Subclasses set the constants `a` (largest zero), `b` (end of finiteness) and `d`
    (end of the initial linear segment) and implement `_finite_values` on [0, b].
    """

    family: ClassVar[str] = NotImplemented

    inverse_rtol: ClassVar[float] = 1e-14
    sigma_samples: ClassVar[int] = 10_000
    max_doubling_constant: ClassVar[float] = 1e6
    divergence_threshold: ClassVar[float] = 1e6
    default_probe_range: ClassVar[Tuple[float, float]] = (1e-3, 1e3)
    default_doubling_samples: ClassVar[int] = 64

    a: float
    b: float
    d: float

    def __init__(self, *, a: float, b: float, d: float) -> None:
        if not 0 <= a <= d:
            raise DomainError(f"Expected 0 <= a <= d, got a={a}, d={d}")
        if not b > 0:
            raise DomainError("Function must not be infinite on the whole half-line")
        if math.isinf(a):
            raise DomainError("Function must not be identically zero")
        self.a = float(a)
        self.b = float(b)
        self.d = float(d)

    # -- values ---------------------------------------------------------------------------------------------------

    def _finite_values(self, u: np.ndarray) -> np.ndarray:
        """Values on [0, b]; at a finite b the left limit (possibly ∞)."""
        raise NotImplementedError(f"Family {self.family} does not define values")

    def __call__(self, u: ArrayLike) -> Value:
        """Evaluate the function (vectorized), returning ∞ beyond `b`."""
        u_arr = _as_array(u)
        if np.any(u_arr < 0) or np.any(np.isnan(u_arr)):
            raise DomainError("Orlicz functions are defined on [0, ∞) only")
        out = np.full(u_arr.shape, math.inf)
        inside = u_arr <= self.b
        if np.any(inside):
            out[inside] = self._finite_values(u_arr[inside])
        return _unwrap(out)

    def evaluate(self, u: float) -> float:
        """Evaluate the function at a single point.

        Args:
            u (float): Nonnegative argument.

        Raises:
            DomainError: If `u` is negative.

        Returns:
            float: φ(u), which is ∞ beyond `b`.
        """
        if u < 0:
            raise DomainError(f"Orlicz functions are defined on [0, ∞) only, got {u}")
        return float(self(u))

    @property
    def value_at_b(self) -> float:
        """φ(b) as the left limit at a finite `b`, ∞ when `b` is infinite."""
        if math.isinf(self.b):
            return math.inf
        return float(self._finite_values(np.array([self.b]))[0])

    def right_derivative(self, u: ArrayLike) -> Value:
        """Right derivative of the function (vectorized)."""
        u_arr = _as_array(u)
        step = 1e-7 * np.maximum(1.0, u_arr)
        return _unwrap((_as_array(self(u_arr + step)) - _as_array(self(u_arr))) / step)

    @property
    def slope_at_zero(self) -> float:
        """lim φ(u)/u as u → 0⁺."""
        raise NotImplementedError(f"Family {self.family} does not define slope_at_zero")

    @property
    def slope_at_infinity(self) -> float:
        """lim φ(u)/u as u → ∞ (∞ when `b` is finite)."""
        raise NotImplementedError(f"Family {self.family} does not define slope_at_infinity")

    # -- classification helpers -----------------------------------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return math.isinf(self.b)

    @property
    def is_linear(self) -> bool:
        """φ(u) = k·u on the whole half-line for some k > 0."""
        return self.a == 0 and math.isinf(self.d)

    @property
    def is_nondegenerate(self) -> bool:
        return self.a == 0

    @property
    def is_n_function_at_infinity(self) -> bool:
        return math.isinf(self.slope_at_infinity)

    @property
    def is_n_function(self) -> bool:
        """Finite, positive off zero, with φ(u)/u → 0 at zero and → ∞ at infinity."""
        return self.is_finite and self.a == 0 and self.slope_at_zero == 0 and self.is_n_function_at_infinity

    # -- inverse --------------------------------------------------------------------------------------------------

    def _closed_form_inverse(self, s: float) -> Optional[float]:
        return None

    def inverse_upper(self, s: float) -> float:
        """Inverse of the function restricted to (a, b].

        When `b` is finite and φ(b) < s the generalized inverse sup{u : φ(u) <= s} = b is returned.

        Args:
            s (float): Positive finite level.

        Raises:
            DomainError: If `s` is not positive or not finite.

        Returns:
            float: The unique u in (a, b] with φ(u) = s.
        """
        if not s > 0:
            raise DomainError(f"Inverse is only unique for positive levels, got {s}")
        if not math.isfinite(s):
            raise DomainError("Inverse of an infinite level is not defined")
        if math.isfinite(self.b) and self.value_at_b <= s:
            return self.b
        closed = self._closed_form_inverse(s)
        if closed is not None:
            return closed
        return self._solve_inverse(s)

    def _solve_inverse(self, s: float) -> float:
        lower = self.a
        if math.isfinite(self.b):
            upper = self.b
        else:
            upper = max(2.0 * lower, 1.0)
            while float(self(upper)) < s:
                lower, upper = upper, 2.0 * upper
                if math.isinf(upper):  # pragma: no cover
                    raise NumericalFailure(f"Could not bracket φ(u) = {s}", best_value=lower)

        def excess(u: float) -> float:
            return min(float(self(u)), 2.0 * s) - s

        root = optimize.brentq(excess, lower, upper, xtol=1e-300, rtol=self.inverse_rtol, maxiter=500)
        logger.debug("Solved %s(u) = %s at u = %s", self.family, s, root)
        return float(root)

    # -- conjugation ----------------------------------------------------------------------------------------------

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        return np.array([numeric_conjugate(self, float(value)) for value in v.ravel()]).reshape(v.shape)

    def _conjugate_right_derivative(self, v: np.ndarray) -> np.ndarray:
        return np.array([conjugate_maximizer(self, float(value)) for value in v.ravel()]).reshape(v.shape)

    def conjugate(self) -> "ExtendedOrliczFunction":
        """Complementary function φ*(v) = sup{uv − φ(u) : u > 0}."""
        from olspace.orlicz.conjugate import conjugate  # circular import

        return conjugate(self)

    # -- growth ---------------------------------------------------------------------------------------------------

    def _analytic_growth(self) -> Optional[GrowthReport]:
        return None

    def growth_report(
        self,
        probe_range: Optional[Tuple[float, float]] = None,
        doubling_samples: Optional[int] = None,
    ) -> GrowthReport:
        """Decide the Δ₂ conditions and whether the function is an N-function at infinity.

        Parametric families answer analytically. Otherwise the doubling ratio φ(2u)/φ(u) is sampled
        on geometric grids near both ends of the probed range and verdicts that the samples cannot
        settle are reported as unknown.

        Args:
            probe_range (Optional[Tuple[float, float]]): Range (u_lo, u_hi) to probe.
            doubling_samples (Optional[int]): Number of grid points at each end.

        Returns:
            GrowthReport: Three-valued growth verdicts with Δ₂ witnesses when available.
        """
        analytic = self._analytic_growth()
        if analytic is not None:
            return analytic
        u_lo, u_hi = probe_range or self.default_probe_range
        if not 0 < u_lo < u_hi:
            raise DomainError(f"Probe range must satisfy 0 < u_lo < u_hi, got {(u_lo, u_hi)}")
        samples = doubling_samples or self.default_doubling_samples
        zero_grid = np.geomspace(u_lo, min(10.0 * u_lo, u_hi), samples)
        inf_grid = np.geomspace(max(u_hi / 10.0, u_lo), u_hi, samples)

        zero_ratios = self._doubling_ratios(zero_grid)
        delta2_zero = self._probe_verdict(zero_ratios[::-1])
        if not self.is_finite:
            delta2_inf = Verdict.FAILS
        else:
            delta2_inf = self._probe_verdict(self._doubling_ratios(inf_grid))
        n_at_infinity = self._probe_n_at_infinity(inf_grid)
        if Verdict.UNKNOWN in (delta2_zero, delta2_inf, n_at_infinity):
            warnings.warn(
                f"Growth of {self.family!r} function only probed on [{u_lo}, {u_hi}]; some verdicts are unknown",
                ProbedRangeWarning,
            )
        witness_K = witness_u0 = None
        if delta2_inf is Verdict.HOLDS:
            witness_K = max(2.0, float(np.max(self._doubling_ratios(inf_grid))))
            witness_u0 = float(inf_grid[0])
        return GrowthReport(
            delta2_zero=delta2_zero,
            delta2_inf=delta2_inf,
            n_at_infinity=n_at_infinity,
            witness_K=witness_K,
            witness_u0=witness_u0,
            probed_range=(u_lo, u_hi),
        )

    def _doubling_ratios(self, grid: np.ndarray) -> np.ndarray:
        numerator = _as_array(self(2.0 * grid))
        denominator = _as_array(self(grid))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(denominator > 0, numerator / denominator, np.where(numerator > 0, math.inf, 0.0))
        return ratios

    def _probe_verdict(self, ratios: np.ndarray) -> Verdict:
        """Ratios ordered toward the end of the range that matters (zero or infinity)."""
        if np.any(np.isinf(ratios)):
            return Verdict.FAILS
        peak = float(np.max(ratios))
        if peak <= self.max_doubling_constant and ratios[-1] <= np.max(ratios[:-1]) * (1 + 1e-12):
            return Verdict.HOLDS
        return Verdict.UNKNOWN

    def _probe_n_at_infinity(self, grid: np.ndarray) -> Verdict:
        if not self.is_finite:
            return Verdict.HOLDS
        growth = _as_array(self(grid)) / grid
        if growth[-1] > self.divergence_threshold and np.all(np.diff(growth) > 0):
            return Verdict.HOLDS
        return Verdict.UNKNOWN

    # -- local constants ------------------------------------------------------------------------------------------

    def _sigma_closed_form(self, lower: float, upper: float) -> Optional[float]:
        return None

    def sigma_on_interval(self, lower: float, upper: float) -> float:
        """Smallest σ with 2φ(u/2)/φ(u) <= σ on the closed interval [lower, upper].

        Args:
            lower (float): Left end of the interval, must exceed `d`.
            upper (float): Right end of the interval, finite.

        Raises:
            PreconditionError: If the interval meets [0, d], is unbounded or leaves the finite domain.
            NumericalFailure: If the computed bound is not below one.

        Returns:
            float: σ in (0, 1).
        """
        if not lower <= upper or not math.isfinite(upper):
            raise PreconditionError(f"Expected a closed bounded interval, got [{lower}, {upper}]")
        if not lower > self.d:
            raise PreconditionError(f"Interval [{lower}, {upper}] must lie in (d, ∞) with d = {self.d}")
        if upper >= self.b:
            raise PreconditionError(f"Interval [{lower}, {upper}] leaves the finite domain [0, {self.b})")
        closed = self._sigma_closed_form(lower, upper)
        sigma = closed if closed is not None else self._sample_sigma(lower, upper)
        if not sigma < 1:
            raise NumericalFailure(f"Ratio bound {sigma} on [{lower}, {upper}] is not below one", best_value=sigma)
        return sigma

    def _halving_ratio(self, u: ArrayLike) -> Value:
        u_arr = _as_array(u)
        return _unwrap(2.0 * _as_array(self(u_arr / 2.0)) / _as_array(self(u_arr)))

    def _sample_sigma(self, lower: float, upper: float) -> float:
        if lower == upper:
            return float(self._halving_ratio(lower))
        grid = np.linspace(lower, upper, self.sigma_samples)
        ratios = _as_array(self._halving_ratio(grid))
        index = int(np.argmax(ratios))
        best = float(ratios[index])
        left, right = grid[max(index - 1, 0)], grid[min(index + 1, grid.size - 1)]
        refined = optimize.minimize_scalar(
            lambda u: -float(self._halving_ratio(u)),
            bounds=(left, right),
            method="bounded",
            options={"xatol": 1e-12 * max(1.0, right)},
        )
        return max(best, -float(refined.fun))

    def linear_growth_threshold(self, slope: float) -> float:
        """Least u₀ such that φ(u) >= slope·u for every u >= u₀.

        Uses that φ(u)/u is nondecreasing.

        Args:
            slope (float): Positive slope below `slope_at_infinity`.

        Raises:
            PreconditionError: If `slope` is not below the slope at infinity.

        Returns:
            float: The threshold u₀.
        """
        if not 0 < slope < self.slope_at_infinity:
            raise PreconditionError(f"Slope {slope} must lie in (0, {self.slope_at_infinity})")
        if self.slope_at_zero >= slope:
            return 0.0
        upper = 1.0
        while float(self(upper)) / upper < slope:
            upper *= 2.0
        lower = upper / 2.0 if upper > 1.0 else 0.0
        root = optimize.brentq(
            lambda u: float(self(u)) / u - slope if u > 0 else self.slope_at_zero - slope,
            lower,
            upper,
            xtol=1e-300,
            rtol=1e-13,
        )
        return float(root)

    # -- serialization --------------------------------------------------------------------------------------------

    def to_config(self) -> Dict[str, Any]:
        """JSON fragment describing the function."""
        raise NotImplementedError(f"Family {self.family} cannot be serialized")

    def __repr__(self) -> str:
        params = ", ".join(f"{key}={value!r}" for key, value in self.to_config().items() if key != "family")
        return f"{self.__class__.__name__}({params})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtendedOrliczFunction):
            return NotImplemented
        return self.to_config() == other.to_config()

    def __hash__(self) -> int:
        return hash(repr(self))


class OrliczFunction(ExtendedOrliczFunction):
    """Finite Orlicz function: convex, nondecreasing, zero at zero and not identically zero."""

    def __init__(self, *, a: float, d: float) -> None:
        super().__init__(a=a, b=math.inf, d=d)


def _maximization_upper(phi: ExtendedOrliczFunction, v: float) -> float:
    if math.isfinite(phi.b):
        return phi.b if math.isfinite(phi.value_at_b) else phi.b * (1 - 1e-12)
    upper = max(1.0, phi.a)
    while float(phi.right_derivative(upper)) <= v:
        upper *= 2.0
    return upper


def conjugate_maximizer(phi: ExtendedOrliczFunction, v: float) -> float:
    """Point u >= 0 maximizing uv − φ(u), found by bounded scalar maximization."""
    if v < 0:
        raise DomainError(f"Conjugates are evaluated on [0, ∞) only, got {v}")
    if v > phi.slope_at_infinity:
        return math.inf
    upper = _maximization_upper(phi, v)
    result = optimize.minimize_scalar(
        lambda u: float(phi(u)) - u * v,
        bounds=(0.0, upper),
        method="bounded",
        options={"xatol": 1e-11 * max(1.0, upper)},
    )
    candidates = [(0.0, 0.0), (float(result.x), -float(result.fun)), (upper, upper * v - float(phi(upper)))]
    return max(candidates, key=lambda item: item[1])[0]


def numeric_conjugate(phi: ExtendedOrliczFunction, v: float) -> float:
    """Legendre–Fenchel transform sup{uv − φ(u) : u > 0} at a single point.

    The map u ↦ uv − φ(u) is concave, so a bounded scalar maximization on [0, U] finds the supremum
    once U is past the point where the slope of φ exceeds v.

    Args:
        phi (ExtendedOrliczFunction): Convex function to transform, possibly extended.
        v (float): Nonnegative point.

    Returns:
        float: φ*(v), possibly ∞.
    """
    if v < 0:
        raise DomainError(f"Conjugates are evaluated on [0, ∞) only, got {v}")
    if v > phi.slope_at_infinity:
        return math.inf
    if v == phi.slope_at_infinity:
        # nondecreasing in u; follow it until it settles
        u, previous = 1.0, 0.0
        for _ in range(200):
            current = u * v - float(phi(u))
            if abs(current - previous) <= 1e-13 * max(1.0, abs(current)):
                return max(current, 0.0)
            previous, u = current, 2.0 * u
        return max(previous, 0.0)
    u = conjugate_maximizer(phi, v)
    return max(u * v - float(phi(u)), 0.0)
