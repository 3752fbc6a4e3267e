"""Functions spliced from a linear and a power piece at a junction u₀."""

import math
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from olspace.exceptions import DomainError, PreconditionError
from olspace.orlicz.base import GrowthReport, OrliczFunction, Value
from olspace.verdict import Verdict


def _check_splice(u0: float, p: float, k: float) -> None:
    if not 0 < u0 < math.inf:
        raise DomainError(f"Junction must be positive and finite, got {u0}")
    if not p > 1:
        raise DomainError(f"Power exponent must exceed 1, got {p}")
    if not k > 0:
        raise DomainError(f"Scale must be positive, got {k}")


class LinearSplicePowerOrlicz(OrliczFunction):
    """Linear k·u up to u₀, then a C¹ power continuation growing like u^p.

    Beyond the junction φ(u) = k·u₀·((u/u₀)^p/p + 1 − 1/p).
    """

    family = "linear_splice_power"

    def __init__(self, u0: float, p: float, k: float = 1.0) -> None:
        _check_splice(u0, p, k)
        self.u0 = float(u0)
        self.p = float(p)
        self.k = float(k)
        super().__init__(a=0.0, d=self.u0)

    def _finite_values(self, u: np.ndarray) -> np.ndarray:
        tail = self.k * self.u0 * ((u / self.u0) ** self.p / self.p + 1.0 - 1.0 / self.p)
        return np.where(u <= self.u0, self.k * u, tail)

    def right_derivative(self, u: ArrayLike) -> Value:
        u_arr = np.asarray(u, dtype=float)
        out = np.where(u_arr < self.u0, self.k, self.k * (u_arr / self.u0) ** (self.p - 1.0))
        return float(out) if out.ndim == 0 else out

    @property
    def slope_at_zero(self) -> float:
        return self.k

    @property
    def slope_at_infinity(self) -> float:
        return math.inf

    def _closed_form_inverse(self, s: float) -> Optional[float]:
        if s <= self.k * self.u0:
            return s / self.k
        return self.u0 * (self.p * (s / (self.k * self.u0) - 1.0 + 1.0 / self.p)) ** (1.0 / self.p)

    def _conjugate_right_derivative(self, v: np.ndarray) -> np.ndarray:
        ratio = np.maximum(v / self.k, 1.0)
        return np.where(v <= self.k, 0.0, self.u0 * ratio ** (1.0 / (self.p - 1.0)))

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        maximizer = self._conjugate_right_derivative(v)
        return np.where(v <= self.k, 0.0, maximizer * v - self._finite_values(maximizer))

    def _analytic_growth(self) -> GrowthReport:
        return GrowthReport(
            delta2_zero=Verdict.HOLDS,
            delta2_inf=Verdict.HOLDS,
            n_at_infinity=Verdict.HOLDS,
            witness_K=2.0**self.p,
            witness_u0=0.0,
        )

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "u0": self.u0, "p": self.p, "k": self.k}


class PowerSpliceLinearOrlicz(OrliczFunction):
    """Power k·u^p up to u₀, then its tangent line with slope K = k·p·u₀^(p−1)."""

    family = "power_splice_linear"

    def __init__(self, u0: float, p: float, k: float = 1.0) -> None:
        _check_splice(u0, p, k)
        self.u0 = float(u0)
        self.p = float(p)
        self.k = float(k)
        self.tail_slope = self.k * self.p * self.u0 ** (self.p - 1.0)
        super().__init__(a=0.0, d=0.0)

    @property
    def _junction_value(self) -> float:
        return self.k * self.u0**self.p

    def _finite_values(self, u: np.ndarray) -> np.ndarray:
        tail = self._junction_value + self.tail_slope * (u - self.u0)
        return np.where(u <= self.u0, self.k * np.minimum(u, self.u0) ** self.p, tail)

    def right_derivative(self, u: ArrayLike) -> Value:
        u_arr = np.asarray(u, dtype=float)
        out = np.where(u_arr < self.u0, self.k * self.p * np.minimum(u_arr, self.u0) ** (self.p - 1.0), self.tail_slope)
        return float(out) if out.ndim == 0 else out

    @property
    def slope_at_zero(self) -> float:
        return 0.0

    @property
    def slope_at_infinity(self) -> float:
        return self.tail_slope

    def _closed_form_inverse(self, s: float) -> Optional[float]:
        if s <= self._junction_value:
            return (s / self.k) ** (1.0 / self.p)
        return self.u0 + (s - self._junction_value) / self.tail_slope

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        inside = np.minimum(v, self.tail_slope)
        power_part = (1.0 - 1.0 / self.p) * inside * (inside / (self.k * self.p)) ** (1.0 / (self.p - 1.0))
        return np.where(v <= self.tail_slope, power_part, math.inf)

    def _conjugate_right_derivative(self, v: np.ndarray) -> np.ndarray:
        inside = np.minimum(v, self.tail_slope)
        maximizer = (inside / (self.k * self.p)) ** (1.0 / (self.p - 1.0))
        return np.where(v < self.tail_slope, maximizer, math.inf)

    def _analytic_growth(self) -> GrowthReport:
        return GrowthReport(
            delta2_zero=Verdict.HOLDS,
            delta2_inf=Verdict.HOLDS,
            n_at_infinity=Verdict.FAILS,
            witness_K=2.0**self.p,
            witness_u0=0.0,
        )

    def linear_growth_threshold(self, slope: float) -> float:
        if not 0 < slope < self.tail_slope:
            raise PreconditionError(f"Slope {slope} must lie in (0, {self.tail_slope})")
        on_power_piece = (slope / self.k) ** (1.0 / (self.p - 1.0))
        if on_power_piece <= self.u0:
            return on_power_piece
        # φ(u)/u = slope on the linear piece
        return (self.tail_slope * self.u0 - self._junction_value) / (self.tail_slope - slope)

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "u0": self.u0, "p": self.p, "k": self.k}
