"""Power functions φ(u) = k·u^p and their shifted, degenerate variant."""

import math
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from olspace.exceptions import DomainError
from olspace.orlicz.base import GrowthReport, OrliczFunction, Value
from olspace.verdict import Verdict


def _power_conjugate(v: np.ndarray, p: float, k: float) -> np.ndarray:
    return (1.0 - 1.0 / p) * v * (v / (k * p)) ** (1.0 / (p - 1.0))


def _check_power(p: float, k: float) -> None:
    if not p > 1:
        raise DomainError(f"Power exponent must exceed 1, got {p}")
    if not k > 0:
        raise DomainError(f"Scale must be positive, got {k}")


class PowerOrlicz(OrliczFunction):
    """φ(u) = k·u^p with p > 1."""

    family = "power"

    def __init__(self, p: float, k: float = 1.0) -> None:
        _check_power(p, k)
        self.p = float(p)
        self.k = float(k)
        super().__init__(a=0.0, d=0.0)

    def _finite_values(self, u: np.ndarray) -> np.ndarray:
        return self.k * u**self.p

    def right_derivative(self, u: ArrayLike) -> Value:
        u_arr = np.asarray(u, dtype=float)
        out = self.k * self.p * u_arr ** (self.p - 1.0)
        return float(out) if out.ndim == 0 else out

    @property
    def slope_at_zero(self) -> float:
        return 0.0

    @property
    def slope_at_infinity(self) -> float:
        return math.inf

    def _closed_form_inverse(self, s: float) -> Optional[float]:
        return (s / self.k) ** (1.0 / self.p)

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        return _power_conjugate(v, self.p, self.k)

    def _conjugate_right_derivative(self, v: np.ndarray) -> np.ndarray:
        return (v / (self.k * self.p)) ** (1.0 / (self.p - 1.0))

    def _analytic_growth(self) -> GrowthReport:
        return GrowthReport(
            delta2_zero=Verdict.HOLDS,
            delta2_inf=Verdict.HOLDS,
            n_at_infinity=Verdict.HOLDS,
            witness_K=2.0**self.p,
            witness_u0=0.0,
        )

    def _sigma_closed_form(self, lower: float, upper: float) -> Optional[float]:
        return 2.0 ** (1.0 - self.p)

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "p": self.p, "k": self.k}


class ShiftedPowerOrlicz(OrliczFunction):
    """φ(u) = k·max(u − a, 0)^p, vanishing on [0, a]."""

    family = "shifted_power"

    def __init__(self, a: float, p: float, k: float = 1.0) -> None:
        _check_power(p, k)
        if not 0 <= a < math.inf:
            raise DomainError(f"Shift must be finite and nonnegative, got {a}")
        self.shift = float(a)
        self.p = float(p)
        self.k = float(k)
        super().__init__(a=self.shift, d=self.shift)

    def _finite_values(self, u: np.ndarray) -> np.ndarray:
        return self.k * np.maximum(u - self.shift, 0.0) ** self.p

    def right_derivative(self, u: ArrayLike) -> Value:
        u_arr = np.asarray(u, dtype=float)
        out = self.k * self.p * np.maximum(u_arr - self.shift, 0.0) ** (self.p - 1.0)
        return float(out) if out.ndim == 0 else out

    @property
    def slope_at_zero(self) -> float:
        return 0.0

    @property
    def slope_at_infinity(self) -> float:
        return math.inf

    def _closed_form_inverse(self, s: float) -> Optional[float]:
        return self.shift + (s / self.k) ** (1.0 / self.p)

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        return self.shift * v + _power_conjugate(v, self.p, self.k)

    def _conjugate_right_derivative(self, v: np.ndarray) -> np.ndarray:
        return self.shift + (v / (self.k * self.p)) ** (1.0 / (self.p - 1.0))

    def _analytic_growth(self) -> GrowthReport:
        # (2u − a)/(u − a) <= 3 once u >= 2a
        if self.shift == 0:
            witness_K, witness_u0 = 2.0**self.p, 0.0
        else:
            witness_K, witness_u0 = 3.0**self.p, 2.0 * self.shift
        return GrowthReport(
            delta2_zero=Verdict.HOLDS,
            delta2_inf=Verdict.HOLDS,
            n_at_infinity=Verdict.HOLDS,
            witness_K=witness_K,
            witness_u0=witness_u0,
        )

    def _sigma_closed_form(self, lower: float, upper: float) -> Optional[float]:
        # 2φ(u/2)/φ(u) is zero up to 2a and increasing afterwards
        if upper <= 2.0 * self.shift:
            return 0.0
        return 2.0 * ((upper / 2.0 - self.shift) / (upper - self.shift)) ** self.p

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "a": self.shift, "p": self.p, "k": self.k}
