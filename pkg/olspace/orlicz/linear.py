"""Linear function φ(u) = k·u."""

import math
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from olspace.exceptions import DomainError
from olspace.orlicz.base import GrowthReport, OrliczFunction, Value
from olspace.verdict import Verdict


class LinearOrlicz(OrliczFunction):
    """φ(u) = k·u. Its conjugate is the indicator of [0, k]."""

    family = "linear"

    def __init__(self, k: float = 1.0) -> None:
        if not k > 0:
            raise DomainError(f"Slope must be positive, got {k}")
        self.k = float(k)
        super().__init__(a=0.0, d=math.inf)

    def _finite_values(self, u: np.ndarray) -> np.ndarray:
        return self.k * u

    def right_derivative(self, u: ArrayLike) -> Value:
        u_arr = np.asarray(u, dtype=float)
        out = np.full(u_arr.shape, self.k)
        return float(out) if out.ndim == 0 else out

    @property
    def slope_at_zero(self) -> float:
        return self.k

    @property
    def slope_at_infinity(self) -> float:
        return self.k

    def _closed_form_inverse(self, s: float) -> Optional[float]:
        return s / self.k

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        return np.where(v <= self.k, 0.0, math.inf)

    def _conjugate_right_derivative(self, v: np.ndarray) -> np.ndarray:
        return np.where(v < self.k, 0.0, math.inf)

    def _analytic_growth(self) -> GrowthReport:
        return GrowthReport(
            delta2_zero=Verdict.HOLDS,
            delta2_inf=Verdict.HOLDS,
            n_at_infinity=Verdict.FAILS,
            witness_K=2.0,
            witness_u0=0.0,
        )

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "k": self.k}
