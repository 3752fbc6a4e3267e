"""Exponential function φ(u) = e^u − 1."""

import math
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from olspace.orlicz.base import GrowthReport, OrliczFunction, Value
from olspace.verdict import Verdict


class ExpMinusOneOrlicz(OrliczFunction):
    """φ(u) = e^u − 1, which satisfies Δ₂ near zero only."""

    family = "exp_minus_one"

    def __init__(self) -> None:
        super().__init__(a=0.0, d=0.0)

    def _finite_values(self, u: np.ndarray) -> np.ndarray:
        return np.expm1(u)

    def right_derivative(self, u: ArrayLike) -> Value:
        u_arr = np.asarray(u, dtype=float)
        out = np.exp(u_arr)
        return float(out) if out.ndim == 0 else out

    @property
    def slope_at_zero(self) -> float:
        return 1.0

    @property
    def slope_at_infinity(self) -> float:
        return math.inf

    def _closed_form_inverse(self, s: float) -> Optional[float]:
        return math.log1p(s)

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        safe = np.maximum(v, 1.0)
        return np.where(v <= 1.0, 0.0, safe * np.log(safe) - safe + 1.0)

    def _conjugate_right_derivative(self, v: np.ndarray) -> np.ndarray:
        return np.log(np.maximum(v, 1.0))

    def _analytic_growth(self) -> GrowthReport:
        # φ(2u)/φ(u) = e^u + 1 is bounded by e + 1 on (0, 1] and unbounded at infinity
        return GrowthReport(delta2_zero=Verdict.HOLDS, delta2_inf=Verdict.FAILS, n_at_infinity=Verdict.HOLDS)

    def _sigma_closed_form(self, lower: float, upper: float) -> Optional[float]:
        # 2φ(u/2)/φ(u) = 2/(e^{u/2} + 1) decreases in u
        return 2.0 / (math.exp(lower / 2.0) + 1.0)

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family}
