"""Complementary (Young conjugate) functions."""

import logging
import math
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from olspace.exceptions import PreconditionError
from olspace.orlicz.base import ExtendedOrliczFunction, GrowthReport, Value
from olspace.verdict import Verdict

logger = logging.getLogger(__name__)


class ConjugateOrlicz(ExtendedOrliczFunction):
    """φ*(v) = sup{uv − φ(u) : u > 0} of a finite Orlicz function φ.

    With a and b the zero and finiteness constants of φ, the conjugate has largest zero
    equal to the slope of φ at zero and is finite below the slope of φ at infinity.
    """

    family = "conjugate"

    def __init__(self, primal: ExtendedOrliczFunction) -> None:
        if not primal.is_finite:
            raise PreconditionError("Conjugates are only taken of finite Orlicz functions")
        self.primal = primal
        a = primal.slope_at_zero
        b = primal.slope_at_infinity
        if a > 0:
            d = a
        elif primal.a > 0:
            # φ* is linear with slope a up to the slope of φ just after its zero set
            d = float(primal.right_derivative(primal.a))
        else:
            d = 0.0
        super().__init__(a=a, b=b, d=min(d, b))

    def _finite_values(self, v: np.ndarray) -> np.ndarray:
        return np.asarray(self.primal._conjugate_values(v), dtype=float)

    def right_derivative(self, v: ArrayLike) -> Value:
        v_arr = np.asarray(v, dtype=float)
        out = np.asarray(self.primal._conjugate_right_derivative(v_arr), dtype=float)
        out = np.where(v_arr >= self.b, math.inf, out)
        return float(out) if out.ndim == 0 else out

    @property
    def slope_at_zero(self) -> float:
        return self.primal.a

    @property
    def slope_at_infinity(self) -> float:
        return math.inf

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        # biconjugate of a convex lower semicontinuous function
        return np.asarray(self.primal(v), dtype=float)

    def _analytic_growth(self) -> Optional[GrowthReport]:
        if math.isfinite(self.b):
            return GrowthReport(delta2_zero=self._delta2_zero(), delta2_inf=Verdict.FAILS, n_at_infinity=Verdict.HOLDS)
        return None

    def _probe_n_at_infinity(self, grid: np.ndarray) -> Verdict:
        # φ*(v)/v tends to the end of finiteness of φ, which is infinite
        return Verdict.HOLDS

    def _delta2_zero(self) -> Verdict:
        if self.a > 0:
            return Verdict.HOLDS
        grid = np.geomspace(1e-4 * self.b, 1e-2 * self.b, self.default_doubling_samples)
        return self._probe_verdict(self._doubling_ratios(grid)[::-1])

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "of": self.primal.to_config()}


def conjugate(phi: ExtendedOrliczFunction) -> ExtendedOrliczFunction:
    """Return the complementary function of a finite Orlicz function.

    Args:
        phi (ExtendedOrliczFunction): Finite Orlicz function.

    Raises:
        PreconditionError: If `phi` takes the value ∞ somewhere.

    Returns:
        ExtendedOrliczFunction: The conjugate, finite exactly when `phi` is an N-function at infinity.
    """
    if isinstance(phi, ConjugateOrlicz):
        return phi.primal
    logger.debug("Conjugating %r", phi)
    return ConjugateOrlicz(phi)
