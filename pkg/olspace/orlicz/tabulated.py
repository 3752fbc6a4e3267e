"""Piecewise linear Orlicz functions given by a table of nodes."""

import math
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from olspace.exceptions import DomainError
from olspace.orlicz.base import ExtendedOrliczFunction, GrowthReport, Value
from olspace.verdict import Verdict

CONVEXITY_TOLERANCE = 1e-12


class TabulatedOrlicz(ExtendedOrliczFunction):
    """Linear interpolation between nodes (u_i, φ_i).

    Beyond the last node the function continues with the last slope, or is ∞ when
    `finite_domain` is set. A missing node at zero is added as (0, 0).
    """

    family = "tabulated"

    def __init__(self, nodes: Sequence[Tuple[float, float]], finite_domain: bool = False) -> None:
        table = np.asarray(nodes, dtype=float)
        if table.ndim != 2 or table.shape[1] != 2:
            raise DomainError("Nodes must be a sequence of (u, φ(u)) pairs")
        if table.size and table[0, 0] > 0:
            table = np.vstack([[0.0, 0.0], table])
        if table.shape[0] < 3:
            raise DomainError(f"At least 3 nodes are required, got {table.shape[0]}")
        if not np.all(np.isfinite(table)):
            raise DomainError("Nodes must be finite")
        u, values = table[:, 0], table[:, 1]
        if u[0] != 0 or values[0] != 0:
            raise DomainError("The table must start at (0, 0)")
        if np.any(np.diff(u) <= 0):
            raise DomainError("Node abscissae must be strictly increasing")
        slopes = np.diff(values) / np.diff(u)
        if slopes[0] < 0:
            raise DomainError("Tabulated function must be nondecreasing")
        scale = max(1.0, float(np.max(np.abs(slopes))))
        if np.any(np.diff(slopes) < -CONVEXITY_TOLERANCE * scale):
            raise DomainError("Tabulated function must be convex")
        if values[-1] <= 0:
            raise DomainError("Tabulated function must not be identically zero")

        self.u_nodes = u
        self.values = values
        self.slopes = slopes
        self.finite_domain = bool(finite_domain)

        zero_nodes = np.flatnonzero(values == 0)
        a = float(u[zero_nodes[-1]])
        same = np.isclose(slopes, slopes[0], rtol=1e-12, atol=0.0)
        if a > 0:
            d = a
        elif np.all(same):
            d = float(u[-1]) if self.finite_domain else math.inf
        else:
            d = float(u[int(np.argmin(same))])
        b = float(u[-1]) if self.finite_domain else math.inf
        super().__init__(a=a, b=b, d=d)

    def _finite_values(self, u: np.ndarray) -> np.ndarray:
        inside = np.interp(u, self.u_nodes, self.values)
        beyond = self.values[-1] + self.slopes[-1] * (u - self.u_nodes[-1])
        return np.where(u <= self.u_nodes[-1], inside, beyond)

    def right_derivative(self, u: ArrayLike) -> Value:
        u_arr = np.asarray(u, dtype=float)
        index = np.clip(np.searchsorted(self.u_nodes, u_arr, side="right") - 1, 0, self.slopes.size - 1)
        out = self.slopes[index]
        if self.finite_domain:
            out = np.where(u_arr >= self.u_nodes[-1], math.inf, out)
        return float(out) if np.ndim(out) == 0 else out

    @property
    def slope_at_zero(self) -> float:
        return float(self.slopes[0])

    @property
    def slope_at_infinity(self) -> float:
        return math.inf if self.finite_domain else float(self.slopes[-1])

    def _conjugate_values(self, v: np.ndarray) -> np.ndarray:
        # the supremum of uv − φ(u) over a piecewise linear φ is attained at a node
        flat = v.ravel()
        best = np.max(np.outer(flat, self.u_nodes) - self.values, axis=1)
        if not self.finite_domain:
            best = np.where(flat > self.slopes[-1], math.inf, best)
        return best.reshape(v.shape)

    def _conjugate_right_derivative(self, v: np.ndarray) -> np.ndarray:
        flat = v.ravel()
        index = np.searchsorted(self.slopes, flat, side="right")
        maximizer = self.u_nodes[np.minimum(index, self.u_nodes.size - 1)]
        if not self.finite_domain:
            maximizer = np.where(flat >= self.slopes[-1], math.inf, maximizer)
        return maximizer.reshape(v.shape)

    def growth_report(
        self,
        probe_range: Optional[Tuple[float, float]] = None,
        doubling_samples: Optional[int] = None,
    ) -> GrowthReport:
        """Probe the growth on the tabulated data, by default from the first positive node to the last."""
        if probe_range is None:
            probe_range = (float(self.u_nodes[1]), float(self.u_nodes[-1]))
        return super().growth_report(probe_range=probe_range, doubling_samples=doubling_samples)

    def _probe_n_at_infinity(self, grid: np.ndarray) -> Verdict:
        if self.finite_domain:
            return super()._probe_n_at_infinity(grid)
        # linear past the last node, so φ(u)/u tends to the last slope
        return Verdict.FAILS

    def to_config(self) -> Dict[str, Any]:
        nodes = [[float(u), float(value)] for u, value in zip(self.u_nodes, self.values)]
        return {"family": self.family, "nodes": nodes, "finite_domain": self.finite_domain}

    @classmethod
    def from_function(
        cls, phi: ExtendedOrliczFunction, grid: Sequence[float], finite_domain: bool = False
    ) -> "TabulatedOrlicz":
        """Tabulate another function on a grid of nonnegative points."""
        points = np.asarray(grid, dtype=float)
        values = np.asarray(phi(points), dtype=float)
        return cls(list(zip(points.tolist(), values.tolist())), finite_domain=finite_domain)
