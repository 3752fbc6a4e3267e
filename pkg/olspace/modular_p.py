"""The modular P_{φ,w}(f) = inf{∫ φ(f*/v)·v : v ≺ w, v > 0, v decreasing} on a discretized cone."""

import logging
import math
from typing import ClassVar, Optional, Tuple

import numpy as np
import pydantic
from scipy import optimize

from olspace.domain import Kind
from olspace.exceptions import DomainError, NumericalFailure, PreconditionError
from olspace.rearrangement import StepFunction, rearrange
from olspace.spaces import Side, SpaceSpec

logger = logging.getLogger(__name__)


class PModularResult(pydantic.BaseModel):
    """Value of the discretized P-modular with the cells and the minimizing decreasing v."""

    model_config = pydantic.ConfigDict(frozen=True)

    value: float
    edges: Tuple[float, ...] = ()
    v: Tuple[float, ...] = ()
    iterations: int = 0
    converged: bool = True


class PModularSolver:
    """Solver for the perspective objective Σ φ(fᵢ/vᵢ)·vᵢ·Δᵢ over decreasing v ≺ w.

    Function-kind inputs are discretized on `n_panels` equal cells refined by the breakpoints of
    f*, so f* is constant on every cell. Sequence-kind inputs use unit cells. SLSQP runs first;
    `trust-constr` takes over when it stops without converging.
    """

    max_iterations: ClassVar[int] = 10_000
    ftol: ClassVar[float] = 1e-12
    gtol: ClassVar[float] = 1e-12
    floor_ratio: ClassVar[float] = 1e-12
    boundary_margin: ClassVar[float] = 1e-9
    feasibility_tolerance: ClassVar[float] = 1e-9
    slope_offset: ClassVar[float] = 1e-6

    def __init__(self, spec: SpaceSpec, n_panels: int = 32, max_iterations: Optional[int] = None) -> None:
        if spec.side is not Side.M:
            raise PreconditionError("The P-modular is defined on M-side specs")
        if n_panels < 1:
            raise DomainError(f"Need at least one panel, got {n_panels}")
        self.spec = spec
        self.n_panels = n_panels
        self.iteration_budget = max_iterations or self.max_iterations
        phi = spec.phi
        if math.isinf(phi.b):
            self.ratio_cap = math.inf
        elif math.isinf(phi.value_at_b):
            self.ratio_cap = phi.b / (1.0 + self.boundary_margin)
        else:
            self.ratio_cap = phi.b

    def cells(self, f_star: StepFunction) -> np.ndarray:
        support = f_star.support
        if f_star.kind is Kind.SEQUENCE:
            return np.arange(0.0, round(support) + 1.0)
        candidates = np.union1d(f_star.edges, np.linspace(0.0, support, self.n_panels + 1))
        keep = np.concatenate(([True], np.diff(candidates) > 1e-12 * support))
        edges = candidates[keep]
        edges[-1] = support
        return edges

    def objective(self, f_cells: np.ndarray, widths: np.ndarray, v: np.ndarray) -> float:
        """Σ φ(fᵢ/vᵢ)·vᵢ·Δᵢ, infinite when some fᵢ/vᵢ leaves the domain of φ."""
        ratio = f_cells / v
        if math.isfinite(self.ratio_cap):
            # v on its lower bound f/b may land a rounding error past b
            ratio = np.where(ratio <= self.ratio_cap * (1.0 + 1e-12), np.minimum(ratio, self.ratio_cap), ratio)
        values = np.asarray(self.spec.phi(ratio), dtype=float)
        if np.any(np.isinf(values)):
            return math.inf
        return float(np.sum(values * v * widths))

    def continued(self, ratio: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """φ and its derivative, continued by a finite quadratic from the largest admissible ratio on.

        The lower bounds keep feasible profiles at or below the cap, so the continuation only
        shapes the steps the optimizer tries outside the feasible set.
        """
        phi = self.spec.phi
        if math.isinf(self.ratio_cap):
            return np.asarray(phi(ratio), dtype=float), np.asarray(phi.right_derivative(ratio), dtype=float)
        cap = self.ratio_cap
        inside = ratio < cap
        safe = np.where(inside, ratio, 0.0)
        values = np.asarray(phi(safe), dtype=float)
        slopes = np.asarray(phi.right_derivative(safe), dtype=float)
        value_cap = float(phi(cap))
        slope_cap = float(phi.right_derivative(cap * (1.0 - self.slope_offset)))
        curvature = max(slope_cap, value_cap / cap, 1.0) / cap
        excess = np.maximum(ratio - cap, 0.0)
        values = np.where(inside, values, value_cap + slope_cap * excess + curvature * excess**2)
        slopes = np.where(inside & np.isfinite(slopes), slopes, slope_cap + 2.0 * curvature * excess)
        return values, slopes

    def surrogate(self, f_cells: np.ndarray, widths: np.ndarray, v: np.ndarray) -> float:
        """The objective with φ continued past the cap, finite for every positive v."""
        values, _ = self.continued(f_cells / v)
        return float(np.sum(values * v * widths))

    def _gradient(self, f_cells: np.ndarray, widths: np.ndarray, v: np.ndarray) -> np.ndarray:
        ratio = f_cells / v
        values, slopes = self.continued(ratio)
        return (values - ratio * slopes) * widths

    def lower_bounds(self, f_cells: np.ndarray, floor: float) -> np.ndarray:
        """vᵢ >= fᵢ/b keeps φ(fᵢ/vᵢ) finite when φ is infinite beyond b."""
        if math.isinf(self.ratio_cap):
            return np.full(f_cells.shape, floor)
        return np.maximum(f_cells / self.ratio_cap, floor)

    @staticmethod
    def feasible_start(lower: np.ndarray, averages: np.ndarray, widths: np.ndarray, caps: np.ndarray) -> np.ndarray:
        """Largest step from `lower` toward max(averages, lower) that keeps every cumulative cap."""
        upper = np.maximum(averages, lower)
        cumulative_lower = np.cumsum(lower * widths)
        cumulative_upper = np.cumsum(upper * widths)
        excess = cumulative_upper > caps
        step = 1.0
        if np.any(excess):
            room = (caps[excess] - cumulative_lower[excess]) / (cumulative_upper[excess] - cumulative_lower[excess])
            step = float(np.clip(np.min(room), 0.0, 1.0))
        return lower + step * (upper - lower)

    def solve(self, f: StepFunction) -> PModularResult:
        """Minimize the discretized objective for `f`.

        Raises:
            NumericalFailure: If neither SLSQP nor `trust-constr` converges; carries the best value found,
                which is still an upper bound on P.
        """
        f.check_domain(self.spec.domain)
        f_star = rearrange(f)
        if f_star.is_zero:
            return PModularResult(value=0.0)
        weight = self.spec.weight
        edges = self.cells(f_star)
        widths = np.diff(edges)
        centers = (edges[:-1] + edges[1:]) / 2.0
        f_cells = np.asarray(f_star(centers), dtype=float)
        big_w = np.asarray(weight.big_w(edges), dtype=float)
        caps = big_w[1:]
        scale = float(big_w[-1] / edges[-1])

        lower = self.lower_bounds(f_cells, self.floor_ratio * scale)
        if np.any(np.cumsum(lower * widths) > caps * (1.0 + 1e-12)):
            logger.debug("No decreasing v ≺ w keeps f/v inside the domain of φ, P = ∞")
            return PModularResult(value=math.inf, edges=tuple(edges.tolist()))

        start = self.feasible_start(lower, np.diff(big_w) / widths, widths, caps)
        start_value = self.objective(f_cells, widths, start)
        if start_value == 0:
            return PModularResult(value=0.0, edges=tuple(edges.tolist()), v=tuple(start.tolist()))
        normalizer = start_value

        count = widths.size
        monotone = np.eye(count)[:-1] - np.eye(count, k=1)[:-1]
        cumulative = np.tril(np.ones((count, count))) * widths * scale
        constraint_matrix = np.vstack([monotone, -cumulative])
        constraint_offset = np.concatenate([np.zeros(count - 1), caps])
        scaled_lower = lower / scale

        def objective(x: np.ndarray) -> float:
            return self.surrogate(f_cells, widths, x * scale) / normalizer

        def gradient(x: np.ndarray) -> np.ndarray:
            return self._gradient(f_cells, widths, x * scale) * scale / normalizer

        def evaluate(x: np.ndarray) -> float:
            candidate = np.maximum(np.asarray(x, dtype=float), scaled_lower)
            slack = constraint_matrix @ candidate + constraint_offset
            if not np.all(slack >= -self.feasibility_tolerance * np.maximum(1.0, constraint_offset)):
                return math.inf
            return self.objective(f_cells, widths, candidate * scale)

        result = optimize.minimize(
            objective,
            start / scale,
            jac=gradient,
            method="SLSQP",
            bounds=[(bound, None) for bound in scaled_lower],
            constraints=[
                {
                    "type": "ineq",
                    "fun": lambda x: constraint_matrix @ x + constraint_offset,
                    "jac": lambda x: constraint_matrix,
                }
            ],
            options={"maxiter": self.iteration_budget, "ftol": self.ftol},
        )
        method = "SLSQP"
        if not result.success:
            logger.debug("SLSQP stopped with %r, retrying with trust-constr", result.message)
            fallback = optimize.minimize(
                objective,
                start / scale,
                jac=gradient,
                method="trust-constr",
                hess=optimize.BFGS(),
                bounds=optimize.Bounds(scaled_lower, np.full(count, np.inf), keep_feasible=True),
                constraints=[optimize.LinearConstraint(constraint_matrix, -constraint_offset, np.inf)],
                options={"maxiter": self.iteration_budget, "gtol": self.gtol, "xtol": self.ftol},
            )
            if fallback.success or evaluate(fallback.x) < evaluate(result.x):
                result, method = fallback, "trust-constr"

        candidate = np.maximum(np.asarray(result.x, dtype=float), scaled_lower)
        candidate_value = evaluate(result.x)
        if candidate_value <= start_value:
            value, v = candidate_value, candidate * scale
        else:
            value, v = start_value, start
        iterations = int(getattr(result, "nit", 0))
        if not result.success:
            raise NumericalFailure(
                f"P-modular did not converge ({result.message}) after {iterations} {method} iterations",
                best_value=value,
            )
        logger.debug("P-modular %s after %d %s iterations on %d cells", value, iterations, method, count)
        return PModularResult(
            value=value,
            edges=tuple(edges.tolist()),
            v=tuple(v.tolist()),
            iterations=iterations,
            converged=True,
        )


def modular_p(spec: SpaceSpec, f: StepFunction, n_panels: int = 32) -> PModularResult:
    """P_{φ,w}(f) (or p_{φ,w}(x) for sequences) by convex minimization over decreasing v ≺ w.

    Args:
        spec (SpaceSpec): M-side spec.
        f (StepFunction): Function with finite support.
        n_panels (int): Number of equal cells before refinement by the breakpoints of f*.

    Returns:
        PModularResult: Achieved value, never below the true infimum up to solver tolerance.
    """
    return PModularSolver(spec, n_panels=n_panels).solve(f)


def random_feasible_profile(rng: np.random.Generator, edges: np.ndarray, caps: np.ndarray) -> np.ndarray:
    """Random positive decreasing cell values whose cumulative integrals stay below `caps`."""
    widths = np.diff(edges)
    raw = np.sort(rng.uniform(0.05, 1.0, size=widths.size))[::-1]
    return raw * float(np.min(caps / np.cumsum(raw * widths)))
