"""Numerical checks pairing each computable formula with an independent oracle.

Every check draws its random cases from a stream derived from the suite seed and the check name,
so results do not depend on the order (or the parallelism) in which checks run.
"""

import functools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from importlib import resources
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pydantic
from scipy.spatial import ConvexHull

from olspace.classifier import InconsistentReportError, Property, classify
from olspace.config import parse_spec
from olspace.domain import Domain, Kind
from olspace.exceptions import DomainError, NumericalFailure, PreconditionError
from olspace.modular_p import PModularSolver, modular_p, random_feasible_profile
from olspace.norms import (
    amemiya_norm_lambda,
    fundamental_m,
    lambda_norm,
    lorentz_norm_distribution,
    luxemburg_norm,
    modular_alpha,
    modular_q,
    modular_rho,
)
from olspace.orlicz import (
    ExpMinusOneOrlicz,
    ExtendedOrliczFunction,
    LinearOrlicz,
    LinearSplicePowerOrlicz,
    PowerOrlicz,
    PowerSpliceLinearOrlicz,
    ShiftedPowerOrlicz,
    TabulatedOrlicz,
    numeric_conjugate,
)
from olspace.rearrangement import (
    StepFunction,
    as_signed,
    is_decreasing,
    level_function,
    pointwise_abs,
    rearrange,
)
from olspace.spaces import Side, SpaceSpec
from olspace.streams import stream_for
from olspace.verdict import Verdict
from olspace.weights import ConstantWeight, ExpPlusConstWeight, PowerDecayWeight, TabulatedWeight, Weight

logger = logging.getLogger(__name__)

SignedPieces = List[Tuple[float, float]]

PQ_TOLERANCE = 1e-5
P_BELOW_Q_SLACK = 1e-6
FUNDAMENTAL_TOLERANCE = 1e-7
INVOLUTION_TOLERANCE = 1e-8
LEVEL_IDENTITY_TOLERANCE = 1e-12
LEVEL_MASS_TOLERANCE = 1e-10
LEVEL_HULL_TOLERANCE = 1e-6
HOMOGENEITY_TOLERANCE = 1e-10
TRIANGLE_SLACK = 1e-8
LORENTZ_TOLERANCE = 1e-12
SANDWICH_SLACK = 1e-10
WITNESS_NORM_TOLERANCE = 1e-10


class CheckMode(str, Enum):
    """Which error a check compares with its tolerance."""

    RELATIVE = "relative"
    ABSOLUTE = "absolute"


class CheckResult(pydantic.BaseModel):
    """Outcome of one check: the largest errors seen over its cases and the case that produced them."""

    model_config = pydantic.ConfigDict(frozen=True, ser_json_inf_nan="constants")

    name: str
    cases_run: int
    max_abs_err: float
    max_rel_err: float
    tolerance: float
    passed: bool
    worst_case: Dict[str, Any] = pydantic.Field(default_factory=dict)
    mode: CheckMode = CheckMode.RELATIVE

    @pydantic.model_validator(mode="after")
    def _passed_matches_errors(self) -> "CheckResult":
        error = self.max_rel_err if self.mode is CheckMode.RELATIVE else self.max_abs_err
        if self.passed != (error <= self.tolerance):
            raise ValueError(f"passed={self.passed} contradicts error {error} and tolerance {self.tolerance}")
        return self


class SuiteReport(pydantic.BaseModel):
    """Results of a suite run, serialized as the JSON report of `olspace verify`."""

    model_config = pydantic.ConfigDict(frozen=True, ser_json_inf_nan="constants")

    suite: str
    seed: int
    budget: float
    tol_scale: float = 1.0
    results: Tuple[CheckResult, ...]

    @pydantic.computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)


class Suite(str, Enum):
    ALL = "all"
    PQ = "pq"
    FUNDAMENTAL = "fundamental"
    CONJUGATE = "conjugate"
    LEVEL = "level"
    NORMS = "norms"
    LORENTZ = "lorentz"
    L1 = "l1"
    WITNESS = "witness"
    CLASSIFIER = "classifier"


class _Tally:
    """Accumulates per-case errors into a `CheckResult`."""

    def __init__(self, name: str, tolerance: float, mode: CheckMode = CheckMode.RELATIVE) -> None:
        self.name = name
        self.tolerance = tolerance
        self.mode = mode
        self.cases = 0
        self.max_abs = 0.0
        self.max_rel = 0.0
        self.worst: Dict[str, Any] = {}
        self._worst_score = -1.0

    def record(self, case: Dict[str, Any], abs_err: float, rel_err: Optional[float] = None) -> None:
        abs_err = math.inf if math.isnan(abs_err) else abs_err
        rel_err = abs_err if rel_err is None else (math.inf if math.isnan(rel_err) else rel_err)
        self.cases += 1
        self.max_abs = max(self.max_abs, abs_err)
        self.max_rel = max(self.max_rel, rel_err)
        score = rel_err if self.mode is CheckMode.RELATIVE else abs_err
        if score > self._worst_score:
            self._worst_score = score
            self.worst = case

    def fail(self, case: Dict[str, Any], reason: str) -> None:
        logger.warning("Check %s failed on %s: %s", self.name, case, reason)
        self.record({**case, "failure": reason}, math.inf, math.inf)

    def result(self) -> CheckResult:
        error = self.max_rel if self.mode is CheckMode.RELATIVE else self.max_abs
        return CheckResult(
            name=self.name,
            cases_run=self.cases,
            max_abs_err=self.max_abs,
            max_rel_err=self.max_rel,
            tolerance=self.tolerance,
            passed=error <= self.tolerance,
            worst_case=self.worst,
            mode=self.mode,
        )


def _relative(value: float, reference: float) -> Tuple[float, float]:
    """Absolute and relative difference, both 0 when the two agree on being infinite."""
    if math.isinf(value) or math.isinf(reference):
        return (0.0, 0.0) if value == reference else (math.inf, math.inf)
    difference = abs(value - reference)
    return difference, (difference / max(abs(reference), 1e-300) if difference else 0.0)


def _scaled(count: int, budget: float, minimum: int = 1) -> int:
    return max(minimum, int(round(count * budget)))


# -- random cases -----------------------------------------------------------------------------------------------------


def random_lengths(rng: np.random.Generator, count: int, domain: Domain) -> np.ndarray:
    """Log-uniform lengths in [1e-2, 10] (integers 1..10 for sequences), shrunk to fit a finite gamma."""
    if domain.kind is Kind.SEQUENCE:
        return rng.integers(1, 11, size=count).astype(float)
    lengths = np.exp(rng.uniform(math.log(1e-2), math.log(10.0), size=count))
    total = float(np.sum(lengths))
    if total >= domain.gamma:
        lengths *= 0.999 * domain.gamma / total
    return lengths


def random_step_function(
    rng: np.random.Generator, domain: Domain, max_pieces: int = 6, decreasing: bool = False
) -> StepFunction:
    """Random nonnegative step function with log-uniform values in [1e-2, 1e2]."""
    count = int(rng.integers(1, max_pieces + 1))
    lengths = random_lengths(rng, count, domain)
    values = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), size=count))
    if decreasing:
        values = np.sort(values)[::-1]
    return StepFunction.from_arrays(lengths, values, domain.kind)


def random_signed_pieces(rng: np.random.Generator, domain: Domain, max_pieces: int = 8) -> SignedPieces:
    """Signed step function as (length, value) pieces from zero."""
    f = random_step_function(rng, domain, max_pieces)
    signs = rng.choice([-1.0, 1.0], size=len(f.pieces))
    return [(length, sign * value) for (length, value), sign in zip(f.pieces, signs)]


def _abs_of(pieces: SignedPieces, kind: Kind) -> StepFunction:
    return pointwise_abs(pieces, [], 1.0, kind)


def _modular(spec: SpaceSpec) -> Callable[[StepFunction], float]:
    if spec.kind is Kind.SEQUENCE:
        return lambda f: modular_alpha(spec, f)
    return lambda f: modular_rho(spec, f)


def _pieces(f: StepFunction) -> List[List[float]]:
    return [[length, value] for length, value in f.pieces]


# -- P and Q on indicators --------------------------------------------------------------------------------------------


def check_pq_indicators(
    spec: SpaceSpec,
    t_grid: Sequence[float],
    c_grid: Sequence[float],
    rng: Optional[np.random.Generator] = None,
    profiles: int = 20,
    tolerance: float = PQ_TOLERANCE,
    name: str = "pq_indicators",
) -> CheckResult:
    """Compare P and Q on c·χ_(0,t), and check that random feasible v never beat Q.

    Each case also evaluates the P-objective at `profiles` random decreasing v ≺ w; Jensen's
    inequality bounds each of these values below by Q.

    Args:
        spec (SpaceSpec): M-side spec.
        t_grid (Sequence[float]): Times in (0, gamma).
        c_grid (Sequence[float]): Positive heights.
        rng (Optional[np.random.Generator]): Source of the random profiles.
        profiles (int): Random profiles per case.
        tolerance (float): Bound on |P − Q|/(1 + Q).
        name (str): Name of the result.

    Returns:
        CheckResult: Errors measured as |P − Q|/(1 + Q), Jensen violations included.
    """
    if spec.side is not Side.M:
        raise PreconditionError("P and Q are compared on M-side specs")
    rng = rng if rng is not None else stream_for(0, name)
    tally = _Tally(name, tolerance)
    solver = PModularSolver(spec)
    for t in t_grid:
        for c in c_grid:
            case = {"space": spec.describe(), "t": float(t), "c": float(c)}
            f = StepFunction.indicator(t, c, spec.kind)
            q_value = modular_q(spec, f)
            try:
                p_value = solver.solve(f).value
            except NumericalFailure as error:
                tally.fail({**case, "best_value": error.best_value}, str(error))
                continue
            if math.isinf(q_value) or math.isinf(p_value):
                tally.record({**case, "P": p_value, "Q": q_value}, *_relative(p_value, q_value))
                continue
            error = abs(p_value - q_value) / (1.0 + q_value)
            jensen = _jensen_violation(solver, f, q_value, rng, profiles)
            tally.record({**case, "P": p_value, "Q": q_value}, max(error, jensen))
    return tally.result()


def _jensen_violation(
    solver: PModularSolver, f: StepFunction, q_value: float, rng: np.random.Generator, profiles: int
) -> float:
    f_star = rearrange(f)
    edges = solver.cells(f_star)
    widths = np.diff(edges)
    centers = (edges[:-1] + edges[1:]) / 2.0
    f_cells = np.asarray(f_star(centers), dtype=float)
    caps = np.asarray(solver.spec.weight.big_w(edges[1:]), dtype=float)
    worst = 0.0
    for _ in range(profiles):
        v = random_feasible_profile(rng, edges, caps)
        value = solver.objective(f_cells, widths, v)
        worst = max(worst, (q_value - value) / (1.0 + q_value))
    return worst


def check_p_below_q(
    spec: SpaceSpec,
    rng: np.random.Generator,
    samples: int,
    tolerance: float = P_BELOW_Q_SLACK,
    name: str = "p_below_q",
) -> CheckResult:
    """P(f) <= Q(f) on random step functions, measured as max(0, P − Q)/(1 + Q).

    The cells of the discretized P contain the breakpoints of f*, so its minimum stays below Q as well.
    A solver failure fails the case.
    """
    tally = _Tally(name, tolerance)
    for _ in range(samples):
        f = random_step_function(rng, spec.domain, max_pieces=4)
        case = {"space": spec.describe(), "f": _pieces(f)}
        q_value = modular_q(spec, f)
        try:
            p_value = modular_p(spec, f).value
        except NumericalFailure as error:
            tally.fail({**case, "Q": q_value, "best_value": error.best_value}, str(error))
            continue
        if math.isinf(q_value):
            excess = 0.0
        elif math.isinf(p_value):
            excess = math.inf
        else:
            excess = max(0.0, p_value - q_value) / (1.0 + q_value)
        tally.record({**case, "P": p_value, "Q": q_value}, excess)
    return tally.result()


# -- fundamental functions --------------------------------------------------------------------------------------------


def check_fundamental_m(
    spec: SpaceSpec, t_grid: Sequence[float], tolerance: float = FUNDAMENTAL_TOLERANCE, name: str = "fundamental_m"
) -> CheckResult:
    """Closed form of ‖χ_(0,t)‖ in M_{φ,w} against Luxemburg bisection on the Q-modular.

    Q is exact on indicators, and the oracle never calls the formula under test.
    """
    tally = _Tally(name, tolerance)
    for t in t_grid:
        case = {"space": spec.describe(), "t": float(t)}
        formula = fundamental_m(spec, t)
        oracle = luxemburg_norm(lambda g: modular_q(spec, g), StepFunction.indicator(t, 1.0, spec.kind))
        tally.record({**case, "formula": formula, "oracle": oracle}, *_relative(formula, oracle))
    return tally.result()


# -- conjugates -------------------------------------------------------------------------------------------------------


def check_conjugate_involution(
    phi: ExtendedOrliczFunction,
    rng: np.random.Generator,
    grid_points: int = 100,
    young_pairs: int = 10_000,
    tolerance: float = INVOLUTION_TOLERANCE,
    name: str = "conjugate_involution",
) -> CheckResult:
    """φ** = φ on a grid (by numeric transform of φ*) and Young's inequality uv <= φ(u) + φ*(v).

    Errors on φ** are relative to max(φ(u), 1e-6); Young violations are relative to 1 + uv.
    """
    tally = _Tally(name, tolerance)
    conjugate = phi.conjugate()
    for u in np.geomspace(0.05, 5.0, grid_points):
        value = float(phi(u))
        biconjugate = numeric_conjugate(conjugate, float(u))
        difference = abs(biconjugate - value)
        case = {"phi": repr(phi), "u": float(u), "biconjugate": biconjugate}
        tally.record(case, difference, difference / max(value, 1e-6))
    u_samples = np.exp(rng.uniform(math.log(1e-2), math.log(10.0), size=young_pairs))
    v_samples = np.exp(rng.uniform(math.log(1e-2), math.log(10.0), size=young_pairs))
    bound = np.asarray(phi(u_samples), dtype=float) + np.asarray(conjugate(v_samples), dtype=float)
    slack = u_samples * v_samples - bound
    violation = np.maximum(slack, 0.0) / (1.0 + u_samples * v_samples)
    index = int(np.argmax(violation))
    tally.record(
        {"phi": repr(phi), "young_pairs": young_pairs, "u": float(u_samples[index]), "v": float(v_samples[index])},
        float(violation[index]),
    )
    tally.cases += young_pairs - 1
    return tally.result()


# -- level functions --------------------------------------------------------------------------------------------------


def check_level_indicators(
    w: Weight, t_grid: Sequence[float], tolerance: float = LEVEL_IDENTITY_TOLERANCE, name: str = "level_indicators"
) -> CheckResult:
    """(χ_(0,t))⁰ = (t·w/W(t))·χ_(0,t), compared through the ratio f⁰/w."""
    tally = _Tally(name, tolerance)
    for t in t_grid:
        level = level_function(StepFunction.indicator(t, 1.0, w.kind), w)
        expected = t / float(w.big_w(t))
        observed = float(level.ratio(t / 2.0))
        support_error = abs(level.ratio.support - t)
        difference, relative = _relative(observed, expected)
        case = {"weight": repr(w), "t": float(t)}
        tally.record(case, max(difference, support_error), max(relative, support_error / t))
    return tally.result()


def check_level_properties(
    w: Weight,
    rng: np.random.Generator,
    samples: int,
    tolerance: float = LEVEL_MASS_TOLERANCE,
    name: str = "level_properties",
) -> CheckResult:
    """Mass preservation, monotone f⁰/w and f ≺ f⁰ on random decreasing step functions."""
    tally = _Tally(name, tolerance)
    for _ in range(samples):
        f = random_step_function(rng, w.domain, decreasing=True)
        level = level_function(f, w)
        case = {"weight": repr(w), "f": _pieces(f)}
        mass = f.integral()
        errors = [abs(level.integral() - mass) / mass]
        if not is_decreasing(level.ratio):
            errors.append(math.inf)
        edges = f.edges[1:]
        shortfall = np.asarray(f.cumulative(edges)) - np.asarray(level.cumulative(edges))
        errors.append(max(0.0, float(np.max(shortfall))) / mass)
        tally.record(case, max(errors))
    return tally.result()


def least_concave_majorant_ratios(f: StepFunction, w: Weight) -> np.ndarray:
    """Level ratios on the pieces of a decreasing f from the upper convex hull of (W(Tᵢ), ∫₀^Tᵢ f).

    Independent of pooling: the least concave majorant is the minimum of the supporting lines of
    the upper hull facets.
    """
    edges = f.edges
    x = np.asarray(w.big_w(edges), dtype=float)
    y = np.asarray(f.cumulative(edges), dtype=float)
    points = np.column_stack([np.concatenate((x, [x[-1]])), np.concatenate((y, [-1.0 - y[-1]]))])
    hull = ConvexHull(points)
    upper = hull.equations[hull.equations[:, 1] > 1e-12]
    majorant = np.min(-(np.outer(x, upper[:, 0]) + upper[:, 2]) / upper[:, 1], axis=1)
    majorant[0], majorant[-1] = 0.0, y[-1]
    return np.diff(majorant) / np.diff(x)


def check_level_hull(
    w: Weight,
    rng: np.random.Generator,
    samples: int,
    tolerance: float = LEVEL_HULL_TOLERANCE,
    name: str = "level_hull",
) -> CheckResult:
    """Pooled level ratios against the least concave majorant computed by a convex hull."""
    tally = _Tally(name, tolerance)
    for _ in range(samples):
        f = random_step_function(rng, w.domain, decreasing=True)
        observed = np.asarray(level_function(f, w).ratio((f.edges[:-1] + f.edges[1:]) / 2.0), dtype=float)
        expected = least_concave_majorant_ratios(f, w)
        difference = float(np.max(np.abs(observed - expected)))
        tally.record({"weight": repr(w), "f": _pieces(f)}, difference, difference / float(np.max(expected)))
    return tally.result()


# -- norms ------------------------------------------------------------------------------------------------------------


def check_norm_axioms(
    spec: SpaceSpec,
    rng: np.random.Generator,
    samples: int,
    tol_scale: float = 1.0,
    name: str = "norm_axioms",
) -> CheckResult:
    """Homogeneity, triangle inequality, rearrangement invariance and modular monotonicity.

    Also checks orthogonal subadditivity of the modular and ‖f‖ <= ‖f‖_O <= 2‖f‖ between the
    Luxemburg and Orlicz norms. Each error is reported in units of its own tolerance (1e-10 for
    homogeneity and the modulars, 1e-8 for the inequalities between norms, zero for rearrangement
    invariance), so the check passes when the largest one is at most `tol_scale`.
    """
    tally = _Tally(name, tol_scale)
    modular = _modular(spec)
    kind = spec.kind
    for _ in range(samples):
        f = random_step_function(rng, spec.domain)
        g_pieces = random_signed_pieces(rng, spec.domain)
        g = _abs_of(g_pieces, kind)
        c = float(np.exp(rng.uniform(math.log(1e-2), math.log(1e2))))
        case = {"space": spec.describe(), "f": _pieces(f), "g": [list(piece) for piece in g_pieces], "c": c}
        norm_f, norm_g = lambda_norm(spec, f), lambda_norm(spec, g)
        errors = [_relative(lambda_norm(spec, f.scale(c)), c * norm_f)[1] / HOMOGENEITY_TOLERANCE]

        for sign in (1.0, -1.0):
            combined = lambda_norm(spec, pointwise_abs(as_signed(f), g_pieces, sign, kind))
            errors.append(max(0.0, combined - norm_f - norm_g) / (norm_f + norm_g) / TRIANGLE_SLACK)

        order = rng.permutation(len(f.pieces))
        shuffled = StepFunction.from_arrays(f.lengths[order], f.values[order], kind)
        errors.append(0.0 if lambda_norm(spec, shuffled) == norm_f else math.inf)

        smaller = StepFunction.from_arrays(f.lengths, f.values * rng.uniform(0.0, 1.0, size=f.values.size), kind)
        modular_f = modular(f)
        errors.append(max(0.0, modular(smaller) - modular_f) / (1.0 + modular_f) / HOMOGENEITY_TOLERANCE)

        if math.isinf(spec.gamma) or f.support + g.support < spec.gamma:
            joined = StepFunction.from_arrays(
                np.concatenate((f.lengths, g.lengths)), np.concatenate((f.values, g.values)), kind
            )
            both = modular_f + modular(g)
            if math.isfinite(both):
                errors.append(max(0.0, modular(joined) - both) / (1.0 + both) / HOMOGENEITY_TOLERANCE)

        orlicz = amemiya_norm_lambda(spec, f)
        errors.append(max(0.0, norm_f - orlicz, orlicz - 2.0 * norm_f) / norm_f / TRIANGLE_SLACK)
        tally.record(case, max(errors))
    return tally.result()


def check_lorentz_identity(
    w: Weight, rng: np.random.Generator, samples: int, tolerance: float = LORENTZ_TOLERANCE, name: str = "lorentz"
) -> CheckResult:
    """∫₀^∞ W(d_f(λ)) dλ against ∫ f*·w on dyadic step functions."""
    tally = _Tally(name, tolerance)
    spec = SpaceSpec(phi=LinearOrlicz(), weight=w)
    modular = _modular(spec)
    for _ in range(samples):
        count = int(rng.integers(1, 7))
        lengths = rng.integers(1, 5, size=count).astype(float)
        if math.isfinite(w.gamma):
            lengths = lengths * (w.gamma / (2.0 * float(np.sum(lengths))))
        values = rng.integers(1, 65, size=count) / 8.0
        f = StepFunction.from_arrays(lengths, values, w.kind)
        tally.record({"weight": repr(w), "f": _pieces(f)}, *_relative(lorentz_norm_distribution(w, f), modular(f)))
    return tally.result()


def check_l1_equivalence(
    spec: SpaceSpec,
    rng: np.random.Generator,
    sample_count: int,
    tolerance: float = SANDWICH_SLACK,
    name: str = "l1_equivalence",
) -> CheckResult:
    """(W(γ)/(Cγ))·‖f‖₁ <= ‖f‖ <= c·K·‖f‖₁ when φ is not an N-function at infinity and γ < ∞.

    Here K = lim φ(u)/u, c = lim W(t)/t, M = K/2, u₀ the least point past which φ(u) >= M·u and
    C = 1/M + u₀·W(γ).

    Raises:
        PreconditionError: If the spec does not satisfy these hypotheses.
    """
    phi, w = spec.phi, spec.weight
    if spec.side is not Side.LAMBDA or spec.kind is not Kind.FUNCTION:
        raise PreconditionError("The L₁ comparison is made on Λ-side function spaces")
    if math.isinf(spec.gamma):
        raise PreconditionError("The L₁ comparison needs a finite interval")
    slope = phi.slope_at_infinity
    if not math.isfinite(slope):
        raise PreconditionError(f"{phi!r} is an N-function at infinity")
    c = w.initial_value
    if not math.isfinite(c):
        raise PreconditionError(f"W(t)/t is unbounded near zero for {w!r}")

    half = slope / 2.0
    threshold = phi.linear_growth_threshold(half)
    total = float(w.big_w(spec.gamma))
    constant = 1.0 / half + threshold * total
    lower_factor = total / (constant * spec.gamma)
    upper_factor = c * slope
    logger.debug("L₁ bounds %s <= ‖f‖/‖f‖₁ <= %s for %s", lower_factor, upper_factor, spec.describe())

    tally = _Tally(name, tolerance)
    cases = [StepFunction.indicator(spec.gamma)] + [
        random_step_function(rng, spec.domain) for _ in range(max(sample_count - 1, 0))
    ]
    for f in cases:
        l1 = f.integral()
        norm = lambda_norm(spec, f)
        violation = max(0.0, lower_factor * l1 - norm, norm - upper_factor * l1) / norm
        tally.record({"space": spec.describe(), "f": _pieces(f), "norm": norm, "l1": l1}, violation)
    return tally.result()


# -- witness ----------------------------------------------------------------------------------------------------------


class NonsquareWitness(pydantic.BaseModel):
    """x = a·χ_(0,m) with ‖x‖ = 1 and the observed gap δ̂ = 2 − max min(‖x + y‖, ‖x − y‖).

    δ̂ is a sampled upper estimate of the uniform constant, not the constant itself.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    x: StepFunction
    delta_hat: float
    x_norm: float
    samples: int
    worst_y: Tuple[Tuple[float, float], ...] = ()


def nonsquare_witness(spec: SpaceSpec, a: float, sample_count: int, seed: int) -> NonsquareWitness:
    """Locally uniformly nonsquare point of Λ_{φ,w} built from a level a past the linear part of φ.

    m solves W(m) = 1/φ(a), so x = a·χ_(0,m) has modular one and norm one. Random signed step
    functions y with piece lengths and absolute values log-uniform are normalized to ‖y‖ = 1.

    Args:
        spec (SpaceSpec): Λ-side function spec with d_φ < ∞ and φ finite.
        a (float): Level above d_φ.
        sample_count (int): Number of random y.
        seed (int): Root seed of the sampling stream.

    Raises:
        PreconditionError: If φ is linear, a <= d_φ, or W(m) = 1/φ(a) has no solution below gamma.
        NumericalFailure: If ‖x‖ misses one by more than 1e-10.

    Returns:
        NonsquareWitness: The point and δ̂ > 0.
    """
    phi, w = spec.phi, spec.weight
    if spec.side is not Side.LAMBDA or spec.kind is not Kind.FUNCTION:
        raise PreconditionError("Witnesses are built in Λ-side function spaces")
    if math.isinf(phi.d):
        raise PreconditionError(f"{phi!r} is linear, no nonsquare witness exists")
    if not a > phi.d:
        raise PreconditionError(f"Level {a} must exceed d = {phi.d}")
    try:
        support = w.big_w_inverse(1.0 / float(phi(a)))
    except DomainError as error:
        raise PreconditionError(f"W(m) = 1/φ({a}) has no solution below gamma") from error
    if support >= spec.gamma:
        raise PreconditionError(f"W(m) = 1/φ({a}) has no solution below gamma")

    x = StepFunction.indicator(support, a)
    x_norm = lambda_norm(spec, x)
    if abs(x_norm - 1.0) > WITNESS_NORM_TOLERANCE:
        raise NumericalFailure(f"Witness has norm {x_norm}, expected 1", best_value=x_norm)

    rng = stream_for(seed, "nonsquare_witness")
    x_pieces = as_signed(x)
    best = 0.0
    worst_y: Tuple[Tuple[float, float], ...] = ()
    for _ in range(sample_count):
        raw = random_signed_pieces(rng, spec.domain)
        scale = lambda_norm(spec, _abs_of(raw, Kind.FUNCTION))
        y = [(length, value / scale) for length, value in raw]
        plus = lambda_norm(spec, pointwise_abs(x_pieces, y, 1.0))
        minus = lambda_norm(spec, pointwise_abs(x_pieces, y, -1.0))
        if min(plus, minus) > best:
            best, worst_y = min(plus, minus), tuple(y)
    delta_hat = 2.0 - best
    logger.info("Nonsquare witness at a = %s: δ̂ = %s over %d samples", a, delta_hat, sample_count)
    return NonsquareWitness(x=x, delta_hat=delta_hat, x_norm=x_norm, samples=sample_count, worst_y=worst_y)


def check_witness(
    spec: SpaceSpec, a: float, sample_count: int, seed: int, name: str = "nonsquare_witness"
) -> CheckResult:
    """δ̂ > 0, ‖x‖ = 1 and σ < 1 on [a, a]; the error is the distance of ‖x‖ to one."""
    tally = _Tally(name, WITNESS_NORM_TOLERANCE, CheckMode.ABSOLUTE)
    case: Dict[str, Any] = {"space": spec.describe(), "a": a, "samples": sample_count}
    try:
        witness = nonsquare_witness(spec, a, sample_count, seed)
        sigma = spec.phi.sigma_on_interval(a, a)
    except (NumericalFailure, PreconditionError) as error:
        tally.fail(case, str(error))
        return tally.result()
    error = abs(witness.x_norm - 1.0)
    if not witness.delta_hat > 0:
        error = math.inf
    tally.record({**case, "delta_hat": witness.delta_hat, "sigma": sigma}, error)
    return tally.result()


# -- classifier -------------------------------------------------------------------------------------------------------

EXPECTED_CLASSIFICATIONS = "classifier_expected.json"


class ExpectedClassification(pydantic.BaseModel):
    """Hand-derived verdicts for one space of the regression table.

    Properties missing from `expected` are not compared. `noted` lists the properties whose
    entries must carry a note.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    label: str
    config: Dict[str, Any]
    expected: Dict[Property, Verdict]
    noted: Tuple[Property, ...] = ()

    def build(self) -> SpaceSpec:
        return parse_spec(self.config)


_EXPECTED_TABLE = pydantic.TypeAdapter(List[ExpectedClassification])


@functools.lru_cache(maxsize=None)
def expected_classifications() -> Tuple[ExpectedClassification, ...]:
    """The regression table shipped in `olspace/data`."""
    raw = (resources.files("olspace") / "data" / EXPECTED_CLASSIFICATIONS).read_text(encoding="utf-8")
    return tuple(_EXPECTED_TABLE.validate_json(raw))


def regression_specs() -> List[Tuple[str, SpaceSpec]]:
    """Spaces crossing the built-in Orlicz functions with weights and domains."""
    return [(row.label, row.build()) for row in expected_classifications()]


def regression_expectations() -> Dict[str, Dict[Property, Verdict]]:
    return {row.label: dict(row.expected) for row in expected_classifications()}


def check_classifier(
    specs: Sequence[Tuple[str, SpaceSpec]],
    name: str = "classifier",
    expected: Optional[Mapping[str, Mapping[Property, Verdict]]] = None,
) -> CheckResult:
    """Every report is consistent and matches the expected verdicts, property by property.

    Also checks that the diameter-two verdicts flip with Δ₂ between e^u − 1 and u². Each
    compared property counts as one case; a mismatch fails it.
    """
    tally = _Tally(name, 0.0, CheckMode.ABSOLUTE)
    expected = expected or {}
    for label, spec in specs:
        try:
            report = classify(spec)
        except InconsistentReportError as error:
            tally.fail({"space": label}, str(error))
            continue
        tally.record({"space": label}, 0.0)
        for prop, verdict in expected.get(label, {}).items():
            actual = report.verdict(prop)
            case = {"space": label, "property": prop.value, "expected": verdict.value, "actual": actual.value}
            if actual is verdict:
                tally.record(case, 0.0)
            else:
                tally.fail(case, f"{prop.value} is {actual.value}, expected {verdict.value}")
    exponential = classify(SpaceSpec(phi=ExpMinusOneOrlicz(), weight=ConstantWeight()))
    square = classify(SpaceSpec(phi=PowerOrlicz(2), weight=ConstantWeight()))
    flipped = exponential.verdict(Property.SD2P) is Verdict.HOLDS and square.verdict(Property.SD2P) is Verdict.FAILS
    tally.record({"space": "Δ₂ flip e^u-1 vs u^2"}, 0.0 if flipped else 1.0)
    return tally.result()


# -- suites -----------------------------------------------------------------------------------------------------------

Job = Callable[[np.random.Generator], CheckResult]


def dual_specs() -> List[Tuple[str, SpaceSpec]]:
    """M-side spaces of the conjugates of u², u, e^u − 1 and the power-linear splice."""
    return [
        ("u^2*, w=1", SpaceSpec(phi=PowerOrlicz(2), weight=ConstantWeight()).dual()),
        ("u*, w=1", SpaceSpec(phi=LinearOrlicz(), weight=ConstantWeight()).dual()),
        ("(e^u-1)*, w=t^-1/2", SpaceSpec(phi=ExpMinusOneOrlicz(), weight=PowerDecayWeight(0.5)).dual()),
        (
            "(power-linear splice)*, w=t^-1/2",
            SpaceSpec(phi=PowerSpliceLinearOrlicz(1.0, 2.0), weight=PowerDecayWeight(0.5)).dual(),
        ),
    ]


def parametric_functions() -> List[ExtendedOrliczFunction]:
    return [
        PowerOrlicz(2),
        PowerOrlicz(3),
        PowerOrlicz(1.5, k=2.0),
        LinearOrlicz(),
        ExpMinusOneOrlicz(),
        LinearSplicePowerOrlicz(1.0, 2.0),
        PowerSpliceLinearOrlicz(1.0, 2.0),
        ShiftedPowerOrlicz(1.0, 2.0),
    ]


def level_weights() -> List[Weight]:
    return [PowerDecayWeight(0.5), ExpPlusConstWeight(1.0, 0.5)]


def lorentz_weights() -> List[Weight]:
    return [ConstantWeight(), TabulatedWeight([(1.0, 2.0), (2.0, 1.0), (1.0, 0.5)])]


def axiom_specs() -> List[Tuple[str, SpaceSpec]]:
    sequence = Domain(kind=Kind.SEQUENCE)
    return [
        ("u^2, w=1", SpaceSpec(phi=PowerOrlicz(2), weight=ConstantWeight())),
        ("e^u-1, w=t^-1/2", SpaceSpec(phi=ExpMinusOneOrlicz(), weight=PowerDecayWeight(0.5))),
        (
            "linear-power splice, e^-t, gamma=4",
            SpaceSpec(phi=LinearSplicePowerOrlicz(1.0, 2.0), weight=ExpPlusConstWeight(1.0, domain=Domain(gamma=4.0))),
        ),
        (
            "tabulated phi, w=1",
            SpaceSpec(phi=TabulatedOrlicz([(1.0, 0.5), (2.0, 2.0), (3.0, 4.5)]), weight=ConstantWeight()),
        ),
        ("u^1.5, sequence", SpaceSpec(phi=PowerOrlicz(1.5), weight=PowerDecayWeight(0.5, domain=sequence))),
    ]


def sandwich_specs() -> List[Tuple[str, SpaceSpec]]:
    unit = Domain(gamma=1.0)
    return [
        ("u, w=1, gamma=1", SpaceSpec(phi=LinearOrlicz(), weight=ConstantWeight(domain=unit))),
        (
            "power-linear splice, w=1, gamma=1",
            SpaceSpec(phi=PowerSpliceLinearOrlicz(1.0, 2.0), weight=ConstantWeight(domain=unit)),
        ),
        (
            "power-linear splice, tabulated w, gamma=1",
            SpaceSpec(phi=PowerSpliceLinearOrlicz(1.0, 2.0), weight=TabulatedWeight([(1.0, 2.0)], domain=unit)),
        ),
    ]


def witness_specs() -> List[Tuple[str, SpaceSpec]]:
    return [
        ("u^2, w=1", SpaceSpec(phi=PowerOrlicz(2), weight=ConstantWeight())),
        ("u^3, w=t^-1/2", SpaceSpec(phi=PowerOrlicz(3), weight=PowerDecayWeight(0.5))),
    ]


def _with_rng(check: Callable[..., CheckResult], *args: Any, **kwargs: Any) -> Job:
    return lambda rng: check(*args, rng=rng, **kwargs)


def _without_rng(check: Callable[..., CheckResult], *args: Any, **kwargs: Any) -> Job:
    return lambda rng: check(*args, **kwargs)


def _suite_jobs(suite: Suite, seed: int, budget: float, tol_scale: float) -> List[Tuple[str, Job]]:
    jobs: List[Tuple[str, Job]] = []
    included = {item for item in Suite if suite in (Suite.ALL, item)}

    if Suite.PQ in included:
        grid = np.geomspace(0.1, 10.0, _scaled(10, budget, minimum=2))
        for label, spec in dual_specs():
            name = f"pq_indicators[{label}]"
            job = _with_rng(check_pq_indicators, spec, grid, grid, tolerance=PQ_TOLERANCE * tol_scale, name=name)
            jobs.append((name, job))
        for label, spec in dual_specs():
            name = f"p_below_q[{label}]"
            samples = _scaled(20, budget)
            job = _with_rng(check_p_below_q, spec, samples=samples, tolerance=P_BELOW_Q_SLACK * tol_scale, name=name)
            jobs.append((name, job))
    if Suite.FUNDAMENTAL in included:
        t_grid = np.geomspace(1e-2, 1e2, _scaled(50, budget, minimum=2))
        for label, spec in dual_specs():
            name = f"fundamental_m[{label}]"
            job = _without_rng(check_fundamental_m, spec, t_grid, FUNDAMENTAL_TOLERANCE * tol_scale, name)
            jobs.append((name, job))
    if Suite.CONJUGATE in included:
        for phi in parametric_functions():
            name = f"conjugate_involution[{phi!r}]"
            job = _with_rng(
                check_conjugate_involution,
                phi,
                grid_points=_scaled(100, budget, minimum=2),
                young_pairs=_scaled(10_000, budget),
                tolerance=INVOLUTION_TOLERANCE * tol_scale,
                name=name,
            )
            jobs.append((name, job))
    if Suite.LEVEL in included:
        t_grid = np.geomspace(1e-2, 1e2, _scaled(20, budget, minimum=2))
        for w in level_weights():
            name = f"level_indicators[{w!r}]"
            job = _without_rng(check_level_indicators, w, t_grid, LEVEL_IDENTITY_TOLERANCE * tol_scale, name)
            jobs.append((name, job))
            name = f"level_properties[{w!r}]"
            job = _with_rng(
                check_level_properties,
                w,
                samples=_scaled(1000, budget),
                tolerance=LEVEL_MASS_TOLERANCE * tol_scale,
                name=name,
            )
            jobs.append((name, job))
            name = f"level_hull[{w!r}]"
            job = _with_rng(
                check_level_hull, w, samples=_scaled(200, budget), tolerance=LEVEL_HULL_TOLERANCE * tol_scale, name=name
            )
            jobs.append((name, job))
    if Suite.NORMS in included:
        for label, spec in axiom_specs():
            name = f"norm_axioms[{label}]"
            job = _with_rng(check_norm_axioms, spec, samples=_scaled(200, budget), tol_scale=tol_scale, name=name)
            jobs.append((name, job))
    if Suite.LORENTZ in included:
        for w in lorentz_weights():
            name = f"lorentz[{w!r}]"
            job = _with_rng(
                check_lorentz_identity,
                w,
                samples=_scaled(200, budget),
                tolerance=LORENTZ_TOLERANCE * tol_scale,
                name=name,
            )
            jobs.append((name, job))
    if Suite.L1 in included:
        for label, spec in sandwich_specs():
            name = f"l1_equivalence[{label}]"
            job = _with_rng(
                check_l1_equivalence,
                spec,
                sample_count=_scaled(500, budget),
                tolerance=SANDWICH_SLACK * tol_scale,
                name=name,
            )
            jobs.append((name, job))
    if Suite.WITNESS in included:
        for label, spec in witness_specs():
            name = f"nonsquare_witness[{label}]"
            jobs.append((name, _without_rng(check_witness, spec, 1.0, _scaled(10_000, budget), seed, name)))
    if Suite.CLASSIFIER in included:
        job = _without_rng(check_classifier, regression_specs(), expected=regression_expectations())
        jobs.append(("classifier", job))
    return jobs


def _custom_jobs(spec: SpaceSpec, budget: float, tol_scale: float) -> List[Tuple[str, Job]]:
    """Checks that apply to a user supplied space."""
    label = spec.describe()
    name = f"classifier[{label}]"
    jobs: List[Tuple[str, Job]] = [(name, _without_rng(check_classifier, [(label, spec)], name))]
    if spec.side is Side.LAMBDA:
        name = f"norm_axioms[{label}]"
        job = _with_rng(check_norm_axioms, spec, samples=_scaled(200, budget), tol_scale=tol_scale, name=name)
        jobs.append((name, job))
    dual = spec.dual() if spec.side is Side.LAMBDA else spec
    if dual.kind is Kind.FUNCTION:
        upper = 1e2 if math.isinf(dual.gamma) else 0.9 * dual.gamma
        t_grid = np.geomspace(1e-4 * upper, upper, _scaled(50, budget, minimum=2))
        name = f"fundamental_m[{dual.describe()}]"
        jobs.append((name, _without_rng(check_fundamental_m, dual, t_grid, FUNDAMENTAL_TOLERANCE * tol_scale, name)))
    return jobs


def run_suite(
    suite: str = "all",
    seed: int = 42,
    budget: float = 1.0,
    tol_scale: float = 1.0,
    jobs: int = 1,
    spec: Optional[SpaceSpec] = None,
) -> SuiteReport:
    """Run a suite of checks and collect their results in a fixed order.

    Args:
        suite (str): One of the `Suite` values.
        seed (int): Root seed; each check owns a stream derived from it and its name.
        budget (float): Multiplier on case counts.
        tol_scale (float): Multiplier on tolerances.
        jobs (int): Worker threads; never changes the results.
        spec (Optional[SpaceSpec]): Additional space to run the applicable checks on.

    Raises:
        DomainError: If the suite name is unknown or budget, tol_scale or jobs are not positive.

    Returns:
        SuiteReport: One result per check.
    """
    try:
        selected = Suite(suite)
    except ValueError as error:
        names = ", ".join(item.value for item in Suite)
        raise DomainError(f"Unknown suite {suite!r}, expected one of {names}") from error
    if not budget > 0 or not tol_scale > 0 or jobs < 1:
        raise DomainError("budget and tol_scale must be positive and jobs at least one")

    planned = _suite_jobs(selected, seed, budget, tol_scale)
    if spec is not None:
        planned.extend(_custom_jobs(spec, budget, tol_scale))
    logger.info("Running %d checks of suite %s with seed %d", len(planned), selected.value, seed)

    def execute(item: Tuple[str, Job]) -> CheckResult:
        name, job = item
        result = job(stream_for(seed, name))
        logger.info("%s: %s (%d cases)", name, "passed" if result.passed else "FAILED", result.cases_run)
        return result

    if jobs == 1:
        results = [execute(item) for item in planned]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(execute, planned))
    return SuiteReport(suite=selected.value, seed=seed, budget=budget, tol_scale=tol_scale, results=tuple(results))
