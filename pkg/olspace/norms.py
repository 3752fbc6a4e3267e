"""Modulars, Luxemburg and Orlicz (Amemiya) norms, and fundamental functions."""

import logging
import math
import warnings
from typing import Callable, Tuple

import numpy as np
from scipy import optimize

from olspace.domain import Kind
from olspace.exceptions import ConvergenceWarning, DomainError, NumericalFailure, PreconditionError
from olspace.modular_p import modular_p
from olspace.orlicz import ExtendedOrliczFunction
from olspace.rearrangement import StepFunction, level_function, rearrange
from olspace.spaces import Side, SpaceSpec
from olspace.weights import Weight

logger = logging.getLogger(__name__)

LUXEMBURG_RTOL = 1e-13
AMEMIYA_SCAN = range(-60, 61)
EDGE_BISECTIONS = 80

Modular = Callable[[StepFunction], float]
ScaledModular = Callable[[float], float]


def big_w(w: Weight, t: float) -> float:
    """W(t) = ∫₀ᵗ w."""
    return float(w.big_w(t))


def _require_side(spec: SpaceSpec, side: Side) -> None:
    if spec.side is not side:
        raise PreconditionError(f"Operation needs a {side.value}-side spec, got {spec.side.value}")


def _weighted_sum(phi: ExtendedOrliczFunction, values: np.ndarray, masses: np.ndarray) -> float:
    if values.size == 0:
        return 0.0
    terms = np.asarray(phi(values), dtype=float)
    if np.any(np.isinf(terms)):
        return math.inf
    return float(np.sum(terms * masses))


def _rearranged_profile(spec: SpaceSpec, f: StepFunction) -> Tuple[np.ndarray, np.ndarray]:
    """Values of f* and the W-masses of its pieces."""
    f.check_domain(spec.domain)
    f_star = rearrange(f)
    masses = np.diff(np.asarray(spec.weight.big_w(f_star.edges), dtype=float))
    return f_star.values, masses


def _level_profile(spec: SpaceSpec, f: StepFunction) -> Tuple[np.ndarray, np.ndarray]:
    """Values of (f*)⁰/w and the W-masses of its pieces."""
    f.check_domain(spec.domain)
    level = level_function(rearrange(f), spec.weight)
    return level.ratio.values, level.masses


def _lambda_modular(spec: SpaceSpec, f: StepFunction) -> float:
    _require_side(spec, Side.LAMBDA)
    values, masses = _rearranged_profile(spec, f)
    return _weighted_sum(spec.phi, values, masses)


def modular_rho(spec: SpaceSpec, f: StepFunction) -> float:
    """ρ_{φ,w}(f) = ∫ φ(f*)·w as an exact sum over the pieces of f*.

    Raises:
        PreconditionError: If the spec is not a Λ-side function space.
    """
    if spec.kind is not Kind.FUNCTION:
        raise PreconditionError("ρ is the modular of function spaces, use modular_alpha for sequences")
    return _lambda_modular(spec, f)


def modular_alpha(spec: SpaceSpec, x: StepFunction) -> float:
    """α_{φ,w}(x) = Σ φ(x*(i))·w(i).

    Raises:
        PreconditionError: If the spec is not a Λ-side sequence space.
    """
    if spec.kind is not Kind.SEQUENCE:
        raise PreconditionError("α is the modular of sequence spaces, use modular_rho for functions")
    return _lambda_modular(spec, x)


def modular_q(spec: SpaceSpec, f: StepFunction) -> float:
    """Q_{φ,w}(f) = ∫ φ((f*)⁰/w)·w, ∞ when (f*)⁰/w exceeds the domain of φ."""
    _require_side(spec, Side.M)
    values, masses = _level_profile(spec, f)
    return _weighted_sum(spec.phi, values, masses)


def _excess(modular_at: ScaledModular, epsilon: float) -> float:
    return min(modular_at(1.0 / epsilon), 2.0) - 1.0


def _luxemburg(modular_at: ScaledModular, rtol: float = LUXEMBURG_RTOL) -> float:
    """inf{ε > 0 : modular(f/ε) <= 1} given s ↦ modular(s·f)."""
    lower = upper = 1.0
    if _excess(modular_at, 1.0) > 0:
        # doubling overflows to ∞ after finitely many steps
        while _excess(modular_at, upper) > 0:
            upper *= 2.0
            if math.isinf(upper):
                logger.debug("Modular stays above one at every scale")
                return math.inf
        lower = upper / 2.0
    else:
        while _excess(modular_at, lower) <= 0:
            lower /= 2.0
            if lower == 0:
                return 0.0
        upper = lower * 2.0
    root = optimize.bisect(lambda eps: _excess(modular_at, eps), lower, upper, xtol=1e-300, rtol=rtol, maxiter=400)
    return float(root)


def luxemburg_norm(modular: Modular, f: StepFunction, rtol: float = LUXEMBURG_RTOL) -> float:
    """Luxemburg norm inf{ε > 0 : modular(f/ε) <= 1}.

    Bisection on ε over the monotone map ε ↦ modular(f/ε) after bracketing by doubling or halving
    from ε = 1; an infinite modular counts as exceeding one.

    Args:
        modular (Modular): Modular evaluated on step functions.
        f (StepFunction): Function to measure.
        rtol (float): Relative tolerance of the bisection.

    Returns:
        float: The norm, 0 for f = 0 and ∞ when the modular is infinite at every scale.
    """
    if f.is_zero:
        return 0.0
    return _luxemburg(lambda scale: modular(f.scale(scale)), rtol)


def lambda_norm(spec: SpaceSpec, f: StepFunction) -> float:
    """Luxemburg norm of Λ_{φ,w} (or λ_{φ,w}) with the rearrangement computed once."""
    _require_side(spec, Side.LAMBDA)
    if f.is_zero:
        return 0.0
    values, masses = _rearranged_profile(spec, f)
    return _luxemburg(lambda scale: _weighted_sum(spec.phi, scale * values, masses))


def m_norm(spec: SpaceSpec, f: StepFunction, n_panels: int = 32) -> float:
    """Luxemburg norm of M_{φ,w} through Q.

    P and Q induce the same Luxemburg norm for every Orlicz function, so the level profile is
    computed once and scaled. `n_panels` is kept for call sites that pass a discretization.
    """
    _require_side(spec, Side.M)
    if f.is_zero:
        return 0.0
    values, masses = _level_profile(spec, f)
    return _luxemburg(lambda scale: _weighted_sum(spec.phi, scale * values, masses))


def _amemiya(modular_at: ScaledModular) -> float:
    """inf over k > 0 of (1 + modular(k·f))/k for a convex map k ↦ modular(k·f)."""

    def objective(k: float) -> float:
        value = modular_at(k)
        return (1.0 + value) / k if math.isfinite(value) else math.inf

    best_k, best = math.nan, math.inf
    last_finite, first_infinite = math.nan, math.nan
    for exponent in AMEMIYA_SCAN:
        k = 2.0**exponent
        value = objective(k)
        if math.isinf(value):
            first_infinite = k
            break
        last_finite = k
        if value < best:
            best, best_k = value, k
        elif value > best:
            break
    if math.isnan(best_k):
        return math.inf

    upper = 2.0 * best_k
    if best_k == last_finite and not math.isnan(first_infinite):
        # the minimum sits at the end of the finiteness domain
        inside, outside = last_finite, first_infinite
        for _ in range(EDGE_BISECTIONS):
            middle = (inside + outside) / 2.0
            if math.isfinite(objective(middle)):
                inside = middle
            else:
                outside = middle
        upper = inside
    lower = best_k / 2.0
    refined = optimize.minimize_scalar(
        objective, bounds=(lower, upper), method="bounded", options={"xatol": 1e-12 * upper}
    )
    candidates = [best, objective(upper)]
    if math.isfinite(refined.fun):
        candidates.append(float(refined.fun))
    return min(candidates)


def orlicz_amemiya_norm(spec: SpaceSpec, f: StepFunction, n_panels: int = 32) -> float:
    """Orlicz (Amemiya) norm inf_k (1 + P(kf))/k on M_{φ,w}.

    Q replaces P when φ is an N-function; the level function is positively homogeneous, so Q(kf)
    is a weighted sum over a single level profile. When the P solver does not converge the norm
    is taken through Q, which induces the same Orlicz norm, and a ConvergenceWarning is issued.
    """
    _require_side(spec, Side.M)
    if f.is_zero:
        return 0.0
    values, masses = _level_profile(spec, f)
    through_q = _amemiya(lambda k: _weighted_sum(spec.phi, k * values, masses))
    if spec.phi.is_n_function:
        return through_q
    try:
        return _amemiya(lambda k: modular_p(spec, f.scale(k), n_panels).value)
    except NumericalFailure as error:
        warnings.warn(f"P-modular failed ({error}), Orlicz norm taken through Q", ConvergenceWarning)
        return through_q


def amemiya_norm_lambda(spec: SpaceSpec, f: StepFunction) -> float:
    """Orlicz (Amemiya) norm inf_k (1 + ρ(kf))/k on Λ_{φ,w}."""
    _require_side(spec, Side.LAMBDA)
    if f.is_zero:
        return 0.0
    values, masses = _rearranged_profile(spec, f)
    return _amemiya(lambda k: _weighted_sum(spec.phi, k * values, masses))


def _check_time(spec: SpaceSpec, t: float) -> None:
    if not t > 0:
        raise DomainError(f"Fundamental functions are evaluated at t > 0, got {t}")
    if t >= spec.gamma:
        raise DomainError(f"Time {t} is not below gamma = {spec.gamma}")


def fundamental_lambda(spec: SpaceSpec, t: float) -> float:
    """‖χ_(0,t)‖ in Λ_{φ,w}: 1/φ⁻¹(1/W(t))."""
    _require_side(spec, Side.LAMBDA)
    _check_time(spec, t)
    return 1.0 / spec.phi.inverse_upper(1.0 / big_w(spec.weight, t))


def fundamental_m(spec: SpaceSpec, t: float) -> float:
    """‖χ_(0,t)‖ in M_{φ,w}: (t/W(t))/φ⁻¹(1/W(t)) with the inverse taken on (a, b]."""
    _require_side(spec, Side.M)
    _check_time(spec, t)
    primitive = big_w(spec.weight, t)
    return (t / primitive) / spec.phi.inverse_upper(1.0 / primitive)


def lorentz_norm_distribution(w: Weight, f: StepFunction) -> float:
    """‖f‖ in Λ_{1,w} as ∫₀^∞ W(d_f(λ)) dλ, a finite sum over the levels of f*."""
    f.check_domain(w.domain)
    f_star = rearrange(f)
    if f_star.is_zero:
        return 0.0
    values = f_star.values
    drops = values - np.concatenate((values[1:], [0.0]))
    return float(np.sum(np.asarray(w.big_w(f_star.edges[1:]), dtype=float) * drops))
