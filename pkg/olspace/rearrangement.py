"""Step functions and sequences: distributions, decreasing rearrangements and level functions."""

import csv
import logging
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Tuple, Union

import numpy as np
import pydantic
from numpy.typing import ArrayLike
from scipy import optimize

from olspace.domain import Domain, Kind
from olspace.exceptions import DomainError, PreconditionError
from olspace.weights import Weight

logger = logging.getLogger(__name__)

__all__ = [
    "Domain",
    "Kind",
    "LevelFunction",
    "StepFunction",
    "as_signed",
    "distribution",
    "is_decreasing",
    "level_function",
    "pointwise_abs",
    "rearrange",
    "submajorizes",
]

SUBMAJORIZATION_RTOL = 1e-12

Piece = Tuple[float, float]
SignedPieces = Sequence[Tuple[float, float]]


def _canonical_arrays(lengths: np.ndarray, values: np.ndarray, kind: Kind) -> Tuple[np.ndarray, np.ndarray]:
    if lengths.shape != values.shape or lengths.ndim != 1:
        raise ValueError("Lengths and values must be one-dimensional arrays of equal size")
    if not (np.all(np.isfinite(lengths)) and np.all(np.isfinite(values))):
        raise ValueError("Lengths and values must be finite")
    if np.any(lengths <= 0):
        raise ValueError("Piece lengths must be positive")
    if np.any(values < 0):
        raise ValueError("Piece values must be nonnegative")
    if kind is Kind.SEQUENCE and np.any(lengths != np.round(lengths)):
        raise ValueError("Sequence pieces must have integer lengths")
    if values.size == 0:
        return lengths, values
    starts = np.flatnonzero(np.concatenate(([True], values[1:] != values[:-1])))
    lengths = np.add.reduceat(lengths, starts)
    values = values[starts]
    nonzero = np.flatnonzero(values > 0)
    keep = nonzero[-1] + 1 if nonzero.size else 0
    return lengths[:keep], values[:keep]


class StepFunction(pydantic.BaseModel):
    """Nonnegative function taking the value vᵢ on consecutive intervals of length ℓᵢ, zero beyond.

    The representation is canonical: equal adjacent values are merged and trailing zeros are dropped.
    For sequences the lengths are positive integers.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    pieces: Tuple[Tuple[float, float], ...] = ()
    kind: Kind = Kind.FUNCTION

    @pydantic.model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        kind = Kind(data.get("kind", Kind.FUNCTION))
        table = np.asarray(list(data.get("pieces", ())), dtype=float).reshape(-1, 2)
        lengths, values = _canonical_arrays(table[:, 0], table[:, 1], kind)
        return {**data, "kind": kind, "pieces": tuple(zip(lengths.tolist(), values.tolist()))}

    @classmethod
    def from_arrays(cls, lengths: ArrayLike, values: ArrayLike, kind: Kind = Kind.FUNCTION) -> "StepFunction":
        """Build from parallel arrays of lengths and values."""
        canonical_lengths, canonical_values = _canonical_arrays(
            np.asarray(lengths, dtype=float), np.asarray(values, dtype=float), kind
        )
        pieces = tuple(zip(canonical_lengths.tolist(), canonical_values.tolist()))
        return cls.model_construct(pieces=pieces, kind=kind)

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "StepFunction":
        """Sequence x(1), x(2), ... with finitely many terms."""
        terms = np.asarray(list(values), dtype=float)
        return cls.from_arrays(np.ones_like(terms), terms, Kind.SEQUENCE)

    @classmethod
    def indicator(cls, t: float, c: float = 1.0, kind: Kind = Kind.FUNCTION) -> "StepFunction":
        """c·χ_(0,t)."""
        return cls.from_arrays([t], [c], kind)

    @classmethod
    def from_csv(cls, path: Union[str, Path], kind: Kind = Kind.FUNCTION) -> "StepFunction":
        """Read pieces from a CSV file with columns `length` and `value`."""
        with Path(path).open(newline="", encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        try:
            lengths = [float(row["length"]) for row in rows]
            values = [float(row["value"]) for row in rows]
        except KeyError as error:
            raise ValueError(f"CSV file {path} needs the columns length and value") from error
        return cls.from_arrays(lengths, values, kind)

    @property
    def lengths(self) -> np.ndarray:
        return np.array([length for length, _ in self.pieces], dtype=float)

    @property
    def values(self) -> np.ndarray:
        return np.array([value for _, value in self.pieces], dtype=float)

    @property
    def edges(self) -> np.ndarray:
        """Cumulative piece boundaries 0 = T₀ < T₁ < ... < Tₙ."""
        return np.concatenate(([0.0], np.cumsum(self.lengths)))

    @property
    def support(self) -> float:
        """Measure of the (canonical) support window."""
        return float(np.sum(self.lengths))

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def max_value(self) -> float:
        return float(np.max(self.values)) if self.pieces else 0.0

    def __call__(self, t: ArrayLike) -> Union[float, np.ndarray]:
        """Value on the half-open piece [Tᵢ₋₁, Tᵢ) containing t, zero beyond the support."""
        t_arr = np.asarray(t, dtype=float)
        index = np.searchsorted(self.edges, t_arr, side="right") - 1
        padded = np.concatenate((self.values, [0.0]))
        out = padded[np.clip(index, 0, padded.size - 1)]
        out = np.where((t_arr < 0) | (index >= len(self.pieces)), 0.0, out)
        return float(out) if out.ndim == 0 else out

    def scale(self, factor: float) -> "StepFunction":
        """factor·f for factor >= 0."""
        if factor < 0:
            raise DomainError(f"Step functions are nonnegative, cannot scale by {factor}")
        return StepFunction.from_arrays(self.lengths, self.values * factor, self.kind)

    def cumulative(self, t: ArrayLike) -> Union[float, np.ndarray]:
        """∫₀ᵗ f, piecewise linear in t."""
        integrals = np.concatenate(([0.0], np.cumsum(self.lengths * self.values)))
        out = np.interp(np.asarray(t, dtype=float), self.edges, integrals)
        return float(out) if np.ndim(out) == 0 else out

    def integral(self) -> float:
        return float(np.sum(self.lengths * self.values))

    def check_domain(self, domain: Domain) -> None:
        """Raise unless the function lives on `domain`."""
        if self.kind is not domain.kind:
            raise PreconditionError(f"A {self.kind.value} cannot be used on a {domain.kind.value} domain")
        if self.support > domain.gamma * (1 + 1e-14):
            raise DomainError(f"Support {self.support} exceeds gamma = {domain.gamma}")


def distribution(f: StepFunction, level: float) -> float:
    """d_f(λ): measure of the set where f exceeds λ.

    Raises:
        DomainError: If λ is negative.
    """
    if level < 0:
        raise DomainError(f"Distribution function is defined for λ >= 0, got {level}")
    values = f.values
    return float(np.sum(f.lengths[values > level]))


def rearrange(f: StepFunction) -> StepFunction:
    """Decreasing rearrangement f*, equimeasurable with f."""
    order = np.argsort(-f.values, kind="stable")
    return StepFunction.from_arrays(f.lengths[order], f.values[order], f.kind)


def is_decreasing(f: StepFunction) -> bool:
    return bool(np.all(np.diff(f.values) <= 0))


def submajorizes(g: StepFunction, f: StepFunction) -> bool:
    """Whether f ≺ g, i.e. ∫₀ᵗ f* <= ∫₀ᵗ g* for every t > 0.

    Both cumulative integrals are piecewise linear, so comparing them at the breakpoints of both
    (and at infinity) is exact.

    Raises:
        PreconditionError: If `f` and `g` live on different kinds of domain.
    """
    if f.kind is not g.kind:
        raise PreconditionError("Submajorization compares functions on the same domain")
    f_star, g_star = rearrange(f), rearrange(g)
    breakpoints = np.union1d(f_star.edges, g_star.edges)
    f_cumulative = np.asarray(f_star.cumulative(breakpoints))
    g_cumulative = np.asarray(g_star.cumulative(breakpoints))
    slack = SUBMAJORIZATION_RTOL * np.maximum(1.0, np.abs(g_cumulative))
    return bool(np.all(f_cumulative <= g_cumulative + slack))


class LevelFunction(pydantic.BaseModel):
    """Level function f⁰ of a decreasing step function with respect to a weight.

    It is stored as the step function f⁰/w together with w; on each piece of `ratio`, f⁰
    integrates to the ratio value times the W-mass of the piece.
    """

    model_config = pydantic.ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ratio: StepFunction
    weight: Weight

    @property
    def masses(self) -> np.ndarray:
        """W-measure W(Tᵢ) − W(Tᵢ₋₁) of each piece of the ratio."""
        return np.diff(np.asarray(self.weight.big_w(self.ratio.edges), dtype=float))

    def __call__(self, t: ArrayLike) -> Union[float, np.ndarray]:
        t_arr = np.asarray(t, dtype=float)
        inside = np.minimum(t_arr, self.weight.gamma)
        out = np.asarray(self.ratio(t_arr)) * np.asarray(self.weight(inside))
        return float(out) if out.ndim == 0 else out

    def cumulative(self, t: ArrayLike) -> Union[float, np.ndarray]:
        """∫₀ᵗ f⁰."""
        t_arr = np.asarray(t, dtype=float)
        edges = self.ratio.edges
        clipped = np.minimum.outer(np.atleast_1d(t_arr), edges)
        primitive = np.asarray(self.weight.big_w(clipped), dtype=float)
        out = np.diff(primitive, axis=1) @ self.ratio.values if self.ratio.pieces else np.zeros(clipped.shape[0])
        return float(out[0]) if t_arr.ndim == 0 else out

    def integral(self) -> float:
        return float(np.sum(self.ratio.values * self.masses))


def level_function(f: StepFunction, w: Weight) -> LevelFunction:
    """Level function of a decreasing step function with respect to `w`.

    f⁰ is the W-derivative of the least concave majorant of t ↦ ∫₀ᵗ f seen as a function of
    W(t), multiplied back by w. For step functions it is computed by pooling adjacent violators
    of the ratios (∫ f)/(∫ w) over the pieces, weighted by ∫ w.

    Args:
        f (StepFunction): Decreasing step function with support inside the domain of `w`.
        w (Weight): Weight on the same domain.

    Raises:
        PreconditionError: If `f` is not decreasing or lives on another kind of domain.

    Returns:
        LevelFunction: f⁰ represented through the decreasing step function f⁰/w.
    """
    if not is_decreasing(f):
        raise PreconditionError("Level functions are taken of decreasing functions, rearrange first")
    f.check_domain(w.domain)
    if f.is_zero:
        return LevelFunction(ratio=f, weight=w)
    masses = np.diff(np.asarray(w.big_w(f.edges), dtype=float))
    ratios = f.lengths * f.values / masses
    pooled = optimize.isotonic_regression(ratios, weights=masses, increasing=False).x
    logger.debug("Level function pooled %d pieces into %d levels", ratios.size, np.unique(pooled).size)
    return LevelFunction(ratio=StepFunction.from_arrays(f.lengths, pooled, f.kind), weight=w)


def _signed_on_cells(pieces: SignedPieces, edges: np.ndarray) -> np.ndarray:
    table = np.asarray(list(pieces), dtype=float).reshape(-1, 2)
    own_edges = np.concatenate(([0.0], np.cumsum(table[:, 0])))
    centers = (edges[:-1] + edges[1:]) / 2.0
    index = np.searchsorted(own_edges, centers, side="right") - 1
    padded = np.concatenate((table[:, 1], [0.0]))
    return np.where(index < table.shape[0], padded[np.clip(index, 0, padded.size - 1)], 0.0)


def pointwise_abs(
    first: SignedPieces, second: SignedPieces, sign: float = 1.0, kind: Kind = Kind.FUNCTION
) -> StepFunction:
    """|f + sign·g| for signed step functions given as (length, value) pieces from zero."""
    all_edges: List[np.ndarray] = []
    for pieces in (first, second):
        lengths = np.asarray([length for length, _ in pieces], dtype=float)
        all_edges.append(np.concatenate(([0.0], np.cumsum(lengths))))
    edges = np.union1d(*all_edges)
    if edges.size < 2:
        return StepFunction(kind=kind)
    combined = _signed_on_cells(first, edges) + sign * _signed_on_cells(second, edges)
    return StepFunction.from_arrays(np.diff(edges), np.abs(combined), kind)


def as_signed(f: StepFunction) -> List[Piece]:
    """Pieces of a nonnegative step function, usable with `pointwise_abs`."""
    return [(float(length), float(value)) for length, value in f.pieces]

