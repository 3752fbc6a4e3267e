"""Decreasing weights w and their primitives W(t) = ∫₀ᵗ w."""

import logging
import math
from typing import Any, ClassVar, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import optimize

from olspace.domain import Domain, Kind
from olspace.exceptions import DomainError
from olspace.verdict import Verdict

logger = logging.getLogger(__name__)

Value = Union[float, np.ndarray]


def _unwrap(values: np.ndarray) -> Value:
    return float(values) if np.ndim(values) == 0 else values


class Weight:
    """Decreasing, positive, locally integrable weight on a domain.

    Function-kind weights are given by `_w` and `_big_w`. The sequence weight of the same family
    has w(i) = W(i) − W(i − 1), so that both kinds share W at the integers and the sequence
    primitive interpolates linearly in between.
    """

    family: ClassVar[str] = NotImplemented
    integrable_at_infinity: ClassVar[bool] = False

    def __init__(self, domain: Optional[Domain] = None) -> None:
        self.domain = domain or Domain()
        if math.isinf(self.domain.gamma) and self.integrable_at_infinity:
            raise DomainError(f"Weight {self.family!r} is integrable on [0, ∞), not allowed when gamma = ∞")

    @property
    def gamma(self) -> float:
        return self.domain.gamma

    @property
    def kind(self) -> Kind:
        return self.domain.kind

    # -- family hooks ---------------------------------------------------------------------------------------------

    def _w(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"Weight {self.family} does not define values")

    def _big_w(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"Weight {self.family} does not define its primitive")

    def _big_w_inverse(self, y: float) -> float:
        upper = 1.0
        while float(self._big_w(np.array(upper))) < y:
            upper *= 2.0
        return float(
            optimize.brentq(lambda t: float(self._big_w(np.array(t))) - y, 0.0, upper, xtol=1e-300, rtol=1e-14)
        )

    @property
    def initial_value(self) -> float:
        """w(0⁺), possibly ∞."""
        raise NotImplementedError

    def _regularity_ratio(self) -> float:
        raise NotImplementedError

    def to_config(self) -> Dict[str, Any]:
        raise NotImplementedError

    # -- public API -----------------------------------------------------------------------------------------------

    def _check_times(self, t: np.ndarray) -> None:
        if np.any(t < 0) or np.any(np.isnan(t)):
            raise DomainError("Weights are defined for t >= 0 only")
        if np.any(t > self.gamma):
            raise DomainError(f"Time beyond the end of the interval gamma = {self.gamma}")

    def big_w(self, t: ArrayLike) -> Value:
        """W(t) = ∫₀ᵗ w for 0 <= t <= gamma (vectorized).

        Raises:
            DomainError: If some t is negative or exceeds gamma.
        """
        t_arr = np.asarray(t, dtype=float)
        self._check_times(t_arr)
        if self.kind is Kind.FUNCTION:
            return _unwrap(self._big_w(t_arr))
        whole = np.floor(t_arr)
        left = self._big_w(whole)
        return _unwrap(left + (self._big_w(whole + 1.0) - left) * (t_arr - whole))

    def __call__(self, t: ArrayLike) -> Value:
        """w(t) for function weights, the value of the cell containing t for sequence weights."""
        t_arr = np.asarray(t, dtype=float)
        self._check_times(t_arr)
        if self.kind is Kind.FUNCTION:
            return _unwrap(self._w(t_arr))
        index = np.floor(t_arr) + 1.0
        return _unwrap(self._big_w(index) - self._big_w(index - 1.0))

    def sequence_values(self, count: int) -> np.ndarray:
        """First `count` terms w(1), ..., w(count) of the sequence weight."""
        edges = self._big_w(np.arange(count + 1, dtype=float))
        return np.diff(edges)

    def big_w_inverse(self, y: float) -> float:
        """The t in [0, gamma] with W(t) = y.

        Raises:
            DomainError: If y is negative or exceeds W(gamma).
        """
        if y < 0 or math.isnan(y):
            raise DomainError(f"W only takes nonnegative values, got {y}")
        if math.isfinite(self.gamma) and y > float(self.big_w(self.gamma)) * (1 + 1e-14):
            raise DomainError(f"Level {y} exceeds W(gamma) = {self.big_w(self.gamma)}")
        if y == 0:
            return 0.0
        if self.kind is Kind.FUNCTION:
            return min(self._big_w_inverse(y), self.gamma)
        lower = 0.0
        upper = 1.0
        while float(self._big_w(np.array(upper))) < y:
            lower, upper = upper, 2.0 * upper
        # W is linear between consecutive integers
        low_index, high_index = math.floor(lower), math.ceil(upper)
        while high_index - low_index > 1:
            middle = (low_index + high_index) // 2
            if float(self._big_w(np.array(float(middle)))) < y:
                low_index = middle
            else:
                high_index = middle
        w_low = float(self._big_w(np.array(float(low_index))))
        w_high = float(self._big_w(np.array(float(high_index))))
        return low_index + (y - w_low) / (w_high - w_low)

    @property
    def limit_t_over_w(self) -> float:
        """lim t/W(t) as t → 0⁺, which is 1/w(0⁺)."""
        return 1.0 / self.initial_value

    def regularity_ratio(self) -> float:
        """sup W(t)/(t·w(t)) over the domain, ∞ when the weight is not regular."""
        if self.kind is Kind.FUNCTION:
            return self._regularity_ratio()
        count = 10_000
        values = self.sequence_values(count)
        partial = np.cumsum(values)
        ratios = partial / (np.arange(1, count + 1) * values)
        return max(float(np.max(ratios)), self._regularity_ratio())

    def is_regular(self) -> Verdict:
        return Verdict.of(math.isfinite(self.regularity_ratio()))

    def __repr__(self) -> str:
        params = ", ".join(f"{key}={value!r}" for key, value in self.to_config().items() if key != "family")
        return f"{self.__class__.__name__}({params}, kind={self.kind.value!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        return self.to_config() == other.to_config() and self.kind is other.kind

    def __hash__(self) -> int:
        return hash(repr(self))

    def _gamma_config(self) -> Union[float, str]:
        return "inf" if math.isinf(self.gamma) else self.gamma


class ConstantWeight(Weight):
    """w ≡ c."""

    family = "constant"

    def __init__(self, c: float = 1.0, domain: Optional[Domain] = None) -> None:
        if not 0 < c < math.inf:
            raise DomainError(f"Constant weight must be positive and finite, got {c}")
        self.c = float(c)
        super().__init__(domain)

    def _w(self, t: np.ndarray) -> np.ndarray:
        return np.full(t.shape, self.c)

    def _big_w(self, t: np.ndarray) -> np.ndarray:
        return self.c * t

    def _big_w_inverse(self, y: float) -> float:
        return y / self.c

    @property
    def initial_value(self) -> float:
        return self.c

    def _regularity_ratio(self) -> float:
        return 1.0

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "c": self.c, "gamma": self._gamma_config()}


class PowerDecayWeight(Weight):
    """w(t) = t^(−alpha) with 0 <= alpha < 1."""

    family = "power_decay"

    def __init__(self, alpha: float, domain: Optional[Domain] = None) -> None:
        if not 0 <= alpha < 1:
            raise DomainError(f"Decay exponent must lie in [0, 1), got {alpha}")
        self.alpha = float(alpha)
        super().__init__(domain)

    def _w(self, t: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.where(t > 0, np.maximum(t, 0.0) ** -self.alpha, math.inf if self.alpha > 0 else 1.0)

    def _big_w(self, t: np.ndarray) -> np.ndarray:
        return t ** (1.0 - self.alpha) / (1.0 - self.alpha)

    def _big_w_inverse(self, y: float) -> float:
        return ((1.0 - self.alpha) * y) ** (1.0 / (1.0 - self.alpha))

    @property
    def initial_value(self) -> float:
        return math.inf if self.alpha > 0 else 1.0

    def _regularity_ratio(self) -> float:
        return 1.0 / (1.0 - self.alpha)

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "alpha": self.alpha, "gamma": self._gamma_config()}


class ExpPlusConstWeight(Weight):
    """w(t) = e^(−beta·t) + c; c > 0 is needed on an infinite interval."""

    family = "exp_plus_const"

    def __init__(self, beta: float, c: float = 0.0, domain: Optional[Domain] = None) -> None:
        if not 0 < beta < math.inf:
            raise DomainError(f"Decay rate must be positive and finite, got {beta}")
        if not 0 <= c < math.inf:
            raise DomainError(f"Offset must be nonnegative and finite, got {c}")
        self.beta = float(beta)
        self.c = float(c)
        super().__init__(domain)

    @property
    def integrable_at_infinity(self) -> bool:  # type: ignore[override]
        return self.c == 0

    def _w(self, t: np.ndarray) -> np.ndarray:
        return np.exp(-self.beta * t) + self.c

    def _big_w(self, t: np.ndarray) -> np.ndarray:
        return -np.expm1(-self.beta * t) / self.beta + self.c * t

    @property
    def initial_value(self) -> float:
        return 1.0 + self.c

    def _regularity_ratio(self) -> float:
        upper = self.gamma if math.isfinite(self.gamma) else 1e3 / self.beta
        grid = np.geomspace(1e-8 / self.beta, upper, 4096)
        ratios = self._big_w(grid) / (grid * self._w(grid))
        return float(np.max(ratios))

    def to_config(self) -> Dict[str, Any]:
        return {"family": self.family, "beta": self.beta, "c": self.c, "gamma": self._gamma_config()}


class TabulatedWeight(Weight):
    """Decreasing step weight given by (length, value) pieces; the last value extends to gamma."""

    family = "tabulated"

    def __init__(self, pieces: Sequence[Tuple[float, float]], domain: Optional[Domain] = None) -> None:
        table = np.asarray(pieces, dtype=float)
        if table.ndim != 2 or table.shape[1] != 2 or table.shape[0] == 0:
            raise DomainError("Weight pieces must be a nonempty sequence of (length, value) pairs")
        lengths, values = table[:, 0], table[:, 1]
        if not np.all(np.isfinite(table)) or np.any(lengths <= 0) or np.any(values <= 0):
            raise DomainError("Weight pieces must have positive finite lengths and values")
        if np.any(np.diff(values) > 0):
            raise DomainError("Weight values must be nonincreasing")
        domain = domain or Domain()
        if domain.kind is Kind.SEQUENCE and np.any(lengths != np.round(lengths)):
            raise DomainError("Sequence weight pieces must have integer lengths")
        if float(np.sum(lengths[:-1])) >= domain.gamma:
            raise DomainError(f"Weight pieces extend beyond gamma = {domain.gamma}")
        self.lengths = lengths
        self.values = values
        self.t_nodes = np.concatenate(([0.0], np.cumsum(lengths)))
        self.w_nodes = np.concatenate(([0.0], np.cumsum(lengths * values)))
        super().__init__(domain)

    def _w(self, t: np.ndarray) -> np.ndarray:
        index = np.minimum(np.searchsorted(self.t_nodes, t, side="right") - 1, self.values.size - 1)
        return self.values[np.maximum(index, 0)]

    def _big_w(self, t: np.ndarray) -> np.ndarray:
        inside = np.interp(t, self.t_nodes, self.w_nodes)
        beyond = self.w_nodes[-1] + self.values[-1] * (t - self.t_nodes[-1])
        return np.where(t <= self.t_nodes[-1], inside, beyond)

    def _big_w_inverse(self, y: float) -> float:
        if y <= self.w_nodes[-1]:
            return float(np.interp(y, self.w_nodes, self.t_nodes))
        return float(self.t_nodes[-1] + (y - self.w_nodes[-1]) / self.values[-1])

    @property
    def initial_value(self) -> float:
        return float(self.values[0])

    def _regularity_ratio(self) -> float:
        # on each piece W(t)/(t·w(t)) decreases, so its supremum is the limit at the left end
        starts = self.t_nodes[1:-1]
        if starts.size == 0:
            return 1.0
        return max(1.0, float(np.max(self.w_nodes[1:-1] / (starts * self.values[1:]))))

    def to_config(self) -> Dict[str, Any]:
        pieces = [[float(length), float(value)] for length, value in zip(self.lengths, self.values)]
        return {"family": self.family, "pieces": pieces, "gamma": self._gamma_config()}
