"""Exploratory/pattern direct search and a brute-force grid oracle.

The search is the classic Hooke-Jeeves scheme: coordinate-wise exploratory
probing with steps ``+/-step[i]``, pattern extrapolation along the last
successful displacement, and geometric step reduction on failure until the
largest step drops below ``eps``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

Point = tuple[float, ...]
ObjectiveFn = Callable[[Sequence[float]], float]

DEFAULT_STEP = 0.5
DEFAULT_EPS = 1e-3
DEFAULT_REDUCTION = 2.0
DEFAULT_MAX_EVALUATIONS = 100_000

GRID_MAX_DIMENSION = 3


class SearchConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    """Starting point, step vector and stopping rule for :func:`minimize`."""

    initial_point: Point
    step: Point
    reduction: float = DEFAULT_REDUCTION
    eps: float = DEFAULT_EPS
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS

    def __post_init__(self):
        object.__setattr__(self, "initial_point", tuple(float(v) for v in self.initial_point))
        object.__setattr__(self, "step", tuple(float(v) for v in self.step))
        for problem in self.problems():
            raise SearchConfigError(problem)

    @classmethod
    def default(cls, n: int, **overrides) -> SearchConfig:
        values = dict(initial_point=(0.0,) * n, step=(DEFAULT_STEP,) * n)
        values.update(overrides)
        return cls(**values)

    @property
    def dimension(self) -> int:
        return len(self.initial_point)

    def problems(self) -> list[str]:
        out = []
        if len(self.initial_point) == 0:
            out.append("initial point must have at least one coordinate")
        if len(self.step) != len(self.initial_point):
            out.append(
                f"step has {len(self.step)} entries but initial point has {len(self.initial_point)}"
            )
        if not all(math.isfinite(v) for v in self.initial_point):
            out.append("initial point must be finite")
        if not all(math.isfinite(s) and s > 0 for s in self.step):
            out.append("every step must be a positive finite number")
        if not (math.isfinite(self.reduction) and self.reduction > 1):
            out.append(f"reduction factor must be > 1, got {self.reduction}")
        if not (math.isfinite(self.eps) and self.eps > 0):
            out.append(f"eps must be > 0, got {self.eps}")
        if isinstance(self.max_evaluations, bool) or not isinstance(self.max_evaluations, int) \
                or self.max_evaluations < 1:
            out.append(f"max_evaluations must be a positive integer, got {self.max_evaluations!r}")
        return out

    def to_dict(self) -> dict:
        return {
            "init": list(self.initial_point),
            "step": list(self.step),
            "eps": self.eps,
            "reduction": self.reduction,
            "max_evals": self.max_evaluations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> SearchConfig:
        return cls(
            initial_point=tuple(data["init"]),
            step=tuple(data["step"]),
            eps=data["eps"],
            reduction=data["reduction"],
            max_evaluations=data["max_evals"],
        )


@dataclass(frozen=True)
class ExploratoryOutcome:
    point: Point
    value: float
    success: bool


@dataclass(frozen=True)
class SearchResult:
    minimizer: Point
    objective_value: float
    outer_iterations: int
    evaluations: int
    converged: bool
    # objective values of the accepted incumbents, starting with F(x0)
    history: tuple[float, ...] = field(default=(), compare=True, repr=False)


class _Counted:
    """Per-call evaluation counter; NaN is treated as +inf."""

    def __init__(self, fn: ObjectiveFn):
        self.fn = fn
        self.count = 0

    def __call__(self, x: Point) -> float:
        self.count += 1
        value = float(self.fn(x))
        if math.isnan(value):
            return math.inf
        return value


def exploratory_move(
    F: ObjectiveFn,
    base: Sequence[float],
    step: Sequence[float],
    base_value: float | None = None,
) -> ExploratoryOutcome:
    """Probe each coordinate in turn at ``+step[i]`` and ``-step[i]``.

    The best of the current, plus and minus points is kept before moving on
    to the next coordinate; ties keep the current point, then prefer the
    plus probe. Passing ``base_value`` saves one evaluation, so a full sweep
    costs at most ``2 * len(base) + 1`` calls.
    """
    if len(base) != len(step):
        raise ValueError(f"dimension mismatch: base has {len(base)}, step has {len(step)}")
    current = [float(v) for v in base]
    value = F(tuple(current)) if base_value is None else base_value
    for i, delta in enumerate(step):
        origin = current[i]
        current[i] = origin + delta
        plus_value = F(tuple(current))
        current[i] = origin - delta
        minus_value = F(tuple(current))
        best, best_value = origin, value
        if plus_value < best_value:
            best, best_value = origin + delta, plus_value
        if minus_value < best_value:
            best, best_value = origin - delta, minus_value
        current[i] = best
        value = best_value
    point = tuple(current)
    return ExploratoryOutcome(point, value, point != tuple(float(v) for v in base))


def pattern_move(current: Sequence[float], previous: Sequence[float]) -> Point:
    if len(current) != len(previous):
        raise ValueError("dimension mismatch in pattern move")
    return tuple(2.0 * c - p for c, p in zip(current, previous))


def minimize(F: ObjectiveFn, config: SearchConfig) -> SearchResult:
    """Minimize ``F`` from ``config.initial_point`` by pattern search.

    Terminates with ``converged=True`` once an exploratory move fails while
    the largest step is below ``config.eps``. If another full sweep could
    exceed ``config.max_evaluations`` the search stops with
    ``converged=False`` and the best point found so far.
    """
    F = _Counted(F)
    n = config.dimension
    sweep_cost = 2 * n
    step = list(config.step)
    x = config.initial_point
    fx = F(x)
    history = [fx]
    iterations = 0

    def budget_left() -> bool:
        return F.count + sweep_cost <= config.max_evaluations

    converged = False
    while budget_left():
        iterations += 1
        outcome = exploratory_move(F, x, step, fx)
        if outcome.success and outcome.value < fx:
            previous, x, fx = x, outcome.point, outcome.value
            history.append(fx)
            while F.count + sweep_cost + 1 <= config.max_evaluations:
                probe = pattern_move(x, previous)
                candidate = exploratory_move(F, probe, step)
                if not candidate.value < fx:
                    break
                previous, x, fx = x, candidate.point, candidate.value
                history.append(fx)
        if max(step) < config.eps:
            converged = True
            break
        step = [s / config.reduction for s in step]

    return SearchResult(
        minimizer=x,
        objective_value=fx,
        outer_iterations=iterations,
        evaluations=F.count,
        converged=converged,
        history=tuple(history),
    )


def grid_minimize(
    F: ObjectiveFn,
    lower: Sequence[float],
    upper: Sequence[float],
    points_per_axis: int,
) -> tuple[Point, float]:
    """Exhaustively evaluate ``F`` on a uniform grid and return the best node.

    Ties resolve to the lexicographically smallest grid index. If ``F`` has a
    ``batch`` method accepting an ``(m, n)`` array, it is used to score the
    grid; the returned value is always a scalar re-evaluation of the winner.
    """
    n = len(lower)
    if len(upper) != n:
        raise ValueError("lower and upper bounds differ in dimension")
    if n == 0 or n > GRID_MAX_DIMENSION:
        raise ValueError(f"grid search supports 1 to {GRID_MAX_DIMENSION} dimensions, got {n}")
    if points_per_axis < 2:
        raise ValueError("points_per_axis must be at least 2")
    if not all(lo < hi for lo, hi in zip(lower, upper)):
        raise ValueError("lower must be strictly below upper in every coordinate")

    axes = [np.linspace(lo, hi, points_per_axis) for lo, hi in zip(lower, upper)]
    batch = getattr(F, "batch", None)
    if batch is not None:
        mesh = np.meshgrid(*axes, indexing="ij")
        points = np.stack([m.ravel() for m in mesh], axis=1)
        values = np.asarray(batch(points), dtype=float)
        values = np.where(np.isnan(values), np.inf, values)
        best = tuple(float(v) for v in points[int(np.argmin(values))])
        return best, float(F(best))

    best, best_value = None, math.inf
    for node in itertools.product(*(ax.tolist() for ax in axes)):
        value = float(F(node))
        if math.isnan(value):
            value = math.inf
        if best is None or value < best_value:
            best, best_value = node, value
    return tuple(best), best_value
