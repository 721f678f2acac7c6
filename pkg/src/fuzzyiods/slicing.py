"""Crisp slices of a fuzzy system and their least-squares objectives."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fuzzy import FuzzyDomainError, crisp_value
from .model import (
    Equation,
    EvaluationError,
    FuzzyConstant,
    FuzzySystem,
    Slice,
    errors,
    evaluate,
    substitute_fuzzy,
    validate,
    walk,
)


@dataclass(frozen=True)
class CrispSystem:
    variables: tuple[str, ...]
    equations: tuple[Equation, ...]

    def __post_init__(self):
        for eq in self.equations:
            for side in (eq.lhs, eq.rhs):
                if any(isinstance(node, FuzzyConstant) for node in walk(side)):
                    raise ValueError("crisp system must not contain fuzzy literals")

    def residuals(self, x: Sequence[float]) -> tuple[float, ...]:
        """``lhs_k(x) - rhs_k(x)`` for each equation; may raise EvaluationError."""
        return tuple(evaluate(eq.lhs, x) - evaluate(eq.rhs, x) for eq in self.equations)


def _crisp(system: FuzzySystem, replace) -> CrispSystem:
    problems = errors(validate(system))
    if problems:
        raise ValueError("; ".join(str(p) for p in problems))
    equations = tuple(
        Equation(substitute_fuzzy(eq.lhs, replace), substitute_fuzzy(eq.rhs, replace))
        for eq in system.equations
    )
    return CrispSystem(system.variables, equations)


def extract_slice(system: FuzzySystem, slice: Slice) -> CrispSystem:
    """Replace every fuzzy literal by its left, peak or right component."""
    return _crisp(system, slice.pick)


def alpha_slice(system: FuzzySystem, alpha: float, side: Slice) -> CrispSystem:
    """Replace every fuzzy literal by the lower or upper end of its ``alpha``-cut."""
    if side is Slice.PEAK:
        raise ValueError("alpha_slice side must be Slice.LEFT or Slice.RIGHT")
    if not 0.0 <= alpha <= 1.0:
        raise FuzzyDomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    beta = 0.0 if side is Slice.LEFT else 1.0
    return _crisp(system, lambda tfn: crisp_value(tfn, alpha, beta))


class Objective:
    """Sum of squared residuals of a crisp system.

    Points where any residual cannot be evaluated, or where the sum is not
    finite, score ``+inf``. The evaluation counter is shared by all threads
    using this instance and guarded by a lock.
    """

    def __init__(self, crisp: CrispSystem):
        self.crisp = crisp
        self._evaluations = 0
        self._lock = threading.Lock()

    @property
    def evaluations(self) -> int:
        return self._evaluations

    def __call__(self, x: Sequence[float]) -> float:
        with self._lock:
            self._evaluations += 1
        try:
            residuals = self.crisp.residuals(x)
        except EvaluationError:
            return math.inf
        total = 0.0
        for r in residuals:
            total += r * r
        if not math.isfinite(total):
            return math.inf
        return total

    def batch(self, points: np.ndarray) -> np.ndarray:
        """Objective values for the rows of an ``(m, n)`` array, for grid scoring."""
        points = np.asarray(points, dtype=float)
        columns = [points[:, i] for i in range(points.shape[1])]
        total = np.zeros(points.shape[0])
        with np.errstate(all="ignore"):
            for eq in self.crisp.equations:
                r = np.asarray(evaluate(eq.lhs, columns), dtype=float) \
                    - np.asarray(evaluate(eq.rhs, columns), dtype=float)
                total = total + r * r
        with self._lock:
            self._evaluations += points.shape[0]
        return np.where(np.isfinite(total), total, np.inf)


def build_objective(crisp: CrispSystem) -> Objective:
    return Objective(crisp)
