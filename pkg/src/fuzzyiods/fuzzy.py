"""Triangular fuzzy numbers, alpha-cuts and their crisp parametrization."""

from __future__ import annotations

import math
from dataclasses import dataclass


class FuzzyDomainError(ValueError):
    """A membership level or crisp parameter fell outside [0, 1]."""


class FuzzyConstructionError(ValueError):
    """A triple cannot form a triangular fuzzy number."""


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise FuzzyDomainError(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise FuzzyConstructionError(f"interval bounds out of order: [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, other: Interval, tol: float = 0.0) -> bool:
        return self.lo - tol <= other.lo and other.hi <= self.hi + tol


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Fuzzy number ``[left, peak, right]`` with piecewise-linear membership.

    The ordering ``left <= peak <= right`` is enforced on construction; use
    :func:`from_sorted_triple` to build one from unordered values.
    """

    left: float
    peak: float
    right: float

    def __post_init__(self):
        values = (self.left, self.peak, self.right)
        if not all(math.isfinite(v) for v in values):
            raise FuzzyConstructionError(f"non-finite fuzzy number component in {list(values)}")
        if not self.left <= self.peak <= self.right:
            raise FuzzyConstructionError(
                f"fuzzy number components must satisfy left <= peak <= right, got {list(values)}"
            )

    @classmethod
    def crisp(cls, value: float) -> TriangularFuzzyNumber:
        return cls(value, value, value)

    @property
    def is_degenerate(self) -> bool:
        return self.left == self.peak == self.right

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.left, self.peak, self.right)

    def membership(self, x: float) -> float:
        return membership(self, x)

    def alpha_cut(self, alpha: float) -> Interval:
        return alpha_cut(self, alpha)

    def crisp_value(self, alpha: float, beta: float) -> float:
        return crisp_value(self, alpha, beta)

    def __str__(self):
        return f"[{self.left}, {self.peak}, {self.right}]"


def membership(tfn: TriangularFuzzyNumber, x: float) -> float:
    """Degree of membership of ``x`` in ``tfn``.

    Rises linearly from 0 at ``left`` to 1 at ``peak`` and falls back to 0 at
    ``right``. A degenerate number has membership 1 at its peak only.
    """
    left, peak, right = tfn.left, tfn.peak, tfn.right
    if x == peak:
        return 1.0
    if left <= x < peak:
        return (x - left) / (peak - left)
    if peak < x <= right:
        return (right - x) / (right - peak)
    return 0.0


def alpha_cut(tfn: TriangularFuzzyNumber, alpha: float) -> Interval:
    """Closed interval of points with membership at least ``alpha``.

    ``alpha = 0`` gives the support ``[left, right]`` and ``alpha = 1`` the
    core ``[peak, peak]``, both exactly.
    """
    _check_unit("alpha", alpha)
    left, peak, right = tfn.left, tfn.peak, tfn.right
    if alpha == 1.0:
        return Interval(peak, peak)
    # clamping keeps the cut inside the core bound under rounding, so cuts nest
    lo = min(left + alpha * (peak - left), peak)
    hi = max(right + alpha * (peak - right), peak)
    return Interval(lo, hi)


def crisp_value(tfn: TriangularFuzzyNumber, alpha: float, beta: float) -> float:
    """Point of the ``alpha``-cut at relative position ``beta`` from its lower end."""
    _check_unit("beta", beta)
    cut = alpha_cut(tfn, alpha)
    if beta == 1.0:
        return cut.hi
    return min(cut.lo + beta * (cut.hi - cut.lo), cut.hi)


def from_sorted_triple(a: float, b: float, c: float) -> TriangularFuzzyNumber:
    """Build a fuzzy number from three values in any order."""
    values = (a, b, c)
    if not all(math.isfinite(float(v)) for v in values):
        raise FuzzyConstructionError(f"non-finite value in {list(values)}")
    left, peak, right = sorted(float(v) for v in values)
    return TriangularFuzzyNumber(left, peak, right)
