"""Three-slice fuzzy solve: left-outer, inner and right-outer systems are
minimized independently and their minimizers sorted into fuzzy numbers."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .fuzzy import TriangularFuzzyNumber, from_sorted_triple, membership
from .model import EvaluationError, ProblemSpec, Slice, errors
from .search import SearchConfig, SearchResult, minimize
from .slicing import build_objective, extract_slice

SLICES = (Slice.LEFT, Slice.PEAK, Slice.RIGHT)

MISMATCH_TOLERANCE = 1e-12


class SolverError(ValueError):
    pass


@dataclass(frozen=True)
class SliceSolution:
    search: SearchResult
    residuals: tuple[float, ...]


@dataclass(frozen=True)
class FuzzySolution:
    variables: tuple[str, ...]
    components: tuple[TriangularFuzzyNumber, ...]
    slices: Mapping[Slice, SliceSolution]

    def component(self, name_or_index) -> TriangularFuzzyNumber:
        if isinstance(name_or_index, str):
            return self.components[self.variables.index(name_or_index)]
        return self.components[name_or_index]


@dataclass(frozen=True)
class SolverReport:
    solution: FuzzySolution
    config: SearchConfig
    wall_time: float = field(compare=False)

    @property
    def converged(self) -> bool:
        return all(s.search.converged for s in self.solution.slices.values())


def _residuals_at(problem: ProblemSpec, slice: Slice, point) -> tuple[float, ...]:
    crisp = extract_slice(problem.system, slice)
    try:
        return tuple(float(r) for r in crisp.residuals(point))
    except EvaluationError:
        return tuple(math.nan for _ in crisp.equations)


def _solve_slice(problem: ProblemSpec, slice: Slice) -> SliceSolution:
    objective = build_objective(extract_slice(problem.system, slice))
    result = minimize(objective, problem.config)
    return SliceSolution(result, _residuals_at(problem, slice, result.minimizer))


def solve(problem: ProblemSpec, concurrent: bool = False) -> SolverReport:
    """Solve the three crisp slices of ``problem`` with its search config.

    Each variable's fuzzy solution is the sorted triple of its left, peak
    and right slice minimizer components. With ``concurrent=True`` the three
    searches run on worker threads; the report is identical either way.
    """
    issues = errors(problem.problems())
    if issues:
        raise SolverError("; ".join(str(i) for i in issues))
    started = time.perf_counter()
    if concurrent:
        with ThreadPoolExecutor(max_workers=len(SLICES)) as pool:
            futures = {s: pool.submit(_solve_slice, problem, s) for s in SLICES}
            slices = {s: futures[s].result() for s in SLICES}
    else:
        slices = {s: _solve_slice(problem, s) for s in SLICES}
    components = tuple(
        from_sorted_triple(*(slices[s].search.minimizer[k] for s in SLICES))
        for k in range(problem.system.n)
    )
    solution = FuzzySolution(problem.system.variables, components, slices)
    return SolverReport(solution, problem.config, time.perf_counter() - started)


@dataclass(frozen=True)
class Verification:
    residuals: Mapping[Slice, tuple[float, ...]]
    objectives: Mapping[Slice, float]
    mismatches: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _close(a: float, b: float) -> bool:
    if math.isinf(a) or math.isinf(b) or math.isnan(a) or math.isnan(b):
        return a == b or (math.isnan(a) and math.isnan(b))
    return abs(a - b) <= MISMATCH_TOLERANCE


def verify(solution: FuzzySolution, problem: ProblemSpec) -> Verification:
    """Recompute residuals and objectives at the stored slice minimizers.

    Any disagreement with the stored values beyond 1e-12, or a fuzzy
    component that is not the sorted triple of the minimizers, is listed in
    ``mismatches``.
    """
    n = problem.system.n
    mismatches = []
    residuals = {}
    objectives = {}
    if len(solution.components) != n:
        mismatches.append(f"solution has {len(solution.components)} components for {n} variables")
    for s in SLICES:
        stored = solution.slices[s]
        point = stored.search.minimizer
        if len(point) != n:
            mismatches.append(f"{s.value}: minimizer has {len(point)} coordinates for {n} variables")
            continue
        objective = build_objective(extract_slice(problem.system, s))
        value = objective(point)
        res = _residuals_at(problem, s, point)
        residuals[s] = res
        objectives[s] = value
        if not _close(value, stored.search.objective_value):
            mismatches.append(
                f"{s.value}: stored objective {stored.search.objective_value!r} "
                f"but {value!r} at stored minimizer"
            )
        if len(res) != len(stored.residuals) or not all(map(_close, res, stored.residuals)):
            mismatches.append(f"{s.value}: stored residuals differ from recomputed {res}")
        if math.isfinite(value) and not _close(sum(r * r for r in res), stored.search.objective_value):
            mismatches.append(f"{s.value}: stored objective is not the sum of squared residuals")
    if len(residuals) == len(SLICES) and len(solution.components) == n:
        for k in range(n):
            expected = from_sorted_triple(*(solution.slices[s].search.minimizer[k] for s in SLICES))
            if expected != solution.components[k]:
                mismatches.append(
                    f"{solution.variables[k]}: component {solution.components[k]} "
                    f"is not the sorted slice minimizers {expected}"
                )
    return Verification(residuals, objectives, tuple(mismatches))


def membership_samples(
    solution: FuzzySolution,
    variable,
    npoints: int,
    include_peak: bool = False,
) -> list[tuple[float, float]]:
    """Sample the membership function of one solution component.

    ``npoints`` abscissae are spread uniformly over ``[left, right]``. With
    ``include_peak`` the interior sample nearest the peak is moved onto it,
    so the table reaches membership 1 exactly.
    """
    if npoints < 2:
        raise ValueError("npoints must be at least 2")
    tfn = solution.component(variable)
    xs = np.linspace(tfn.left, tfn.right, npoints).tolist()
    if include_peak and npoints > 2 and tfn.left < tfn.peak < tfn.right:
        nearest = min(range(1, npoints - 1), key=lambda i: abs(xs[i] - tfn.peak))
        xs[nearest] = tfn.peak
    return [(x, membership(tfn, x)) for x in xs]
