import dataclasses
import math

import pytest

from fuzzyiods.fuzzy import TriangularFuzzyNumber
from fuzzyiods.model import Slice
from fuzzyiods.parser import parse_problem
from fuzzyiods.slicing import build_objective, extract_slice
from fuzzyiods.solver import SLICES, FuzzySolution, SolverError, membership_samples, solve, verify

from conftest import GOLDEN, REPORTED_X1, REPORTED_X2


def _at_reported(problem, slice):
    i = SLICES.index(slice)
    F = build_objective(extract_slice(problem.system, slice))
    return F((REPORTED_X1[i], REPORTED_X2[i]))


def test_reported_point_objectives(section4):
    # thresholds used by the acceptance suite
    values = [_at_reported(section4, s) for s in SLICES]
    assert values == pytest.approx([0.0451544, 1.4831807, 9.5431342], abs=1e-6)


def test_solve_section4(section4):
    report = solve(section4)
    sol = report.solution
    for s in SLICES:
        assert sol.slices[s].search.objective_value <= _at_reported(section4, s)
        assert sol.slices[s].search.converged
    for tfn in sol.components:
        assert tfn.left <= tfn.peak <= tfn.right
    assert report.converged
    assert verify(sol, section4).ok


def test_solve_degenerate_single_variable():
    problem = parse_problem("vars: x\neq: x = [4,4,4]\ninit: 0\nstep: 1\n")
    sol = solve(problem).solution
    results = [sol.slices[s].search for s in SLICES]
    assert results[0] == results[1] == results[2]
    (x,) = sol.components
    assert x.is_degenerate
    assert x.peak == pytest.approx(4.0, abs=1e-3)


def test_solve_seeded_near_roots(section4):
    cfg = dataclasses.replace(section4.config, initial_point=(1.8, 1.6), step=(0.1, 0.1), eps=1e-8)
    sol = solve(dataclasses.replace(section4, config=cfg)).solution
    for s, b1 in zip(SLICES, (2, 5, 8)):
        result = sol.slices[s].search
        assert result.objective_value <= 1e-6
        assert math.dist(result.minimizer, (math.sqrt(b1 - GOLDEN), GOLDEN)) < 1e-2


def test_concurrent_matches_sequential(section4):
    assert solve(section4, concurrent=True) == solve(section4, concurrent=False)


def test_solve_rejects_dimension_mismatch(section4):
    bad = dataclasses.replace(section4, config=dataclasses.replace(section4.config, initial_point=(1.0,), step=(1.0,)))
    with pytest.raises(SolverError):
        solve(bad)


def test_budget_exhaustion_reported_per_slice(section4):
    cfg = dataclasses.replace(section4.config, max_evaluations=20)
    report = solve(dataclasses.replace(section4, config=cfg))
    assert not report.converged
    assert all(not s.search.converged for s in report.solution.slices.values())


def test_verify_flags_tampered_minimizer(section4):
    sol = solve(section4).solution
    peak = sol.slices[Slice.PEAK]
    tampered_search = dataclasses.replace(peak.search, minimizer=(peak.search.minimizer[0] + 0.1, peak.search.minimizer[1]))
    slices = dict(sol.slices)
    slices[Slice.PEAK] = dataclasses.replace(peak, search=tampered_search)
    tampered = dataclasses.replace(sol, slices=slices)
    check = verify(tampered, section4)
    assert not check.ok
    assert any(m.startswith("peak") for m in check.mismatches)


def test_verify_flags_bad_assembly(section4):
    sol = solve(section4).solution
    wrong = dataclasses.replace(sol, components=(TriangularFuzzyNumber(0, 1, 2), sol.components[1]))
    assert any(m.startswith("x1") for m in verify(wrong, section4).mismatches)


def test_verify_degenerate_residuals_identical():
    problem = parse_problem("vars: x y\neq: x*y = [2,2,2]\neq: x - y = [1,1,1]\ninit: 1 1\n")
    check = verify(solve(problem).solution, problem)
    assert check.ok
    assert check.residuals[Slice.LEFT] == check.residuals[Slice.PEAK] == check.residuals[Slice.RIGHT]


def _solution(*tfns):
    names = tuple(f"x{i + 1}" for i in range(len(tfns)))
    return FuzzySolution(names, tuple(TriangularFuzzyNumber(*t) for t in tfns), {})


def test_membership_samples_reported_triple():
    rows = membership_samples(_solution(REPORTED_X1), 0, 3)
    xs = [x for x, _ in rows]
    mus = [mu for _, mu in rows]
    assert xs == pytest.approx([0.6938, 1.5106, 2.3274], abs=1e-12)
    assert mus[0] == 0.0 and mus[2] == 0.0
    assert mus[1] == pytest.approx((1.5106 - 0.6938) / (1.7115 - 0.6938), abs=1e-12)
    assert mus[1] == pytest.approx(0.8026, abs=1e-4)


def test_membership_samples_degenerate():
    assert membership_samples(_solution((4, 4, 4)), 0, 2) == [(4.0, 1.0), (4.0, 1.0)]


def test_membership_samples_symmetric():
    rows = membership_samples(_solution((0, 1, 2)), "x1", 5)
    assert [mu for _, mu in rows] == [0.0, 0.5, 1.0, 0.5, 0.0]


def test_membership_samples_include_peak():
    rows = membership_samples(_solution(REPORTED_X1), 0, 11, include_peak=True)
    xs = [x for x, _ in rows]
    assert REPORTED_X1[1] in xs
    assert max(mu for _, mu in rows) == 1.0
    assert xs == sorted(xs)


def test_membership_samples_rejects_small_npoints():
    with pytest.raises(ValueError):
        membership_samples(_solution((0, 1, 2)), 0, 1)
