"""Fuzzy nonlinear systems solved by three-slice exploratory/pattern search."""

from .fuzzy import (
    FuzzyConstructionError,
    FuzzyDomainError,
    Interval,
    TriangularFuzzyNumber,
    alpha_cut,
    crisp_value,
    from_sorted_triple,
    membership,
)
from .model import Equation, FuzzySystem, ProblemSpec, Slice, evaluate, validate
from .parser import ProblemError, format_problem, parse_problem
from .search import SearchConfig, SearchResult, exploratory_move, grid_minimize, minimize, pattern_move
from .slicing import CrispSystem, Objective, alpha_slice, build_objective, extract_slice
from .solver import FuzzySolution, SolverReport, membership_samples, solve, verify

__version__ = "0.1.0"

__all__ = [
    "CrispSystem",
    "Equation",
    "FuzzyConstructionError",
    "FuzzyDomainError",
    "FuzzySolution",
    "FuzzySystem",
    "Interval",
    "Objective",
    "ProblemError",
    "ProblemSpec",
    "SearchConfig",
    "SearchResult",
    "Slice",
    "SolverReport",
    "TriangularFuzzyNumber",
    "alpha_cut",
    "alpha_slice",
    "build_objective",
    "crisp_value",
    "evaluate",
    "exploratory_move",
    "extract_slice",
    "format_problem",
    "from_sorted_triple",
    "grid_minimize",
    "membership",
    "membership_samples",
    "minimize",
    "parse_problem",
    "pattern_move",
    "solve",
    "validate",
    "verify",
]
