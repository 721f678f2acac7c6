"""Command-line interface: ``fuzzyiods solve|check|membership <file>``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .parser import ProblemError, parse_problem
from .search import SearchConfigError
from .solver import SLICES, SolverReport, membership_samples, solve

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def report_to_dict(report: SolverReport, equations: list[str] | None = None) -> dict:
    solution = report.solution
    doc = {
        "variables": list(solution.variables),
        "solution": {name: list(tfn.as_tuple()) for name, tfn in zip(solution.variables, solution.components)},
        "slices": {
            s.value: {
                "minimizer": list(solution.slices[s].search.minimizer),
                "objective": solution.slices[s].search.objective_value,
                "residuals": list(solution.slices[s].residuals),
                "iterations": solution.slices[s].search.outer_iterations,
                "evaluations": solution.slices[s].search.evaluations,
                "converged": solution.slices[s].search.converged,
            }
            for s in SLICES
        },
        "config": report.config.to_dict(),
        "converged": report.converged,
        "wall_time": report.wall_time,
    }
    if equations is not None:
        doc["equations"] = equations
    return doc


def _g(value: float) -> str:
    return f"{value:.6g}"


def format_text(report: SolverReport) -> str:
    solution = report.solution
    lines = ["solution:"]
    for name, tfn in zip(solution.variables, solution.components):
        lines.append(f"  {name} = [{_g(tfn.left)}, {_g(tfn.peak)}, {_g(tfn.right)}]")
    lines.append("slices:")
    for s in SLICES:
        sl = solution.slices[s]
        point = ", ".join(_g(v) for v in sl.search.minimizer)
        residuals = ", ".join(_g(v) for v in sl.residuals)
        lines.append(
            f"  {s.value:<5} minimizer=({point}) objective={_g(sl.search.objective_value)} "
            f"residuals=({residuals}) iterations={sl.search.outer_iterations} "
            f"evaluations={sl.search.evaluations} converged={str(sl.search.converged).lower()}"
        )
    cfg = report.config
    lines.append(
        "config: init=(" + ", ".join(_g(v) for v in cfg.initial_point) + ") step=("
        + ", ".join(_g(v) for v in cfg.step) + f") eps={_g(cfg.eps)} reduction={_g(cfg.reduction)} "
        f"max_evals={cfg.max_evaluations}"
    )
    return "\n".join(lines) + "\n"


def format_membership_table(rows) -> str:
    return "x,mu\n" + "".join(f"{x!r},{mu!r}\n" for x, mu in rows)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzyiods", description="Solve fuzzy nonlinear systems by three-slice pattern search.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_overrides(p):
        p.add_argument("--eps", type=float)
        p.add_argument("--reduction", type=float)
        p.add_argument("--max-evals", type=int, dest="max_evals")
        p.add_argument("--step", type=float, nargs="+")
        p.add_argument("--init", type=float, nargs="+")
        p.add_argument("--out", type=Path, help="write output here instead of standard output")

    p_solve = sub.add_parser("solve", help="solve a problem file")
    p_solve.add_argument("file", type=Path)
    p_solve.add_argument("--format", choices=("text", "structured"), default="text")
    add_overrides(p_solve)

    p_check = sub.add_parser("check", help="parse and validate a problem file")
    p_check.add_argument("file", type=Path)

    p_member = sub.add_parser("membership", help="solve and emit membership tables")
    p_member.add_argument("file", type=Path)
    p_member.add_argument("--samples", type=int, default=101)
    add_overrides(p_member)
    return parser


def _load(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from None
    return parse_problem(text)


def _apply_overrides(problem, args):
    changes = {}
    if args.eps is not None:
        changes["eps"] = args.eps
    if args.reduction is not None:
        changes["reduction"] = args.reduction
    if args.max_evals is not None:
        changes["max_evaluations"] = args.max_evals
    if args.step is not None:
        changes["step"] = tuple(args.step)
    if args.init is not None:
        changes["initial_point"] = tuple(args.init)
    if not changes:
        return problem
    try:
        config = dataclasses.replace(problem.config, **changes)
    except SearchConfigError as exc:
        raise _UsageError(f"invalid override: {exc}") from None
    if config.dimension != problem.system.n:
        raise _UsageError(f"invalid override: search vectors need {problem.system.n} entries")
    return dataclasses.replace(problem, config=config)


def _write(text: str, out: Path | None, stdout) -> None:
    if out is None:
        stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        problem = _load(args.file)
        if args.command == "check":
            for d in problem.problems():
                stdout.write(f"{d}\n")
            stdout.write(f"ok: {problem.system.n} variables, {problem.system.m} equations\n")
            return EXIT_OK
        problem = _apply_overrides(problem, args)
        if args.command == "membership" and args.samples < 2:
            raise _UsageError("--samples must be at least 2")
    except _UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ProblemError as exc:
        stderr.write(f"error: {args.file}: {exc}\n")
        return EXIT_INPUT

    report = solve(problem)
    if args.command == "solve":
        if args.format == "structured":
            names = problem.system.variables
            equations = [eq.to_text(names) for eq in problem.system.equations]
            text = json.dumps(report_to_dict(report, equations), indent=2) + "\n"
        else:
            text = format_text(report)
        _write(text, args.out, stdout)
    else:
        tables = {
            name: format_membership_table(membership_samples(report.solution, name, args.samples, include_peak=True))
            for name in problem.system.variables
        }
        if args.out is None:
            stdout.write("\n".join(f"# {name}\n{table}" for name, table in tables.items()))
        else:
            for name, table in tables.items():
                path = args.out.with_name(f"{args.out.stem}_{name}{args.out.suffix or '.csv'}")
                path.write_text(table, encoding="utf-8")
    if not report.converged:
        stderr.write("warning: evaluation budget exhausted before convergence\n")
        return EXIT_BUDGET
    return EXIT_OK


def main():
    sys.exit(run())
