"""Expression trees, equations and fuzzy systems.

Expressions are immutable trees over numbered variables. A fuzzy literal
``[a, b, c]`` may appear anywhere; evaluating under a :class:`Slice` picks
its left, peak or right component, which is how the three crisp systems of
a fuzzy problem are formed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .fuzzy import TriangularFuzzyNumber
from .search import SearchConfig


class Slice(enum.Enum):
    LEFT = "left"
    PEAK = "peak"
    RIGHT = "right"

    def pick(self, tfn: TriangularFuzzyNumber) -> float:
        if self is Slice.LEFT:
            return tfn.left
        if self is Slice.PEAK:
            return tfn.peak
        return tfn.right


class EvaluationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CrispConstant:
    value: float


@dataclass(frozen=True)
class FuzzyConstant:
    value: TriangularFuzzyNumber


@dataclass(frozen=True)
class Variable:
    index: int


@dataclass(frozen=True)
class Negate:
    child: Expression


@dataclass(frozen=True)
class Sum:
    children: tuple[Expression, ...]


@dataclass(frozen=True)
class Product:
    children: tuple[Expression, ...]


@dataclass(frozen=True)
class Quotient:
    numerator: Expression
    denominator: Expression


@dataclass(frozen=True)
class Power:
    base: Expression
    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {self.exponent!r}")


Expression = Union[CrispConstant, FuzzyConstant, Variable, Negate, Sum, Product, Quotient, Power]


def children(expr: Expression) -> tuple[Expression, ...]:
    if isinstance(expr, (Sum, Product)):
        return expr.children
    if isinstance(expr, Negate):
        return (expr.child,)
    if isinstance(expr, Quotient):
        return (expr.numerator, expr.denominator)
    if isinstance(expr, Power):
        return (expr.base,)
    return ()


def walk(expr: Expression) -> Iterator[Expression]:
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def variables_used(expr: Expression) -> set[int]:
    return {node.index for node in walk(expr) if isinstance(node, Variable)}


def fuzzy_literals(expr: Expression) -> list[TriangularFuzzyNumber]:
    return [node.value for node in walk(expr) if isinstance(node, FuzzyConstant)]


def evaluate(expr: Expression, assignment: Sequence[float], slice: Slice = Slice.PEAK):
    """Evaluate ``expr`` at ``assignment`` with fuzzy literals taken from ``slice``.

    ``assignment`` may hold floats or equally shaped numpy arrays. Division
    by an exact zero and float overflow in a power raise
    :class:`EvaluationError`.
    """
    if isinstance(expr, CrispConstant):
        return expr.value
    if isinstance(expr, Variable):
        return assignment[expr.index]
    if isinstance(expr, FuzzyConstant):
        return slice.pick(expr.value)
    if isinstance(expr, Negate):
        return -evaluate(expr.child, assignment, slice)
    if isinstance(expr, Sum):
        items = expr.children
        total = evaluate(items[0], assignment, slice)
        for item in items[1:]:
            total = total + evaluate(item, assignment, slice)
        return total
    if isinstance(expr, Product):
        items = expr.children
        total = evaluate(items[0], assignment, slice)
        for item in items[1:]:
            total = total * evaluate(item, assignment, slice)
        return total
    if isinstance(expr, Quotient):
        num = evaluate(expr.numerator, assignment, slice)
        den = evaluate(expr.denominator, assignment, slice)
        try:
            return num / den
        except ZeroDivisionError:
            raise EvaluationError("division by zero") from None
    if isinstance(expr, Power):
        base = evaluate(expr.base, assignment, slice)
        try:
            return base ** expr.exponent
        except OverflowError as exc:
            raise EvaluationError(str(exc)) from None
    raise TypeError(f"not an expression node: {expr!r}")


def substitute_fuzzy(expr: Expression, replace) -> Expression:
    """Rebuild ``expr`` with each fuzzy literal mapped through ``replace(tfn) -> float``."""
    if isinstance(expr, FuzzyConstant):
        return CrispConstant(float(replace(expr.value)))
    if isinstance(expr, (CrispConstant, Variable)):
        return expr
    if isinstance(expr, Negate):
        return Negate(substitute_fuzzy(expr.child, replace))
    if isinstance(expr, Sum):
        return Sum(tuple(substitute_fuzzy(c, replace) for c in expr.children))
    if isinstance(expr, Product):
        return Product(tuple(substitute_fuzzy(c, replace) for c in expr.children))
    if isinstance(expr, Quotient):
        return Quotient(substitute_fuzzy(expr.numerator, replace),
                        substitute_fuzzy(expr.denominator, replace))
    if isinstance(expr, Power):
        return Power(substitute_fuzzy(expr.base, replace), expr.exponent)
    raise TypeError(f"not an expression node: {expr!r}")


# --- printing -------------------------------------------------------------

_PREC_SUM = 1
_PREC_PRODUCT = 2
_PREC_UNARY = 3
_PREC_POWER = 4
_PREC_ATOM = 5


def format_number(value: float) -> str:
    text = repr(float(value))
    if text.endswith(".0"):
        text = text[:-2]
    return text


def _precedence(expr: Expression) -> int:
    if isinstance(expr, Sum):
        return _PREC_SUM
    if isinstance(expr, (Product, Quotient)):
        return _PREC_PRODUCT
    if isinstance(expr, Negate):
        return _PREC_UNARY
    if isinstance(expr, CrispConstant) and math.copysign(1.0, expr.value) < 0:
        return _PREC_UNARY
    if isinstance(expr, Power):
        return _PREC_POWER
    return _PREC_ATOM


def _wrap(expr: Expression, names: Sequence[str], paren_at_or_below: int) -> str:
    text = to_text(expr, names)
    if _precedence(expr) <= paren_at_or_below:
        return f"({text})"
    return text


def to_text(expr: Expression, names: Sequence[str]) -> str:
    """Render ``expr`` so that parsing the result rebuilds the same tree."""
    if isinstance(expr, CrispConstant):
        return format_number(expr.value)
    if isinstance(expr, FuzzyConstant):
        t = expr.value
        return f"[{format_number(t.left)}, {format_number(t.peak)}, {format_number(t.right)}]"
    if isinstance(expr, Variable):
        return names[expr.index]
    if isinstance(expr, Negate):
        return "-" + _wrap(expr.child, names, _PREC_PRODUCT)
    if isinstance(expr, Sum):
        parts = [_wrap(expr.children[0], names, _PREC_SUM)]
        for child in expr.children[1:]:
            if isinstance(child, Negate):
                parts.append("- " + _wrap(child.child, names, _PREC_SUM))
            else:
                parts.append("+ " + _wrap(child, names, _PREC_SUM))
        return " ".join(parts)
    if isinstance(expr, Product):
        first, rest = expr.children[0], expr.children[1:]
        parts = ["(" + to_text(first, names) + ")" if isinstance(first, Product)
                 else _wrap(first, names, _PREC_SUM)]
        parts += [_wrap(child, names, _PREC_PRODUCT) for child in rest]
        return " * ".join(parts)
    if isinstance(expr, Quotient):
        num_text = _wrap(expr.numerator, names, _PREC_SUM)
        return f"{num_text} / {_wrap(expr.denominator, names, _PREC_PRODUCT)}"
    if isinstance(expr, Power):
        return f"{_wrap(expr.base, names, _PREC_POWER)}^{expr.exponent}"
    raise TypeError(f"not an expression node: {expr!r}")


# --- systems --------------------------------------------------------------

@dataclass(frozen=True)
class Equation:
    lhs: Expression
    rhs: Expression

    @property
    def is_constant(self) -> bool:
        return not variables_used(self.lhs) and not variables_used(self.rhs)

    def to_text(self, names: Sequence[str]) -> str:
        return f"{to_text(self.lhs, names)} = {to_text(self.rhs, names)}"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    equation: int | None = None  # 1-based
    severity: str = "error"

    def __str__(self):
        where = f" at eq {self.equation}" if self.equation is not None else ""
        return f"{self.severity}: {self.code}{where}: {self.message}"


@dataclass(frozen=True)
class FuzzySystem:
    variables: tuple[str, ...]
    equations: tuple[Equation, ...]

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.equations)

    def fuzzy_literals(self) -> list[TriangularFuzzyNumber]:
        out = []
        for eq in self.equations:
            out += fuzzy_literals(eq.lhs) + fuzzy_literals(eq.rhs)
        return out

    @property
    def is_crisp(self) -> bool:
        """True when every fuzzy literal is degenerate."""
        return all(t.is_degenerate for t in self.fuzzy_literals())


def errors(diagnostics: Sequence[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diagnostics if d.severity == "error"]


def validate(system: FuzzySystem) -> list[Diagnostic]:
    """Check a fuzzy system; an empty list means it is well formed.

    A constant equation (no variables on either side) is allowed but
    reported as a ``degenerate-equation`` warning.
    """
    out = []
    if system.n == 0:
        out.append(Diagnostic("empty-roster", "system declares no variables"))
    if len(set(system.variables)) != system.n:
        out.append(Diagnostic("duplicate-variable", "variable names must be unique"))
    if system.m == 0:
        out.append(Diagnostic("empty-system", "system has no equations"))
    for k, eq in enumerate(system.equations, start=1):
        for index in sorted(variables_used(eq.lhs) | variables_used(eq.rhs)):
            if not 0 <= index < system.n:
                out.append(Diagnostic("unresolved-variable",
                                      f"variable index {index} outside roster of {system.n}", k))
        if eq.is_constant:
            out.append(Diagnostic("degenerate-equation", "equation references no variable", k,
                                  severity="warning"))
    return out


@dataclass(frozen=True)
class ProblemSpec:
    system: FuzzySystem
    config: SearchConfig

    def problems(self) -> list[Diagnostic]:
        out = validate(self.system)
        if self.config.dimension != self.system.n:
            out.append(Diagnostic(
                "dimension-mismatch",
                f"search vectors have {self.config.dimension} entries for {self.system.n} variables",
            ))
        return out
