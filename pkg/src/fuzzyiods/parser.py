"""Reader and writer for the line-oriented problem file format.

A problem file looks like::

    # two equations, fuzzy right-hand sides
    vars: x1 x2
    eq: x1^2 + x2 = [2, 5, 8]
    eq: x1^2 + x2^2 = [3, 6, 9]
    init: 1 1
    step: 0.5 0.5
    eps: 0.001

``vars`` must come first. ``init``, ``step``, ``eps``, ``reduction`` and
``max_evals`` are optional.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from . import search
from .fuzzy import FuzzyConstructionError, TriangularFuzzyNumber
from .model import (
    CrispConstant,
    Equation,
    Expression,
    FuzzyConstant,
    FuzzySystem,
    Negate,
    Power,
    Product,
    ProblemSpec,
    Quotient,
    Sum,
    Variable,
    errors,
    format_number,
    validate,
)
from .search import SearchConfig, SearchConfigError


class ProblemError(ValueError):
    """A problem text could not be turned into a valid :class:`ProblemSpec`.

    ``code`` names the kind of failure (``syntax-error``, ``unknown-variable``,
    ``dimension-mismatch``, ``malformed-fuzzy-literal`` ...); ``line`` and
    ``column`` are 1-based when known.
    """

    def __init__(self, code: str, message: str, line: int | None = None, column: int | None = None):
        self.code = code
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        where = ""
        if self.line is not None:
            where = f"line {self.line}"
            if self.column is not None:
                where += f", column {self.column}"
            where += ": "
        return f"{where}{self.code}: {self.message}"


_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(
    rf"\s*(?:(?P<number>{_NUMBER})|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],=])|(?P<bad>\S))"
)
_SIGNED_NUMBER = re.compile(rf"[+-]?{_NUMBER}\Z")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class _Token:
    kind: str  # number, ident, op, end
    text: str
    column: int  # 0-based within the parsed fragment


def _tokenize(text: str, line: int | None, offset: int) -> list[_Token]:
    tokens = []
    pos = 0
    while True:
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        kind = match.lastgroup
        start = match.start(kind)
        if kind == "bad":
            raise ProblemError("syntax-error", f"unexpected character {match.group(kind)!r}",
                               line, offset + start + 1)
        tokens.append(_Token(kind, match.group(kind), start))
        pos = match.end()
    tokens.append(_Token("end", "", len(text.rstrip())))
    return tokens


class _ExpressionParser:
    def __init__(self, text: str, names: Sequence[str], line: int | None = None, offset: int = 0):
        self.names = list(names)
        self.line = line
        self.offset = offset
        self.tokens = _tokenize(text, line, offset)
        self.pos = 0

    @property
    def token(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, code: str, message: str, token: _Token | None = None) -> ProblemError:
        token = token or self.token
        return ProblemError(code, message, self.line, self.offset + token.column + 1)

    def expect(self, text: str) -> _Token:
        if self.token.text != text or self.token.kind == "end":
            found = self.token.text or "end of line"
            raise self.error("syntax-error", f"expected {text!r}, found {found!r}")
        return self.advance()

    def at(self, *texts: str) -> bool:
        return self.token.kind == "op" and self.token.text in texts

    def finish(self):
        if self.token.kind != "end":
            raise self.error("syntax-error", f"unexpected {self.token.text!r}")

    def equation(self) -> Equation:
        lhs = self.expression()
        self.expect("=")
        rhs = self.expression()
        self.finish()
        return Equation(lhs, rhs)

    def expression(self) -> Expression:
        left = self.term()
        items = None
        while self.at("+", "-"):
            op = self.advance().text
            right = self.term()
            if op == "-":
                right = Negate(right)
            if items is None:
                items = [left]
            items.append(right)
        return Sum(tuple(items)) if items else left

    def term(self) -> Expression:
        left = self.unary()
        factors = None
        while self.at("*", "/"):
            op = self.advance().text
            right = self.unary()
            if op == "*":
                if factors is None:
                    factors = [left]
                factors.append(right)
            else:
                numerator = Product(tuple(factors)) if factors else left
                factors = None
                left = Quotient(numerator, right)
        return Product(tuple(factors)) if factors else left

    def unary(self) -> Expression:
        if self.at("-"):
            self.advance()
            return Negate(self.unary())
        if self.at("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.at("^"):
            self.advance()
            return Power(base, self.exponent())
        return base

    def exponent(self) -> int:
        token = self.token
        if token.kind != "number" or not token.text.isdigit():
            found = token.text or "end of line"
            raise self.error("bad-exponent",
                             f"exponent must be a non-negative integer literal, found {found!r}")
        self.advance()
        value = int(token.text)
        if self.at("^"):
            self.advance()
            value = value ** self.exponent()
        return value

    def atom(self) -> Expression:
        token = self.token
        if token.kind == "number":
            self.advance()
            return CrispConstant(float(token.text))
        if token.kind == "ident":
            self.advance()
            if token.text not in self.names:
                raise self.error("unknown-variable", f"unknown variable {token.text}", token)
            return Variable(self.names.index(token.text))
        if self.at("("):
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        if self.at("["):
            return self.fuzzy_literal()
        found = token.text or "end of line"
        raise self.error("syntax-error", f"expected a number, variable or '(', found {found!r}")

    def fuzzy_literal(self) -> FuzzyConstant:
        opening = self.advance()
        values = []
        while True:
            sign = 1.0
            if self.at("-", "+"):
                sign = -1.0 if self.advance().text == "-" else 1.0
            if self.token.kind != "number":
                raise self.error("malformed-fuzzy-literal", "fuzzy literal components must be numbers")
            values.append(sign * float(self.advance().text))
            if self.at(","):
                self.advance()
                continue
            if self.at("]"):
                self.advance()
                break
            raise self.error("malformed-fuzzy-literal", "expected ',' or ']' in fuzzy literal")
        if len(values) != 3:
            raise self.error("malformed-fuzzy-literal",
                             f"fuzzy literal needs exactly three components, got {len(values)}", opening)
        try:
            return FuzzyConstant(TriangularFuzzyNumber(*values))
        except FuzzyConstructionError:
            raise self.error("malformed-fuzzy-literal",
                             f"fuzzy literal {values} is not sorted as left <= peak <= right",
                             opening) from None


def parse_expression(text: str, names: Sequence[str]) -> Expression:
    parser = _ExpressionParser(text, names)
    expr = parser.expression()
    parser.finish()
    return expr


def parse_equation(text: str, names: Sequence[str]) -> Equation:
    return _ExpressionParser(text, names).equation()


_DIRECTIVES = ("vars", "eq", "init", "step", "eps", "reduction", "max_evals")


def _parse_numbers(body: str, lineno: int, column: int) -> list[float]:
    out = []
    for word in body.split():
        if not _SIGNED_NUMBER.match(word):
            raise ProblemError("syntax-error", f"not a number: {word!r}", lineno, column)
        out.append(float(word))
    return out


def parse_problem(text: str) -> ProblemSpec:
    """Parse and validate a problem file.

    Raises :class:`ProblemError` on the first problem found.
    """
    names: list[str] | None = None
    equations: list[Equation] = []
    settings: dict[str, tuple[object, int]] = {}
    seen_directive = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, colon, body = line.partition(":")
        key = key.strip()
        column = len(line) - len(line.lstrip()) + 1
        if not colon or key not in _DIRECTIVES:
            raise ProblemError("syntax-error", f"expected one of {', '.join(_DIRECTIVES)} followed by ':'",
                               lineno, column)
        body_offset = len(key) + line.index(key) + 1

        if key == "vars":
            if seen_directive:
                raise ProblemError("misplaced-vars", "'vars:' must be the first directive and appear once",
                                   lineno, column)
            names = body.split()
            if not names:
                raise ProblemError("missing-vars", "'vars:' lists no variables", lineno, column)
            for name in names:
                if not _IDENT.match(name):
                    raise ProblemError("syntax-error", f"invalid variable name {name!r}",
                                       lineno, body_offset + body.index(name) + 1)
            if len(set(names)) != len(names):
                raise ProblemError("duplicate-variable", "variable names must be unique", lineno, column)
        elif key == "eq":
            parser = _ExpressionParser(body, names or [], lineno, body_offset)
            equations.append(parser.equation())
        else:
            if key in settings:
                raise ProblemError("duplicate-directive", f"'{key}:' given more than once", lineno, column)
            values = _parse_numbers(body, lineno, body_offset + 1)
            if key in ("eps", "reduction", "max_evals") and len(values) != 1:
                raise ProblemError("syntax-error", f"'{key}:' takes exactly one number", lineno, column)
            if key == "max_evals" and not body.strip().isdigit():
                raise ProblemError("invalid-config", "'max_evals:' must be a positive integer",
                                   lineno, column)
            settings[key] = (values, lineno)
        seen_directive = True

    if names is None:
        raise ProblemError("missing-vars", "no 'vars:' line")
    if not equations:
        raise ProblemError("empty-system", "no 'eq:' lines")

    n = len(names)
    for key in ("init", "step"):
        if key in settings:
            values, lineno = settings[key]
            if len(values) != n:
                raise ProblemError("dimension-mismatch",
                                   f"'{key}:' has {len(values)} values for {n} variables", lineno)

    def scalar(key, default):
        return settings[key][0][0] if key in settings else default

    try:
        config = SearchConfig(
            initial_point=tuple(settings["init"][0]) if "init" in settings else (0.0,) * n,
            step=tuple(settings["step"][0]) if "step" in settings else (search.DEFAULT_STEP,) * n,
            eps=scalar("eps", search.DEFAULT_EPS),
            reduction=scalar("reduction", search.DEFAULT_REDUCTION),
            max_evaluations=int(scalar("max_evals", search.DEFAULT_MAX_EVALUATIONS)),
        )
    except SearchConfigError as exc:
        raise ProblemError("invalid-config", str(exc)) from None

    spec = ProblemSpec(FuzzySystem(tuple(names), tuple(equations)), config)
    problems = errors(validate(spec.system))
    if problems:
        first = problems[0]
        raise ProblemError(first.code, first.message)
    return spec


def format_problem(spec: ProblemSpec) -> str:
    names = spec.system.variables
    cfg = spec.config
    lines = ["vars: " + " ".join(names)]
    lines += ["eq: " + eq.to_text(names) for eq in spec.system.equations]
    lines.append("init: " + " ".join(format_number(v) for v in cfg.initial_point))
    lines.append("step: " + " ".join(format_number(v) for v in cfg.step))
    lines.append(f"eps: {format_number(cfg.eps)}")
    lines.append(f"reduction: {format_number(cfg.reduction)}")
    lines.append(f"max_evals: {cfg.max_evaluations}")
    return "\n".join(lines) + "\n"
