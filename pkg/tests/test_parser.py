import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzyiods.fuzzy import TriangularFuzzyNumber
from fuzzyiods.model import (
    CrispConstant,
    Equation,
    FuzzyConstant,
    Negate,
    Power,
    Product,
    Quotient,
    Sum,
    Variable,
    to_text,
)
from fuzzyiods.parser import ProblemError, format_problem, parse_equation, parse_expression, parse_problem

from conftest import SECTION4_TEXT

NAMES = ["x1", "x2"]
x1, x2 = Variable(0), Variable(1)


def c(v):
    return CrispConstant(float(v))


def test_section4_problem(section4):
    system, cfg = section4.system, section4.config
    assert system.variables == ("x1", "x2")
    assert system.equations[0] == Equation(
        Sum((Power(x1, 2), x2)), FuzzyConstant(TriangularFuzzyNumber(2, 5, 8))
    )
    assert system.equations[1] == Equation(
        Sum((Power(x1, 2), Power(x2, 2))), FuzzyConstant(TriangularFuzzyNumber(3, 6, 9))
    )
    assert cfg.initial_point == (1.0, 1.0)
    assert cfg.step == (0.5, 0.5)
    assert cfg.eps == 0.001
    assert cfg.reduction == 2.0
    assert cfg.max_evaluations == 100_000


def test_one_variable_degenerate():
    spec = parse_problem("vars: x\neq: x = [1,1,1]\ninit: 0\nstep: 1\neps: 0.001\n")
    assert spec.system.n == 1
    assert spec.system.is_crisp
    assert spec.config.initial_point == (0.0,)


def test_defaults():
    spec = parse_problem("vars: a b c\neq: a + b + c = 1\n")
    assert spec.config.initial_point == (0.0, 0.0, 0.0)
    assert spec.config.step == (0.5, 0.5, 0.5)
    assert spec.config.eps == 0.001


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x1 - x2", Sum((x1, Negate(x2)))),
        ("-x1^2", Negate(Power(x1, 2))),
        ("-x1 * x2", Product((Negate(x1), x2))),
        ("x1 * -x2", Product((x1, Negate(x2)))),
        ("x1^2^3", Power(x1, 8)),
        ("(x1^2)^3", Power(Power(x1, 2), 3)),
        ("x1 / x2 / 2", Quotient(Quotient(x1, x2), c(2))),
        ("x1 * x2 / 2 * x1", Product((Quotient(Product((x1, x2)), c(2)), x1))),
        ("2 * (x1 + x2)", Product((c(2), Sum((x1, x2))))),
        ("(x1 + x2) + 1", Sum((Sum((x1, x2)), c(1)))),
        ("[-1, 0, 1.5] * x1", Product((FuzzyConstant(TriangularFuzzyNumber(-1, 0, 1.5)), x1))),
        ("1e-3 + .5", Sum((c(0.001), c(0.5)))),
        ("+x1", x1),
    ],
)
def test_expression_structure(text, expected):
    assert parse_expression(text, NAMES) == expected


ROUND_TRIP_CORPUS = [
    SECTION4_TEXT,
    "vars: x\neq: x = [1, 1, 1]\ninit: 0\nstep: 1\n",
    "vars: x y\neq: -x + -(-y) = [-2, -2, -2]\neq: x*y - y/x = 0\n",
    "vars: x y\neq: ((x^2)^3)^2 + y^2^2 = [0, 1, 2]\neq: -(x - y)^2 = -1\n",
    "vars: u v w\neq: u*v*w - (u*v)*w + u*(v*w) = 1\neq: u/(v/w) - (u/v)/w = [0, 0.5, 1]\n"
    "eq: [1,2,3]*u^2 - [0,0,0] = w\nreduction: 3\nmax_evals: 500\neps: 1e-6\n",
    "vars: a\neq: 1 - (a - 2) - (3 - a) = 1.25e-7 # trailing comment\n",
]


@pytest.mark.parametrize("text", ROUND_TRIP_CORPUS)
def test_round_trip_corpus(text):
    first = parse_problem(text)
    printed = format_problem(first)
    second = parse_problem(printed)
    assert second == first
    assert format_problem(second) == printed


@pytest.mark.parametrize(
    "text, code, line",
    [
        ("eq: y = [1,2,3]\n", "unknown-variable", 1),
        ("vars: x\neq: x + y = 1\n", "unknown-variable", 2),
        ("vars: x\neq: x + = 1\n", "syntax-error", 2),
        ("vars: x\neq: x = 1 = 2\n", "syntax-error", 2),
        ("vars: x\neq: (x = 1\n", "syntax-error", 2),
        ("vars: x\neq: x $ 2 = 1\n", "syntax-error", 2),
        ("vars: x\nfoo: 1\neq: x = 1\n", "syntax-error", 2),
        ("vars: x y\neq: x = y\ninit: 1\n", "dimension-mismatch", 3),
        ("vars: x y\neq: x = y\nstep: 1 2 3\n", "dimension-mismatch", 3),
        ("vars: x\neq: x = [3, 2, 1]\n", "malformed-fuzzy-literal", 2),
        ("vars: x\neq: x = [1, 2]\n", "malformed-fuzzy-literal", 2),
        ("vars: x\neq: x = [1, x, 2]\n", "malformed-fuzzy-literal", 2),
        ("vars: x\neq: x^2.5 = 1\n", "bad-exponent", 2),
        ("vars: x\neq: x^-1 = 1\n", "bad-exponent", 2),
        ("vars: x\neq: x^y = 1\n", "bad-exponent", 2),
        ("eq: 1 = 1\n", "missing-vars", None),
        ("vars:\neq: 1 = 1\n", "missing-vars", 1),
        ("vars: x\n", "empty-system", None),
        ("vars: x\neq: x = 1\nvars: y\n", "misplaced-vars", 3),
        ("vars: x x\neq: x = 1\n", "duplicate-variable", 1),
        ("vars: x\neq: x = 1\neps: 1\neps: 2\n", "duplicate-directive", 4),
        ("vars: x\neq: x = 1\nreduction: 1\n", "invalid-config", None),
        ("vars: x\neq: x = 1\neps: 0\n", "invalid-config", None),
        ("vars: x\neq: x = 1\nstep: -1\n", "invalid-config", None),
        ("vars: x\neq: x = 1\nmax_evals: 2.5\n", "invalid-config", 3),
        ("vars: x\neq: x = 1\ninit: one\n", "syntax-error", 3),
    ],
)
def test_error_productions(text, code, line):
    with pytest.raises(ProblemError) as info:
        parse_problem(text)
    assert info.value.code == code
    assert info.value.line == line


def test_unknown_variable_message_names_it():
    with pytest.raises(ProblemError, match="unknown variable y"):
        parse_problem("eq: y = [1,2,3]")


def test_error_column():
    with pytest.raises(ProblemError) as info:
        parse_problem("vars: x\neq: x + zz = 1\n")
    assert (info.value.line, info.value.column) == (2, 9)


# --- generated trees --------------------------------------------------------

_number = st.floats(min_value=0, max_value=1e6, allow_nan=False) | st.integers(0, 20).map(float)


@st.composite
def _fuzzy(draw):
    a, b, cc = sorted(draw(st.lists(st.floats(-50, 50), min_size=3, max_size=3)))
    return FuzzyConstant(TriangularFuzzyNumber(a, b, cc))


_leaves = st.one_of(
    _number.map(CrispConstant),
    st.sampled_from([x1, x2]),
    _fuzzy(),
)


def _extend(children):
    many = st.lists(children, min_size=2, max_size=4).map(tuple)
    return st.one_of(
        children.map(Negate),
        many.map(Sum),
        many.map(Product),
        st.builds(Quotient, children, children),
        st.builds(Power, children, st.integers(0, 4)),
    )


expressions = st.recursive(_leaves, _extend, max_leaves=12)


@settings(max_examples=300)
@given(expressions)
def test_printed_tree_reparses_to_itself(expr):
    assert parse_expression(to_text(expr, NAMES), NAMES) == expr


@settings(max_examples=100)
@given(expressions, expressions)
def test_printed_equation_reparses(lhs, rhs):
    eq = Equation(lhs, rhs)
    assert parse_equation(eq.to_text(NAMES), NAMES) == eq
