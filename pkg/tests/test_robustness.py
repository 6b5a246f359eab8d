"""Adversarial and property checks that cut across modules: no input may
escape the diagnostic channel, errors carry accurate positions, division
quotients witness membership, and rendered LaTeX stays balanced."""

import random
from fractions import Fraction

import pytest

from mathpar.errors import MathparError, ParseError
from mathpar.lexer import tokenize
from mathpar.parser import parse
from mathpar.polynomial import Polynomial
from mathpar.printer import format_value, print_mathpar
from mathpar.session import Environment, execute_section
from mathpar.solvers import divide, normal_form
from mathpar.spaces import SpaceContext, resolve_algebra

from test_printer import PAPER_SCRIPTS, random_statement


def _latex_balanced(text):
    assert text.count("{") == text.count("}"), text
    assert text.count(r"\left") == text.count(r"\right"), text
    assert text.count(r"\begin") == text.count(r"\end"), text


def test_no_input_escapes_the_diagnostic_channel():
    """Random generated programs either run or produce positioned
    diagnostics; nothing raises through execute_section and nothing is an
    internal error."""
    from mathpar.astnodes import Program

    rng = random.Random(424242)
    for _ in range(400):
        program = Program((random_statement(rng),))
        source = print_mathpar(program)
        env = Environment()
        result = execute_section(env, source)
        for diag in result.diagnostics:
            assert "internal error" not in diag.message, (source, diag)
            assert diag.line >= 1 and diag.column >= 1


def test_adversarial_sections_stay_diagnosable():
    sources = [
        "\\value(\\solve(x^2 - 1 = 0), [1]);",
        "\\D(\\solve(x = 0), x);",
        "\\sin(\\gbasis(x));",
        "\\int(\\sin(x)) d x;",
        "SPACE = ZMaxPlus[x]; b = [1, 2]; b + 1;",
        "SPACE = ZMaxPlus[x]; \\findTheShortestPath([[0]], 5, 1);",
        "SPACE = ZMaxPlus[x]; a = 2 - 3;",
        "1/0;",
        "x^y;",
        "\\solve(\\sin(x) = 0);",
        "SPACE = Q[x]; \\Factor(\\solve(x = 0));",
        "\\print(\\print(1));",
        "\\value(x, [1, 2, 3, 4, 5]);",
        "SPACE = ZMaxMult[x, y]; a = -2;",
        "SPACE = C64[x]; \\solve(x^2 + 1 > 0);",
    ]
    for source in sources:
        env = Environment()
        result = execute_section(env, source)
        assert not result.ok, source
        for diag in result.diagnostics:
            assert "internal error" not in diag.message, (source, diag)


def test_parse_error_position_points_at_reported_lexeme():
    cases = [
        "a = 2;\nb = ;",
        "f = (2x^2;",
        "\\frobnicate(1);",
        "x + + 1;",
        "SPACE = Q[x y];",
        "[1, 2;",
    ]
    for source in cases:
        with pytest.raises(MathparError) as exc:
            parse(tokenize(source))
        err = exc.value
        assert err.line is not None and err.column is not None, source
        if isinstance(err, ParseError):
            lines = source.splitlines()
            line_text = lines[err.line - 1]
            offender = line_text[err.column - 1:]
            # the offending lexeme appears in the message
            token_head = offender.split()[0] if offender.split() else ""
            if token_head:
                assert token_head[0] in err.message or "input" in err.message, \
                    (source, err.message, token_head)


def test_divide_quotients_witness_membership():
    rng = random.Random(13)
    ctx = SpaceContext(resolve_algebra("Q"), ("x", "y"), 2)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 5)):
            terms[(rng.randint(0, 3), rng.randint(0, 3))] = \
                Fraction(rng.randint(-5, 5))
        return Polynomial(ctx, terms)

    for _ in range(60):
        f = rand_poly()
        basis = [p for p in (rand_poly(), rand_poly()) if p]
        if not basis:
            continue
        quotients, remainder = divide(f, basis)
        rebuilt = remainder
        for q, g in zip(quotients, basis):
            rebuilt = rebuilt.add(q.mul(g))
        assert rebuilt == f
        # and the remainder is fully reduced
        assert normal_form(remainder, basis) == remainder


def test_value_latex_is_balanced():
    scripts = PAPER_SCRIPTS + [
        "SPACE = ZMinPlus[x, y];\nA = [[\\infty, 2], [1, \\infty]];\n"
        "\\searchLeastDistances(A);",
        "SPACE = Q[x];\n\\Factor(x^2 - 1);",
        "SPACE = Q[x];\n\\int((2x^2 + 1)^3) d x;",
    ]
    for script in scripts:
        env = Environment()
        result = execute_section(env, script)
        assert result.ok, (script, result.diagnostics)
        for output in result.outputs:
            _latex_balanced(output.latex)


def test_format_value_latex_matrix_and_intervals():
    env = Environment()
    result = execute_section(
        env, "SPACE = R[x];\nb = \\solve((x + 1)^2(x - 3)(x + 5) \\ge 0);")
    interval_latex = result.outputs[0].latex
    assert interval_latex == r"(-\infty, -5]\cup\{-1\}\cup[3, \infty)"
    env2 = Environment()
    result2 = execute_section(
        env2, "SPACE = R[x, y];\n\\solveNAE(x^2 + y^2 - 4, y - x^2);")
    latex = result2.outputs[0].latex
    assert latex.startswith(r"\left(\begin{array}{cc}")
    assert latex.endswith(r"\end{array}\right)")
    assert latex.count(r" \\ ") == 3  # four rows
    assert r"\mathbf{i}" in latex
    _latex_balanced(latex)


def test_internal_error_guard_reports_instead_of_raising(monkeypatch):
    import mathpar.session as session_mod

    def explode(*args, **kwargs):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(session_mod, "eval_expr", explode)
    env = Environment()
    result = execute_section(env, "a = 1;")
    assert not result.ok
    assert "internal error" in result.diagnostics[0].message
    assert "synthetic failure" in result.diagnostics[0].message
