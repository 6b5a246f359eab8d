import pytest

from mathpar.astnodes import (
    Assign,
    BinOp,
    Call,
    ConfigDecl,
    ListLit,
    Neg,
    NumberLit,
    Relation,
    SpaceDecl,
    TextComment,
    VarRef,
)
from mathpar.errors import ParseError, UnknownCommandError
from mathpar.parser import parse_source


def stmt(source):
    program = parse_source(source)
    assert len(program.statements) == 1, program
    return program.statements[0]


def num(t):
    return NumberLit(t)


def var(n):
    return VarRef(n)


def test_single_variable():
    assert stmt("x") == var("x")


def test_power_expansion_shape():
    # f = (2x^2 + 1)^3
    expected = Assign(
        "f",
        BinOp("pow",
              BinOp("add",
                    BinOp("mul", num("2"), BinOp("pow", var("x"), num("2"))),
                    num("1")),
              num("3")))
    assert stmt("f = (2x^2 + 1)^3;") == expected


def test_derivative_call():
    expected = Call(r"\D", (var("l"), BinOp("pow", var("x"), num("2"))))
    assert stmt(r"\D(l, x^2)") == expected


def test_int_captures_differential_suffix():
    node = stmt(r"l = \int(f) d x;")
    assert node == Assign("l", Call(r"\int", (var("f"),), "x"))


def test_implicit_multiplication_binds_like_explicit():
    # x^4y^3 parses as (x^4)(y^3)
    expected = BinOp("mul",
                     BinOp("pow", var("x"), num("4")),
                     BinOp("pow", var("y"), num("3")))
    assert stmt("x^4y^3") == expected
    assert stmt("x^4 y^3") == expected
    assert stmt("x^4*y^3") == expected


def test_implicit_multiplication_left_assoc():
    # 5x(y^3+x) = (5*x)*(y^3+x)
    expected = BinOp(
        "mul",
        BinOp("mul", num("5"), var("x")),
        BinOp("add", BinOp("pow", var("y"), num("3")), var("x")))
    assert stmt("5x(y^3+x)") == expected


def test_unary_minus_below_multiplication():
    assert stmt("-2x") == Neg(BinOp("mul", num("2"), var("x")))
    assert stmt("-x^2") == Neg(BinOp("pow", var("x"), num("2")))


def test_relations():
    node = stmt(r"\solve((x + 1)^2(x - 3)(x + 5) \ge 0);")
    assert isinstance(node, Call)
    rel = node.args[0]
    assert isinstance(rel, Relation) and rel.op == "ge"
    assert rel.rhs == num("0")


def test_equation_inside_call():
    node = stmt(r"\solve(x^4 + 2x + 1 = 0);")
    rel = node.args[0]
    assert isinstance(rel, Relation) and rel.op == "eq"


def test_assignment_vs_equation():
    assert isinstance(stmt("a = 2;"), Assign)
    # inside parentheses '=' is an equation
    inner = stmt("(a = 2)")
    assert isinstance(inner, Relation) and inner.op == "eq"


def test_space_decl():
    node = stmt("SPACE = ZMaxMult[x, y];")
    assert node == SpaceDecl("ZMaxMult", ("x", "y"))


def test_floatpos_decl():
    assert stmt("FLOATPOS = 2;") == ConfigDecl("FLOATPOS", 2)


def test_statements_split_on_semicolon_and_comment():
    program = parse_source('a = 2 "now b" b = 3;')
    assert [type(s) for s in program.statements] == [Assign, TextComment, Assign]


def test_matrix_literal():
    node = stmt("[[0, 1], [2, 3]]")
    assert isinstance(node, ListLit)
    assert len(node.elements) == 2
    assert all(isinstance(r, ListLit) for r in node.elements)


def test_infinity_and_greek_accepted():
    node = stmt(r"[\infty, -\infty]")
    assert node.elements[0] == var(r"\infty")
    assert node.elements[1] == Neg(var(r"\infty"))
    assert stmt(r"\alpha + 1") == BinOp("add", var(r"\alpha"), num("1"))


def test_noncommutative_names_parse():
    assert stmt(r"\A") == var(r"\A")


def test_unknown_command_rejected():
    with pytest.raises(UnknownCommandError):
        parse_source(r"\frobnicate(x)")


def test_unbalanced_parens():
    with pytest.raises(ParseError) as exc:
        parse_source("f = (2x^2 + 1;")
    assert "parenthes" in str(exc.value) or "')'" in str(exc.value)


def test_error_position_points_at_offender():
    with pytest.raises(ParseError) as exc:
        parse_source("a = 2;\nb = ;")
    assert exc.value.line == 2


def test_implicit_mult_never_crosses_semicolon():
    program = parse_source("a = 2; x")
    assert len(program.statements) == 2


def test_implicit_mult_never_crosses_relation():
    node = stmt("x y > z t")
    assert isinstance(node, Relation)
    assert node.lhs == BinOp("mul", var("x"), var("y"))
    assert node.rhs == BinOp("mul", var("z"), var("t"))


def test_trailing_semicolon_optional():
    program = parse_source(r"a = 2; \print(a)")
    assert len(program.statements) == 2
