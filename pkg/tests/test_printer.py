import random

from mathpar.astnodes import (
    Assign,
    BinOp,
    Call,
    ListLit,
    Neg,
    NumberLit,
    Program,
    Relation,
    VarRef,
)
from mathpar.parser import parse_source
from mathpar.printer import print_latex, print_mathpar

PAPER_SCRIPTS = [
    r"""SPACE = R64[x, y];
f = \sin(x^2 + \tg(y^3 + x));
g = \value(f, [1, 2]);
\print(g);""",
    r"""SPACE = R[x, y];
f = x^2 + y^2;
g = \value(f, [\sin(x), \cos(x)]);
\Factor(g);""",
    r"""SPACE = Q[x];
f = (2x^2 + 1)^3;
l = \int(f) d x;
dl = \D(l, x);
d2l = \D(l, x^2);
\print(f, l, dl, d2l);""",
    r"""SPACE = R[x, y];
f = x^2 + 5x(y^3 + x);
g = \value(f, [1, 2]);""",
    r"""SPACE = C64[x];
FLOATPOS = 2;
b = \solve(x^4 + 2x + 1 = 0);""",
    r"""SPACE = R[x];
b = \solve((x + 1)^2(x - 3)(x + 5) \ge 0);""",
    r"""SPACE = Z[x, y, z];
\gbasis(x^4y^3 + 2xy^2 + 3x + 1, x^3y^2 + x^2, x^4y + z^2+xy^4 + 3);""",
    r"""SPACE = R[x, y];
\solveNAE(x^2 + y^2 - 4, y - x^2);""",
    r"""SPACE = ZMaxMult[x, y];
a = 2; b = 9;
c = a + b; d = a b;
\print(c, d)""",
]


def roundtrip(program):
    return parse_source(print_mathpar(program))


def test_roundtrip_paper_corpus():
    for script in PAPER_SCRIPTS:
        program = parse_source(script)
        assert roundtrip(program) == program, script


def test_print_assignment():
    assert print_mathpar(Assign("c", NumberLit("9"))) == "c = 9"


def test_print_power():
    assert print_mathpar(BinOp("pow", VarRef("x"), NumberLit("2"))) == "x^2"


def test_print_rational_coefficient_term():
    node = BinOp("mul",
                 BinOp("div", NumberLit("8"), NumberLit("7")),
                 BinOp("pow", VarRef("x"), NumberLit("7")))
    assert print_mathpar(node) == "(8/7)x^7"


def test_latex_fraction_and_power():
    node = BinOp("mul",
                 BinOp("div", NumberLit("8"), NumberLit("7")),
                 BinOp("pow", VarRef("x"), NumberLit("7")))
    assert print_latex(node) == r"\frac{8}{7}x^{7}"


def test_latex_number_atom():
    assert print_latex(NumberLit("2")) == "2"


def test_latex_imaginary_unit():
    assert print_latex(VarRef(r"\i")) == r"\mathbf{i}"


def test_latex_matrix_form():
    node = ListLit((ListLit((NumberLit("1"), NumberLit("2"))),
                    ListLit((NumberLit("3"), NumberLit("4")))))
    out = print_latex(node)
    assert out.startswith(r"\left(\begin{array}{cc}")
    assert out.endswith(r"\end{array}\right)")


def check_latex_balance(text):
    assert text.count("{") == text.count("}")
    assert text.count(r"\left") == text.count(r"\right")
    assert text.count(r"\begin") == text.count(r"\end")


# -- randomized round trip ----------------------------------------------------

NAMES = ["x", "y", "z", "t", "a", "b", "f", "g", "dl", "a_1", r"\alpha"]
FUNCS = [r"\sin", r"\cos", r"\tg", r"\ln", r"\exp"]


def random_expr(rng, depth):
    if depth <= 0:
        if rng.random() < 0.5:
            return NumberLit(rng.choice(["0", "1", "2", "9", "46.00", "0.5"]))
        return VarRef(rng.choice(NAMES))
    kind = rng.randrange(8)
    if kind < 3:
        op = rng.choice(["add", "sub", "mul", "div"])
        return BinOp(op, random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    if kind == 3:
        return BinOp("pow", random_expr(rng, depth - 1),
                     NumberLit(str(rng.randrange(10))))
    if kind == 4:
        return Neg(random_expr(rng, depth - 1))
    if kind == 5:
        return Call(rng.choice(FUNCS), (random_expr(rng, depth - 1),))
    if kind == 6:
        return ListLit(tuple(random_expr(rng, depth - 1)
                             for _ in range(rng.randrange(1, 4))))
    return random_expr(rng, depth - 1)


def random_statement(rng):
    e = random_expr(rng, rng.randrange(1, 5))
    if rng.random() < 0.4:
        return Assign(rng.choice(["a", "b", "f"]), e)
    if rng.random() < 0.2:
        return Relation(rng.choice(["eq", "le", "ge", "lt", "gt"]),
                        e, random_expr(rng, 2))
    return e


def test_roundtrip_generated_expressions():
    rng = random.Random(20140813)
    for _ in range(1000):
        program = Program((random_statement(rng),))
        printed = print_mathpar(program)
        reparsed = parse_source(printed)
        assert reparsed == program, printed
        check_latex_balance(print_latex(program))


def test_polynomial_canonical_form_round_trip():
    # printing a polynomial, re-parsing and re-evaluating is the identity
    import random as _random
    from fractions import Fraction

    from mathpar.printer import format_polynomial
    from mathpar.polynomial import Polynomial
    from mathpar.session import Environment, execute_section
    from mathpar.spaces import SpaceContext, resolve_algebra

    rng = _random.Random(7)
    ctx = SpaceContext(resolve_algebra("Q"), ("x", "y"), 2)
    env = Environment()
    execute_section(env, "SPACE = Q[x, y];")
    for _ in range(60):
        terms = {}
        for _ in range(rng.randint(1, 6)):
            mono = (rng.randint(0, 4), rng.randint(0, 4))
            coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if coeff:
                terms[mono] = coeff
        p = Polynomial(ctx, terms)
        if not p:
            continue
        text = format_polynomial(p, 2)
        result = execute_section(env, text + ";")
        assert result.ok, (text, result.diagnostics)
        env2 = Environment()
        execute_section(env2, f"SPACE = Q[x, y]; back = {text};")
        back = env2.bindings["back"].value
        if not isinstance(back, Polynomial):
            back = Polynomial.from_scalar(ctx, back)
        assert back == p, text
