import random
from fractions import Fraction

import pytest

from mathpar.errors import DomainMismatchError
from mathpar.polynomial import Polynomial, poly_divmod_univariate
from mathpar.spaces import SpaceContext, resolve_algebra


def ctx(algebra, *variables, floatpos=2):
    return SpaceContext(resolve_algebra(algebra), tuple(variables), floatpos)


QX = ctx("Q", "x")
QXY = ctx("Q", "x", "y")


def var(c, name):
    return Polynomial.from_variable(c, name)


def const(c, v):
    return Polynomial.from_scalar(c, v)


def test_power_expansion():
    x = var(QX, "x")
    f = const(QX, 2).mul(x.pow(2)).add(const(QX, 1)).pow(3)
    expected = {(6,): 8, (4,): 12, (2,): 6, (0,): 1}
    assert {m: c for m, c in f.terms.items()} == expected


def test_additive_identity():
    x = var(QXY, "x")
    p = x.pow(2).add(var(QXY, "y"))
    assert p.add(Polynomial.zero(QXY)) == p


def test_difference_of_squares():
    x, y = var(QXY, "x"), var(QXY, "y")
    prod = x.add(y).mul(x.sub(y))
    assert prod == x.pow(2).sub(y.pow(2))


def test_no_zero_coefficients_stored():
    x = var(QX, "x")
    p = x.sub(x)
    assert p.terms == {}
    q = x.add(const(QX, 1)).mul(x.sub(const(QX, 1)))
    assert all(c != 0 for c in q.terms.values())


def test_canonical_term_order_last_variable_heaviest():
    c3 = ctx("Q", "x", "y", "z")
    z2 = var(c3, "z").pow(2)
    x4 = var(c3, "x").pow(4)
    p = z2.add(x4)
    monos = [m for m, _ in p.sorted_terms()]
    assert monos[0] == (0, 0, 2)  # z^2 ahead of x^4 under lex z > y > x
    assert monos[1] == (4, 0, 0)


def test_context_mismatch_rejected():
    with pytest.raises(DomainMismatchError):
        var(QX, "x").add(var(QXY, "x"))


def test_integrate_promotes_z_to_q():
    zx = ctx("Z", "x")
    p = var(zx, "x")  # x over Z
    ip = p.integrate(0)
    assert ip.context.algebra.name == "Q"
    assert ip.terms == {(2,): Fraction(1, 2)}


def test_integration_example():
    x = var(QX, "x")
    f = (const(QX, 8).mul(x.pow(6))
         .add(const(QX, 12).mul(x.pow(4)))
         .add(const(QX, 6).mul(x.pow(2)))
         .add(const(QX, 1)))
    antideriv = f.integrate(0)
    assert antideriv.terms == {
        (7,): Fraction(8, 7), (5,): Fraction(12, 5), (3,): 2, (1,): 1}


def test_integrate_zero():
    assert Polynomial.zero(QX).integrate(0).terms == {}


def test_integrate_cross_variable():
    # d/dy of the antiderivative recovers the integrand
    p = var(QXY, "x")
    ip = p.integrate(1)  # integrate x with respect to y
    assert ip.terms == {(1, 1): 1}
    assert ip.derivative(1) == p


def test_fundamental_theorem_randomized():
    rng = random.Random(42)
    for _ in range(200):
        terms = {}
        for _ in range(rng.randint(1, 6)):
            mono = (rng.randint(0, 7),)
            coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if coeff:
                terms[mono] = terms.get(mono, 0) + coeff
        p = Polynomial(QX, terms)
        assert p.integrate(0).derivative(0) == p


def test_derivative_orders():
    x = var(QX, "x")
    l = (const(QX, Fraction(8, 7)).mul(x.pow(7))
         .add(const(QX, Fraction(12, 5)).mul(x.pow(5)))
         .add(const(QX, 2).mul(x.pow(3)))
         .add(x))
    dl = l.derivative(0)
    assert dl.terms == {(6,): 8, (4,): 12, (2,): 6, (0,): 1}
    d2l = l.derivative(0, 2)
    assert d2l.terms == {(5,): 48, (3,): 48, (1,): 12}


def test_derivative_of_constant():
    assert const(QX, 7).derivative(0).terms == {}


def test_divmod_univariate_exact():
    x = var(QX, "x")
    product = x.sub(const(QX, 1)).mul(x.add(const(QX, 3)))
    q, r = poly_divmod_univariate(product, x.sub(const(QX, 1)), 0)
    assert not r
    assert q == x.add(const(QX, 3))


def test_eval_complex():
    x = var(QX, "x")
    p = x.pow(4).add(const(QX, 2).mul(x)).add(const(QX, 1))
    assert abs(p.eval_complex([-1.0 + 0j])) < 1e-12
