"""Sparse multivariate polynomials over the active Space.

Monomials are exponent tuples aligned to the Space's variable list.  The
canonical term order is lexicographic with the LAST declared variable most
significant (x < y < z means z is heaviest), descending for display and
for Groebner computations.
"""

from fractions import Fraction

from .errors import (
    DomainMismatchError,
    DivisionByZeroError,
    NonPolynomialIntegrandError,
)
from .spaces import ClassicalAlgebra, Real, SpaceContext, coerce_scalar


def mono_key(mono):
    """Sort key for the lex order: most significant variable is the last one."""
    return tuple(reversed(mono))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(mono):
    return sum(mono)


class Polynomial:
    """Immutable-by-convention term map from exponent tuples to coefficients."""

    __slots__ = ("context", "terms")

    def __init__(self, context, terms=None, prune=True):
        self.context = context
        if terms is None:
            self.terms = {}
        elif prune:
            self.terms = {m: c for m, c in terms.items() if not _is_zero(c)}
        else:
            self.terms = terms

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, context):
        return cls(context, {}, prune=False)

    @classmethod
    def from_scalar(cls, context, value):
        value = _unwrap(coerce_scalar(context.algebra, value))
        if _is_zero(value):
            return cls.zero(context)
        unit = (0,) * len(context.variables)
        return cls(context, {unit: value}, prune=False)

    @classmethod
    def from_variable(cls, context, name):
        try:
            i = context.variables.index(name)
        except ValueError:
            raise DomainMismatchError(
                f"{name} is not a variable of {context.name}") from None
        mono = tuple(1 if j == i else 0 for j in range(len(context.variables)))
        one = _unwrap(coerce_scalar(context.algebra, 1))
        return cls(context, {mono: one}, prune=False)

    # -- basic protocol -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial)
                and self.context.same_space(other.context)
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({self.terms!r})"

    def _check_context(self, other):
        if not self.context.same_space(other.context):
            raise DomainMismatchError(
                f"polynomials from different spaces: {self.context.name} "
                f"vs {other.context.name}")

    # -- arithmetic ------------------------------------------------------------

    def add(self, other):
        self._check_context(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if _is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        return Polynomial(self.context, terms, prune=False)

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        return Polynomial(self.context, {m: -c for m, c in self.terms.items()},
                          prune=False)

    def mul(self, other):
        self._check_context(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if _is_zero(s):
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return Polynomial(self.context, terms, prune=False)

    def scale(self, coeff):
        if _is_zero(coeff):
            return Polynomial.zero(self.context)
        return Polynomial(self.context,
                          {m: c * coeff for m, c in self.terms.items()})

    def mul_term(self, coeff, mono):
        if _is_zero(coeff):
            return Polynomial.zero(self.context)
        return Polynomial(self.context,
                          {mono_mul(m, mono): c * coeff
                           for m, c in self.terms.items()}, prune=False)

    def pow(self, n):
        if n < 0:
            raise DomainMismatchError("polynomial powers need n >= 0")
        result = Polynomial.from_scalar(self.context, 1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            base = base.mul(base) if n > 1 else base
            n >>= 1
        return result

    # -- structure ---------------------------------------------------------------

    def sorted_terms(self):
        """Terms in canonical descending order."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]),
                      reverse=True)

    def leading(self):
        """(monomial, coefficient) of the leading term; None for zero."""
        if not self.terms:
            return None
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def degree_in(self, index):
        return max((m[index] for m in self.terms), default=0)

    def total_degree(self):
        return max((mono_degree(m) for m in self.terms), default=0)

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def is_constant(self):
        return all(mono_degree(m) == 0 for m in self.terms)

    def constant_value(self):
        unit = (0,) * len(self.context.variables)
        return self.terms.get(unit, _domain_zero(self.context))

    # -- calculus -----------------------------------------------------------------

    def derivative(self, index, order=1):
        p = self
        for _ in range(order):
            terms = {}
            for m, c in p.terms.items():
                e = m[index]
                if e == 0:
                    continue
                dm = m[:index] + (e - 1,) + m[index + 1:]
                s = terms.get(dm, 0) + c * e
                if _is_zero(s):
                    terms.pop(dm, None)
                else:
                    terms[dm] = s
            p = Polynomial(self.context, terms, prune=False)
        return p

    def integrate(self, index):
        """Termwise antiderivative with integration constant 0.

        Coefficients in Z are promoted to Q so the division is total."""
        context = self.context
        if isinstance(context.algebra, ClassicalAlgebra) and context.algebra.name == "Z":
            context = SpaceContext(ClassicalAlgebra("Q"), context.variables,
                                   context.floatpos)
        terms = {}
        for m, c in self.terms.items():
            e = m[index] + 1
            im = m[:index] + (e,) + m[index + 1:]
            terms[im] = _divide_coeff(context.algebra, c, e)
        return Polynomial(context, terms)

    # -- conversion / evaluation ----------------------------------------------------

    def convert(self, context):
        """Re-home into another space; variables map by name."""
        if self.context.same_space(context):
            return self
        mapping = []
        for i, name in enumerate(self.context.variables):
            if any(m[i] for m in self.terms):
                if name not in context.variables:
                    raise DomainMismatchError(
                        f"variable {name} does not exist in {context.name}")
                mapping.append((i, context.variables.index(name)))
        width = len(context.variables)
        terms = {}
        for m, c in self.terms.items():
            nm = [0] * width
            for i, j in mapping:
                nm[j] = m[i]
            terms[tuple(nm)] = _unwrap(coerce_scalar(context.algebra, c))
        return Polynomial(context, terms)

    def substitute_scalars(self, values):
        """Evaluate at a full point given as raw coefficient-domain scalars."""
        total = _domain_zero(self.context)
        for m, c in self.terms.items():
            acc = c
            for i, e in enumerate(m):
                if e:
                    acc = acc * values[i] ** e
            total = total + acc
        return total

    def eval_complex(self, values):
        """Numeric evaluation at a complex point (used by solvers)."""
        total = 0j
        for m, c in self.terms.items():
            acc = complex(c)
            for i, e in enumerate(m):
                if e:
                    acc *= values[i] ** e
            total += acc
        return total


def _is_zero(c):
    return c == 0


def _unwrap(v):
    return v.value if isinstance(v, Real) else v


def _domain_zero(context):
    return _unwrap(coerce_scalar(context.algebra, 0))


def _divide_coeff(algebra, c, n):
    name = algebra.name
    if name in ("Q", "R"):
        return Fraction(c) / n
    if name == "Z":
        raise NonPolynomialIntegrandError("integration needs a field")
    if name == "R64":
        return c / n
    if name == "C64":
        return c / n
    raise DomainMismatchError(f"cannot integrate over {name}")


def poly_gcd_univariate(p, q, index):
    """Monic gcd of two univariate polynomials in the given variable (exact
    coefficient domains only)."""
    a, b = p, q
    while b:
        a, b = b, poly_mod_univariate(a, b, index)
    if not a:
        return a
    _, lc = a.leading()
    return a.scale(Fraction(1) / Fraction(lc))


def squarefree_decomposition(p, index):
    """Yun's algorithm over Q: [(monic square-free factor, multiplicity)]."""
    def monic(f):
        lead = f.leading()
        if lead is None or lead[1] == 1:
            return f
        return f.scale(Fraction(1) / Fraction(lead[1]))

    dp = p.derivative(index)
    g = poly_gcd_univariate(p, dp, index)
    if g.is_constant():
        return [(monic(p), 1)]
    out = []
    c, _ = poly_divmod_univariate(p, g, index)
    d, _ = poly_divmod_univariate(dp, g, index)
    d = d.sub(c.derivative(index))
    i = 1
    while not c.is_constant():
        pi = poly_gcd_univariate(c, d, index)
        if not pi.is_constant():
            out.append((monic(pi), i))
        c, _ = poly_divmod_univariate(c, pi, index)
        d2, _ = poly_divmod_univariate(d, pi, index)
        d = d2.sub(c.derivative(index))
        i += 1
    return out


def poly_divmod_univariate(a, b, index):
    """Quotient and remainder of univariate division in one variable."""
    if not b:
        raise DivisionByZeroError("polynomial division by zero")
    bm, bc = b.leading()
    be = bm[index]
    q = Polynomial.zero(a.context)
    r = a
    while r:
        rm, rc = r.leading()
        if rm[index] < be:
            break
        shift = tuple((rm[i] - bm[i]) if i == index else 0
                      for i in range(len(rm)))
        coeff = Fraction(rc) / Fraction(bc)
        q = q.add(Polynomial(a.context, {shift: coeff}))
        r = r.sub(b.mul_term(coeff, shift))
    return q, r


def poly_mod_univariate(a, b, index):
    return poly_divmod_univariate(a, b, index)[1]
