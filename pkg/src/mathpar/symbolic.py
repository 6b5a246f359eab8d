"""Symbolic expressions over polynomials: elementary function wrappers,
substitution/evaluation, differentiation, and the \\Factor simplifier.

A symbolic expression is a tree whose leaves are polynomials; Apply nodes
wrap sin, cos, tg, ctg, ln and exp.  Arithmetic between polynomial leaves
collapses eagerly, so trees only persist where a function symbol forces
them to.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ArityError,
    DivisionByZeroError,
    DomainMismatchError,
    NonPolynomialIntegrandError,
    UndefinedValueError,
    UnsupportedFunctionError,
)
from .polynomial import (
    Polynomial,
    poly_divmod_univariate,
    squarefree_decomposition,
)
from .spaces import (
    Real,
    SpaceContext,
    coerce_scalar,
    integer_exponent,
    scalar_arith,
)

FUNCTIONS = ("sin", "cos", "tg", "ctg", "ln", "exp")


class SymExpr:
    """Marker base class for symbolic tree nodes."""
    __slots__ = ()


@dataclass(frozen=True)
class SymPoly(SymExpr):
    poly: Polynomial


@dataclass(frozen=True)
class SymApply(SymExpr):
    fn: str
    arg: SymExpr


@dataclass(frozen=True)
class SymAdd(SymExpr):
    parts: tuple


@dataclass(frozen=True)
class SymMul(SymExpr):
    parts: tuple


@dataclass(frozen=True)
class SymPow(SymExpr):
    base: SymExpr
    exponent: int


@dataclass(frozen=True)
class SymDiv(SymExpr):
    num: SymExpr
    den: SymExpr


# -- smart constructors -------------------------------------------------------

def to_expr(ctx, v):
    """Lift a Value (scalar, polynomial or expression) into a SymExpr."""
    if isinstance(v, SymExpr):
        return v
    if isinstance(v, Polynomial):
        return SymPoly(v)
    return SymPoly(Polynomial.from_scalar(ctx, v))


def _poly_of(part):
    return part.poly if isinstance(part, SymPoly) else None


def sym_add(ctx, parts):
    flat = []
    acc = Polynomial.zero(ctx)
    for p in parts:
        if isinstance(p, SymAdd):
            parts2 = p.parts
        else:
            parts2 = (p,)
        for q in parts2:
            poly = _poly_of(q)
            if poly is not None:
                acc = acc.add(poly)
            else:
                flat.append(q)
    if not flat:
        return SymPoly(acc)
    if acc:
        flat.append(SymPoly(acc))
    if len(flat) == 1:
        return flat[0]
    return SymAdd(tuple(flat))


def sym_mul(ctx, parts):
    flat = []
    acc = Polynomial.from_scalar(ctx, 1)
    for p in parts:
        parts2 = p.parts if isinstance(p, SymMul) else (p,)
        for q in parts2:
            poly = _poly_of(q)
            if poly is not None:
                if not poly:
                    return SymPoly(Polynomial.zero(ctx))
                acc = acc.mul(poly)
            else:
                flat.append(q)
    if not flat:
        return SymPoly(acc)
    if not _is_one(acc):
        flat.insert(0, SymPoly(acc))
    if len(flat) == 1:
        return flat[0]
    return SymMul(tuple(flat))


def sym_pow(ctx, base, n):
    if n == 0:
        return SymPoly(Polynomial.from_scalar(ctx, 1))
    if n == 1:
        return base
    if n < 0:
        one = SymPoly(Polynomial.from_scalar(ctx, 1))
        return sym_div(ctx, one, sym_pow(ctx, base, -n))
    poly = _poly_of(base)
    if poly is not None:
        return SymPoly(poly.pow(n))
    return SymPow(base, n)


def sym_div(ctx, num, den):
    dpoly = _poly_of(den)
    if dpoly is not None:
        if not dpoly:
            raise DivisionByZeroError("division by zero")
        if dpoly.is_constant():
            inv = scalar_arith(ctx.algebra, "div", 1, dpoly.constant_value())
            return sym_mul(ctx, [to_expr(ctx, inv), num])
    npoly = _poly_of(num)
    if npoly is not None and not npoly:
        return SymPoly(Polynomial.zero(ctx))
    return SymDiv(num, den)


def _is_one(poly):
    return poly.is_constant() and poly.constant_value() == 1


def sym_neg(ctx, e):
    return sym_mul(ctx, [SymPoly(Polynomial.from_scalar(ctx, -1)), e])


def sym_apply(ctx, fn, arg):
    if fn not in FUNCTIONS:
        raise UnsupportedFunctionError(f"unsupported function {fn}")
    return SymApply(fn, to_expr(ctx, arg))


# -- generic value arithmetic --------------------------------------------------

def is_scalar(v):
    return isinstance(v, (int, float, complex, Fraction, Real))


def combine(ctx, op, a, b):
    """Apply +, -, *, /, ^ over classical Values (scalars, polynomials,
    symbolic expressions), collapsing to the simplest representation."""
    if is_scalar(a) and is_scalar(b):
        return scalar_arith(ctx.algebra, op, a, b)
    if isinstance(a, SymExpr) or isinstance(b, SymExpr):
        return _combine_symbolic(ctx, op, to_expr(ctx, a), to_expr(ctx, b))
    pa = a if isinstance(a, Polynomial) else Polynomial.from_scalar(ctx, a)
    pb = b if isinstance(b, Polynomial) else Polynomial.from_scalar(ctx, b)
    if op == "add":
        return _collapse(ctx, pa.add(pb))
    if op == "sub":
        return _collapse(ctx, pa.sub(pb))
    if op == "mul":
        return _collapse(ctx, pa.mul(pb))
    if op == "div":
        if pb.is_constant():
            if not pb:
                raise DivisionByZeroError("division by zero")
            inv = scalar_arith(ctx.algebra, "div", 1, pb.constant_value())
            return _collapse(ctx, pa.scale(_raw(inv)))
        return _expr_or_collapse(ctx, sym_div(ctx, SymPoly(pa), SymPoly(pb)))
    if op == "pow":
        n = _int_exponent(b)
        if n < 0:
            if pa.is_constant():
                return scalar_arith(ctx.algebra, "pow", pa.constant_value(), n)
            return _expr_or_collapse(ctx, sym_pow(ctx, SymPoly(pa), n))
        return _collapse(ctx, pa.pow(n))
    raise ValueError(f"unknown operation {op}")


def _combine_symbolic(ctx, op, a, b):
    if op == "add":
        out = sym_add(ctx, [a, b])
    elif op == "sub":
        out = sym_add(ctx, [a, sym_neg(ctx, b)])
    elif op == "mul":
        out = sym_mul(ctx, [a, b])
    elif op == "div":
        out = sym_div(ctx, a, b)
    elif op == "pow":
        bp = _poly_of(b)
        if bp is None or not bp.is_constant():
            raise DomainMismatchError("exponents must be integer scalars")
        out = sym_pow(ctx, a, _int_exponent(bp.constant_value()))
    else:
        raise ValueError(f"unknown operation {op}")
    return _expr_or_collapse(ctx, out)


def _int_exponent(v):
    if isinstance(v, Polynomial):
        if not v.is_constant():
            raise DomainMismatchError("exponents must be integer scalars")
        v = v.constant_value()
    return integer_exponent(_raw(v))


def _raw(v):
    return v.value if isinstance(v, Real) else v


def _collapse(ctx, poly):
    if poly.is_constant():
        return coerce_scalar(ctx.algebra, poly.constant_value())
    return poly


def _expr_or_collapse(ctx, e):
    if isinstance(e, SymPoly):
        return _collapse(ctx, e.poly)
    return e


# -- evaluation (\value) --------------------------------------------------------

def value(ctx, v, subs):
    """Simultaneous substitution of the leading Space variables, then
    simplification; fully numeric results collapse to a scalar."""
    if len(subs) > len(ctx.variables):
        raise ArityError(
            f"{len(subs)} substitutions for {len(ctx.variables)} variables")
    if not subs:
        return v
    table = []
    for i, name in enumerate(ctx.variables):
        if i < len(subs):
            table.append(subs[i])
        else:
            table.append(Polynomial.from_variable(ctx, name))
    return _eval_value(ctx, v, table)


def _eval_value(ctx, v, table):
    if is_scalar(v):
        return v
    if isinstance(v, Polynomial):
        return _substitute_poly(ctx, v, table)
    if isinstance(v, SymPoly):
        return _substitute_poly(ctx, v.poly, table)
    if isinstance(v, SymApply):
        arg = _eval_value(ctx, v.arg, table)
        return apply_function(ctx, v.fn, arg)
    if isinstance(v, SymAdd):
        out = coerce_scalar(ctx.algebra, 0)
        for p in v.parts:
            out = combine(ctx, "add", out, _eval_value(ctx, p, table))
        return out
    if isinstance(v, SymMul):
        out = coerce_scalar(ctx.algebra, 1)
        for p in v.parts:
            out = combine(ctx, "mul", out, _eval_value(ctx, p, table))
        return out
    if isinstance(v, SymPow):
        base = _eval_value(ctx, v.base, table)
        return combine(ctx, "pow", base, v.exponent)
    if isinstance(v, SymDiv):
        num = _eval_value(ctx, v.num, table)
        den = _eval_value(ctx, v.den, table)
        return combine(ctx, "div", num, den)
    raise TypeError(f"cannot evaluate {v!r}")


def _substitute_poly(ctx, poly, table):
    out = coerce_scalar(ctx.algebra, 0)
    for mono, coeff in poly.terms.items():
        acc = coerce_scalar(ctx.algebra, coeff)
        for i, e in enumerate(mono):
            if e:
                acc = combine(ctx, "mul", acc, combine(ctx, "pow", table[i], e))
        out = combine(ctx, "add", out, acc)
    return out


def apply_function(ctx, fn, arg):
    """Apply an elementary function; numeric scalars evaluate immediately."""
    if fn not in FUNCTIONS:
        raise UnsupportedFunctionError(f"unsupported function {fn}")
    if is_scalar(arg):
        return _apply_numeric(ctx, fn, arg)
    if isinstance(arg, Polynomial) and arg.is_constant():
        return _apply_numeric(ctx, fn, arg.constant_value())
    return SymApply(fn, to_expr(ctx, arg))


def _apply_numeric(ctx, fn, scalar):
    scalar = _raw(scalar)
    if isinstance(scalar, complex):
        lib, x = cmath, scalar
    else:
        lib, x = math, float(scalar)
    try:
        if fn == "tg":
            c = lib.cos(x)
            if abs(c) < 1e-12:
                raise UndefinedValueError("tg is undefined where cos vanishes")
            out = lib.sin(x) / c
        elif fn == "ctg":
            s = lib.sin(x)
            if abs(s) < 1e-12:
                raise UndefinedValueError("ctg is undefined where sin vanishes")
            out = lib.cos(x) / s
        elif fn == "ln":
            if isinstance(x, complex):
                if x == 0:
                    raise UndefinedValueError("ln(0) is undefined")
                out = lib.log(x)
            else:
                if x <= 0:
                    raise UndefinedValueError("ln needs a positive argument")
                out = lib.log(x)
        elif fn == "exp":
            out = lib.exp(x)
        else:
            out = getattr(lib, fn)(x)
    except OverflowError:
        raise UndefinedValueError(
            f"{fn}({scalar}) overflows double precision") from None
    except ValueError:
        raise UndefinedValueError(f"{fn} is undefined at {scalar}") from None
    # elementary functions evaluate in double precision in every domain
    return out


# -- differentiation -------------------------------------------------------------

_DERIV_TABLE = {
    "sin": lambda ctx, u: SymApply("cos", u),
    "cos": lambda ctx, u: sym_neg(ctx, SymApply("sin", u)),
    "tg": lambda ctx, u: sym_div(
        ctx, SymPoly(Polynomial.from_scalar(ctx, 1)),
        sym_pow(ctx, SymApply("cos", u), 2)),
    "ctg": lambda ctx, u: sym_neg(ctx, sym_div(
        ctx, SymPoly(Polynomial.from_scalar(ctx, 1)),
        sym_pow(ctx, SymApply("sin", u), 2))),
    "ln": lambda ctx, u: sym_div(
        ctx, SymPoly(Polynomial.from_scalar(ctx, 1)), u),
    "exp": lambda ctx, u: SymApply("exp", u),
}


def derivative(ctx, v, var_name, order=1):
    """n-fold derivative of a Value with respect to a Space variable."""
    if var_name not in ctx.variables:
        raise DomainMismatchError(f"{var_name} is not a variable of {ctx.name}")
    index = ctx.variables.index(var_name)
    if order < 1:
        raise DomainMismatchError("derivative order must be positive")
    out = v
    for _ in range(order):
        out = _derive(ctx, out, index)
    if isinstance(out, SymExpr):
        out = _expr_or_collapse(ctx, out)
    elif isinstance(out, Polynomial):
        out = _collapse(ctx, out)
    return out


def _derive(ctx, v, index):
    if is_scalar(v):
        return coerce_scalar(ctx.algebra, 0)
    if isinstance(v, Polynomial):
        return v.derivative(index)
    if isinstance(v, SymPoly):
        return SymPoly(v.poly.derivative(index))
    if isinstance(v, SymApply):
        du = _as_expr(ctx, _derive(ctx, v.arg, index))
        outer = _DERIV_TABLE[v.fn](ctx, v.arg)
        return sym_mul(ctx, [outer, du])
    if isinstance(v, SymAdd):
        return sym_add(ctx, [_as_expr(ctx, _derive(ctx, p, index))
                             for p in v.parts])
    if isinstance(v, SymMul):
        terms = []
        for i, part in enumerate(v.parts):
            dpart = _as_expr(ctx, _derive(ctx, part, index))
            rest = list(v.parts[:i]) + [dpart] + list(v.parts[i + 1:])
            terms.append(sym_mul(ctx, rest))
        return sym_add(ctx, terms)
    if isinstance(v, SymPow):
        db = _as_expr(ctx, _derive(ctx, v.base, index))
        n = SymPoly(Polynomial.from_scalar(ctx, v.exponent))
        return sym_mul(ctx, [n, sym_pow(ctx, v.base, v.exponent - 1), db])
    if isinstance(v, SymDiv):
        da = _as_expr(ctx, _derive(ctx, v.num, index))
        db = _as_expr(ctx, _derive(ctx, v.den, index))
        num = sym_add(ctx, [sym_mul(ctx, [da, v.den]),
                            sym_neg(ctx, sym_mul(ctx, [v.num, db]))])
        return sym_div(ctx, num, sym_pow(ctx, v.den, 2))
    raise TypeError(f"cannot differentiate {v!r}")


def _as_expr(ctx, v):
    return to_expr(ctx, v)


def integrate(ctx, v, var_name):
    """Antiderivative of a pure polynomial; Apply nodes are rejected."""
    if var_name not in ctx.variables:
        raise DomainMismatchError(f"{var_name} is not a variable of {ctx.name}")
    index = ctx.variables.index(var_name)
    if is_scalar(v):
        v = Polynomial.from_scalar(ctx, v)
    if isinstance(v, SymPoly):
        v = v.poly
    if not isinstance(v, Polynomial):
        raise NonPolynomialIntegrandError(
            "only polynomial integrands are supported")
    return v.integrate(index)


# -- \Factor ----------------------------------------------------------------------

def factor_simplify(ctx, v):
    """Rewrite by the fixed identity table (sin^2+cos^2 -> 1, ln a + ln b ->
    ln(ab), exp(ln t) -> t, ln(exp t) -> t), then factor pure polynomials.
    Falls back to the input when no rule applies."""
    if is_scalar(v):
        return v
    if isinstance(v, Polynomial):
        return _factor_polynomial(ctx, v)
    if not isinstance(v, SymExpr):
        return v
    e = _rewrite(ctx, v)
    reduced = _reduce_trig(ctx, e)
    if reduced is not None:
        e = reduced
    if isinstance(e, SymPoly):
        return _factor_polynomial(ctx, e.poly)
    return e


def _rewrite(ctx, e):
    """Bottom-up structural pass: exp/ln cancellation and ln merging."""
    if isinstance(e, SymPoly):
        return e
    if isinstance(e, SymApply):
        arg = _rewrite(ctx, e.arg)
        if e.fn == "exp" and isinstance(arg, SymApply) and arg.fn == "ln":
            return arg.arg
        if e.fn == "ln" and isinstance(arg, SymApply) and arg.fn == "exp":
            return arg.arg
        return SymApply(e.fn, arg)
    if isinstance(e, SymAdd):
        parts = [_rewrite(ctx, p) for p in e.parts]
        return _merge_logs(ctx, parts)
    if isinstance(e, SymMul):
        return sym_mul(ctx, [_rewrite(ctx, p) for p in e.parts])
    if isinstance(e, SymPow):
        return sym_pow(ctx, _rewrite(ctx, e.base), e.exponent)
    if isinstance(e, SymDiv):
        return sym_div(ctx, _rewrite(ctx, e.num), _rewrite(ctx, e.den))
    return e


def _merge_logs(ctx, parts):
    """ln a + ln b -> ln(ab); positive integer multiples fold as powers."""
    logs = []
    rest = []
    for p in parts:
        multiple = _as_log_multiple(ctx, p)
        if multiple is not None:
            logs.append(multiple)
        else:
            rest.append(p)
    if len(logs) >= 2:
        product = None
        for n, u in logs:
            piece = sym_pow(ctx, u, n)
            product = piece if product is None else sym_mul(ctx, [product, piece])
        rest.append(SymApply("ln", product))
    else:
        rest.extend(SymApply("ln", u) if n == 1
                    else sym_mul(ctx, [SymPoly(Polynomial.from_scalar(ctx, n)), SymApply("ln", u)])
                    for n, u in logs)
    return sym_add(ctx, rest)


def _as_log_multiple(ctx, e):
    if isinstance(e, SymApply) and e.fn == "ln":
        return (1, e.arg)
    if isinstance(e, SymMul) and len(e.parts) == 2:
        first, second = e.parts
        if (isinstance(first, SymPoly) and first.poly.is_constant()
                and isinstance(second, SymApply) and second.fn == "ln"):
            c = first.poly.constant_value()
            if isinstance(c, (int, Fraction)) and c == int(c) and int(c) >= 1:
                return (int(c), second.arg)
    return None


def _reduce_trig(ctx, e):
    """View the expression as a polynomial in sin/cos kernels and reduce it
    modulo sin^2 u + cos^2 u - 1 for every shared argument u.  Returns None
    when the expression is not polynomial in its kernels."""
    kernels = []
    if not _collect_kernels(e, kernels):
        return None
    if not kernels:
        return e
    ext_vars = ctx.variables + tuple(f"#{i}" for i in range(len(kernels)))
    ext_ctx = SpaceContext(ctx.algebra, ext_vars, ctx.floatpos)
    index = {k: i for i, k in enumerate(kernels)}
    poly = _to_kernel_poly(ext_ctx, ctx, e, index)
    if poly is None:
        return None
    relations = []
    for k in kernels:
        if k.fn == "sin":
            partner = SymApply("cos", k.arg)
            if partner in index:
                s = Polynomial.from_variable(ext_ctx, f"#{index[k]}")
                c = Polynomial.from_variable(ext_ctx, f"#{index[partner]}")
                one = Polynomial.from_scalar(ext_ctx, 1)
                relations.append(s.mul(s).add(c.mul(c)).sub(one))
    if relations:
        from .solvers import normal_form
        poly = normal_form(poly, relations)
    return _from_kernel_poly(ctx, ext_ctx, poly, kernels)


def _collect_kernels(e, out):
    if isinstance(e, SymPoly):
        return True
    if isinstance(e, SymApply):
        if e not in out:
            out.append(e)
        return True
    if isinstance(e, (SymAdd, SymMul)):
        return all(_collect_kernels(p, out) for p in e.parts)
    if isinstance(e, SymPow):
        return e.exponent >= 0 and _collect_kernels(e.base, out)
    if isinstance(e, SymDiv):
        den = _poly_of(e.den)
        if den is not None and den.is_constant():
            return _collect_kernels(e.num, out)
        return False
    return False


def _to_kernel_poly(ext_ctx, ctx, e, index):
    if isinstance(e, SymPoly):
        return e.poly.convert(ext_ctx)
    if isinstance(e, SymApply):
        return Polynomial.from_variable(ext_ctx, f"#{index[e]}")
    if isinstance(e, SymAdd):
        out = Polynomial.zero(ext_ctx)
        for p in e.parts:
            q = _to_kernel_poly(ext_ctx, ctx, p, index)
            if q is None:
                return None
            out = out.add(q)
        return out
    if isinstance(e, SymMul):
        out = Polynomial.from_scalar(ext_ctx, 1)
        for p in e.parts:
            q = _to_kernel_poly(ext_ctx, ctx, p, index)
            if q is None:
                return None
            out = out.mul(q)
        return out
    if isinstance(e, SymPow):
        base = _to_kernel_poly(ext_ctx, ctx, e.base, index)
        return None if base is None else base.pow(e.exponent)
    if isinstance(e, SymDiv):
        den = _poly_of(e.den)
        num = _to_kernel_poly(ext_ctx, ctx, e.num, index)
        if num is None:
            return None
        inv = scalar_arith(ctx.algebra, "div", 1, den.constant_value())
        return num.scale(_raw(inv))
    return None


def _from_kernel_poly(ctx, ext_ctx, poly, kernels):
    nvars = len(ctx.variables)
    parts = []
    for mono, coeff in poly.sorted_terms():
        space_mono = mono[:nvars]
        base = Polynomial(ctx, {space_mono: coeff})
        factors = [SymPoly(base)]
        for j, e in enumerate(mono[nvars:]):
            if e:
                factors.append(sym_pow(ctx, kernels[j], e))
        parts.append(sym_mul(ctx, factors))
    return sym_add(ctx, parts)


# -- polynomial factoring ------------------------------------------------------------

def _factor_polynomial(ctx, p):
    """Content extraction, square-free split, rational roots and quadratics.

    Only exact domains get the full treatment; anything that resists
    factoring is returned unchanged.  Constant results stay polynomials,
    so exact simplifications display exactly (1, not 1.00)."""
    if not p or p.is_constant():
        return p
    if ctx.algebra.name not in ("Z", "Q", "R"):
        return p
    frac_terms = {m: Fraction(c if not isinstance(c, Real) else c.value)
                  for m, c in p.terms.items()}
    work = Polynomial(ctx, frac_terms)
    content, primitive = _extract_content(ctx, work)
    mono_factors, core = _extract_monomial_content(ctx, primitive)
    factors = list(mono_factors)
    used = core.variables_used()
    if len(used) == 1 and not core.is_constant():
        index = next(iter(used))
        factors.extend(_factor_univariate(ctx, core, index))
    elif not core.is_constant() or core.constant_value() != 1:
        if not _is_one(core):
            factors.append((core, 1))
    if content == 1 and len(factors) == 1 and factors[0][1] == 1:
        return p
    parts = []
    if content != 1:
        parts.append(SymPoly(Polynomial.from_scalar(ctx, content)))
    for poly, mult in sorted(factors, key=_factor_sort_key):
        parts.append(sym_pow(ctx, SymPoly(poly), mult))
    if not parts:
        return p
    if len(parts) == 1:
        return _expr_or_collapse(ctx, parts[0])
    return SymMul(tuple(parts))


def _factor_sort_key(item):
    poly, mult = item
    return (poly.total_degree(),
            [(k, str(c)) for k, c in
             sorted(((m, c) for m, c in poly.terms.items()))])


def _extract_content(ctx, p):
    from math import gcd
    num_gcd = 0
    den_lcm = 1
    for c in p.terms.values():
        num_gcd = gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    content = Fraction(num_gcd, den_lcm)
    lead = p.leading()
    if lead and lead[1] < 0:
        content = -content
    if content == 0:
        return Fraction(1), p
    return content, p.scale(1 / content)


def _extract_monomial_content(ctx, p):
    mins = None
    for m in p.terms:
        mins = m if mins is None else tuple(min(a, b) for a, b in zip(mins, m))
    factors = []
    if mins and any(mins):
        p = Polynomial(ctx, {tuple(a - b for a, b in zip(m, mins)): c
                             for m, c in p.terms.items()})
        for i, e in enumerate(mins):
            if e:
                factors.append((Polynomial.from_variable(ctx, ctx.variables[i]), e))
    return factors, p


def _factor_univariate(ctx, p, index):
    out = []
    for sq_factor, mult in squarefree_decomposition(p, index):
        linear, leftover = _rational_root_factors(ctx, sq_factor, index)
        out.extend((f, mult) for f in linear)
        if leftover is not None:
            out.append((leftover, mult))
    return out


def _monic(p, index):
    lead = p.leading()
    if lead is None or lead[1] == 1:
        return p
    return p.scale(Fraction(1) / Fraction(lead[1]))


def _rational_root_factors(ctx, p, index):
    """Peel off (x - r) for every rational root r; p must be square-free."""
    from math import gcd
    den_lcm = 1
    for c in p.terms.values():
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    int_terms = {m: c * den_lcm for m, c in p.terms.items()}
    degree = p.degree_in(index)
    lead_c = None
    const_c = None
    for m, c in int_terms.items():
        if m[index] == degree:
            lead_c = int(c)
        if m[index] == 0:
            const_c = int(c)
    linear = []
    current = p
    if const_c is None:
        # a zero constant term would have been peeled by monomial content
        const_c = 0
    for r in _rational_candidates(const_c, lead_c):
        if current.degree_in(index) < 1:
            break
        if _eval_univariate(current, index, r) == 0:
            var = Polynomial.from_variable(ctx, ctx.variables[index])
            root_poly = var.sub(Polynomial.from_scalar(ctx, r))
            root_poly = Polynomial(ctx, {m: Fraction(c)
                                         for m, c in root_poly.terms.items()})
            current, rem = poly_divmod_univariate(current, root_poly, index)
            assert not rem
            linear.append(root_poly)
    if current.degree_in(index) >= 1:
        return linear, _monic(current, index)
    return linear, None


def _divisors(n):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _rational_candidates(const_c, lead_c):
    if const_c == 0:
        yield Fraction(0)
        return
    for q in _divisors(lead_c or 1):
        for pnum in _divisors(const_c):
            for sign in (1, -1):
                yield Fraction(sign * pnum, q)


def _eval_univariate(p, index, r):
    total = Fraction(0)
    for m, c in p.terms.items():
        total += Fraction(c) * r ** m[index]
    return total
