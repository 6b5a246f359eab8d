"""The SPACE environment: coefficient domains, the tropical algebra catalog,
scalar arithmetic and FLOATPOS-controlled formatting.

Classical domains are Z, Q, R, R64 and C64.  R is exact (rational-backed);
R64/C64 are hardware doubles.  Tropical algebras are named carrier+add+mul,
e.g. ZMaxPlus;  the catalog is the full cross product of {Z, R, R64} x
{Max, Min} x {Plus, Mult, Max, Min} minus the degenerate MaxMax/MinMin
signatures, 18 algebras in total.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP
from fractions import Fraction

from .errors import (
    DivisionByZeroError,
    DomainMismatchError,
    InvalidSignatureError,
    NonInvertibleSignatureError,
    UndefinedProductError,
    UnknownAlgebraError,
)

CLASSICAL_NAMES = ("Z", "Q", "R", "R64", "C64")

INF = math.inf


@dataclass(frozen=True)
class ClassicalAlgebra:
    name: str  # one of CLASSICAL_NAMES

    @property
    def is_tropical(self):
        return False

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TropicalSignature:
    name: str
    carrier: str  # Z | R | R64
    add_op: str  # Max | Min
    mul_op: str  # Plus | Mult | Max | Min

    @property
    def is_tropical(self):
        return True

    @property
    def zero(self):
        """Additive identity: the bottom of the add_op order."""
        return -INF if self.add_op == "Max" else INF

    @property
    def unit(self):
        """Multiplicative identity."""
        if self.mul_op == "Plus":
            return self._finite(0)
        if self.mul_op == "Mult":
            return self._finite(1)
        # lattice product: unit is the identity of max resp. min
        return -INF if self.mul_op == "Max" else INF

    @property
    def top(self):
        """The greatest element in the add_op order (used by residuation)."""
        return INF if self.add_op == "Max" else -INF

    def _finite(self, n):
        if self.carrier == "Z":
            return int(n)
        if self.carrier == "R":
            return Fraction(n)
        return float(n)

    def coerce_finite(self, raw):
        """Bring a finite number into the carrier, validating domain rules."""
        if isinstance(raw, float) and math.isinf(raw):
            return self.validate(raw)
        if self.mul_op == "Mult" and raw < 0:
            raise DomainMismatchError(
                f"{self.name} admits only nonnegative finite values")
        if self.carrier == "Z":
            if isinstance(raw, Fraction):
                if raw.denominator != 1:
                    raise DomainMismatchError(
                        f"{self.name} has integer carrier, got {raw}")
                return int(raw)
            if isinstance(raw, float):
                if raw != int(raw):
                    raise DomainMismatchError(
                        f"{self.name} has integer carrier, got {raw}")
                return int(raw)
            return int(raw)
        if self.carrier == "R":
            return Fraction(raw)
        return float(raw)

    def validate(self, v):
        """Check an infinity is admitted by the carrier and return it."""
        if self.mul_op == "Mult" and v != self.zero:
            raise DomainMismatchError(
                f"{self.name} admits only its zero element {fmt_inf(self.zero)} "
                "as an infinite value")
        return v

    def __str__(self):
        return self.name


def fmt_inf(v):
    return r"\infty" if v > 0 else r"-\infty"


_CARRIERS = ("Z", "R64", "R")  # R64 before R: longest prefix wins
_ADD_OPS = ("Max", "Min")
_MUL_OPS = ("Plus", "Mult", "Max", "Min")


def resolve_algebra(name):
    """Map a canonical algebra name to its tag; raises for unknown names."""
    if name in CLASSICAL_NAMES:
        return ClassicalAlgebra(name)
    for carrier in _CARRIERS:
        if not name.startswith(carrier):
            continue
        rest = name[len(carrier):]
        for add_op in _ADD_OPS:
            if not rest.startswith(add_op):
                continue
            mul_op = rest[len(add_op):]
            if mul_op not in _MUL_OPS:
                break
            if mul_op == add_op:
                raise InvalidSignatureError(
                    f"{name}: the additive and multiplicative lattice "
                    "operations must differ")
            return TropicalSignature(name, carrier, add_op, mul_op)
    raise UnknownAlgebraError(f"unknown algebra: {name}")


def tropical_catalog():
    """All 18 valid tropical algebra names."""
    names = []
    for carrier in ("Z", "R", "R64"):
        for add_op in _ADD_OPS:
            for mul_op in _MUL_OPS:
                if mul_op == add_op:
                    continue
                names.append(carrier + add_op + mul_op)
    return names


# -- space context -----------------------------------------------------------

@dataclass(frozen=True)
class SpaceContext:
    """Active algebraic environment: domain, ordered variables, FLOATPOS.

    Variables are listed in ascending significance: the first-listed is the
    smallest in the variable ordering.
    """

    algebra: object
    variables: tuple
    floatpos: int = 2

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise DomainMismatchError("space variables must be pairwise distinct")

    def same_space(self, other):
        """Same algebra and variable list; FLOATPOS is display-only."""
        return (self.algebra == other.algebra
                and self.variables == other.variables)

    def with_floatpos(self, n):
        return SpaceContext(self.algebra, self.variables, n)

    @property
    def name(self):
        return f"{self.algebra.name}[{', '.join(self.variables)}]"


def default_space():
    return SpaceContext(ClassicalAlgebra("R64"), ("x", "y", "z", "t"), 2)


# -- scalars -----------------------------------------------------------------

@dataclass(frozen=True)
class Real:
    """Exact real (rational-backed); displayed with FLOATPOS decimals."""

    value: Fraction


@dataclass(frozen=True)
class TropicalScalar:
    """Element of a tropical carrier; infinities are float('+-inf')."""

    value: object  # int | Fraction | float, including +-inf

    @property
    def is_infinite(self):
        return isinstance(self.value, float) and math.isinf(self.value)


def trop_add(sig, a, b):
    """The tropical plus: max or min of the operands."""
    return max(a, b) if sig.add_op == "Max" else min(a, b)


def trop_mul(sig, a, b):
    """The tropical times: +, x, max or min per signature.

    Indeterminate forms (opposite infinities under Plus, infinity times a
    finite zero under Mult) raise rather than silently absorbing.
    """
    a_inf = isinstance(a, float) and math.isinf(a)
    b_inf = isinstance(b, float) and math.isinf(b)
    if sig.mul_op == "Plus":
        if a_inf and b_inf and (a > 0) != (b > 0):
            raise UndefinedProductError(
                f"{fmt_inf(a)} (x) {fmt_inf(b)} is undefined in {sig.name}")
        if a_inf:
            return a
        if b_inf:
            return b
        return a + b
    if sig.mul_op == "Mult":
        if (a_inf and b == 0) or (b_inf and a == 0):
            raise UndefinedProductError(
                f"infinity (x) 0 is undefined in {sig.name}")
        if a_inf or b_inf:
            # only the zero infinity lives in a Mult carrier; it absorbs
            return sig.zero
        return a * b
    if sig.mul_op == "Max":
        return max(a, b)
    return min(a, b)


def trop_leq(sig, a, b):
    """The order induced by tropical plus: a <= b iff a (+) b = b."""
    return trop_add(sig, a, b) == b


def trop_residual(sig, b, a):
    """Greatest x with a (x) x <= b in the induced order.

    Defined for semifield signatures (Plus, or Mult away from zero).
    """
    if sig.mul_op not in ("Plus", "Mult"):
        raise NonInvertibleSignatureError(
            f"{sig.name}: lattice multiplication is not invertible")
    a_inf = isinstance(a, float) and math.isinf(a)
    b_inf = isinstance(b, float) and math.isinf(b)
    if sig.mul_op == "Plus":
        if a == sig.zero or b == sig.top:
            return sig.top
        if a_inf:  # a is the top infinity and b is below it
            return sig.zero
        if b == sig.zero:
            return sig.zero
        if b_inf:  # b is an infinity equal to neither zero nor top: impossible
            return sig.zero
        return b - a
    # Mult: carrier is nonnegative plus the zero infinity
    if a == sig.zero or b == sig.top:
        return sig.top
    if b == sig.zero:
        return sig.zero
    if a == 0:
        # 0 (x) x = 0 <= b always, so x is unconstrained
        return sig.top
    return _div_keep_type(sig, b, a)


def _div_keep_type(sig, b, a):
    if sig.carrier == "Z":
        q = Fraction(b, a)
        return int(q) if q.denominator == 1 else q
    if sig.carrier == "R":
        return Fraction(b) / Fraction(a)
    return b / a


def trop_pow(sig, a, n):
    """n-fold tropical product; n = 0 gives the unit."""
    if n < 0:
        inv = trop_residual(sig, sig.unit, a)
        return trop_pow(sig, inv, -n)
    acc = sig.unit
    for _ in range(n):
        acc = trop_mul(sig, acc, a)
    return acc


# -- formatting --------------------------------------------------------------

def _round_half_away(text_value, floatpos):
    """Round a decimal string to floatpos digits, ties away from zero."""
    quantum = Decimal(1).scaleb(-floatpos)
    d = Decimal(text_value).quantize(quantum, rounding=ROUND_HALF_UP)
    if d == 0:
        d = abs(d)  # avoid "-0.00"
    return format(d, "f")


def format_float(v, floatpos):
    if math.isinf(v):
        return fmt_inf(v)
    if math.isnan(v):
        return "NaN"
    return _round_half_away(repr(v), floatpos)


def format_fraction_decimal(fr, floatpos):
    """Exact decimal rendering of a rational, half away from zero."""
    sign = "-" if fr < 0 else ""
    n = abs(fr.numerator) * 10 ** floatpos
    q, r = divmod(n, fr.denominator)
    if 2 * r >= fr.denominator:
        q += 1
    digits = str(q).rjust(floatpos + 1, "0")
    if floatpos == 0:
        out = digits
    else:
        out = digits[:-floatpos] + "." + digits[-floatpos:]
    if sign and q == 0:
        sign = ""
    return sign + out


def format_scalar(v, floatpos):
    """Render a scalar for Mathpar output under the given FLOATPOS."""
    if isinstance(v, TropicalScalar):
        return _format_trop_value(v.value, floatpos)
    if isinstance(v, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, Real):
        return format_fraction_decimal(v.value, floatpos)
    if isinstance(v, float):
        return format_float(v, floatpos)
    if isinstance(v, complex):
        return _format_complex(v, floatpos, imag_unit=r"\i")
    raise TypeError(f"not a scalar: {v!r}")


def format_scalar_latex(v, floatpos):
    if isinstance(v, TropicalScalar):
        return _format_trop_value(v.value, floatpos)
    if isinstance(v, Fraction) and v.denominator != 1:
        sign = "-" if v < 0 else ""
        return sign + r"\frac{%d}{%d}" % (abs(v.numerator), v.denominator)
    if isinstance(v, complex):
        return _format_complex(v, floatpos, imag_unit=r"\mathbf{i}", parens=False)
    return format_scalar(v, floatpos)


def _format_trop_value(v, floatpos):
    if isinstance(v, float):
        if math.isinf(v):
            return fmt_inf(v)
        return format_float(v, floatpos)
    if isinstance(v, Fraction):
        return format_fraction_decimal(v, floatpos)
    return str(v)


def _format_complex(v, floatpos, imag_unit, parens=True):
    re, im = v.real, v.imag
    if im == 0:
        return format_float(re, floatpos)
    im_txt = format_float(abs(im), floatpos)
    sign = "-" if im < 0 else "+"
    if re == 0:
        return ("-" if im < 0 else "") + im_txt + imag_unit
    body = f"{format_float(re, floatpos)}{sign}{im_txt}{imag_unit}"
    return f"({body})" if parens else body


# -- classical scalar arithmetic ---------------------------------------------

def coerce_scalar(algebra, v):
    """Bring a raw Python number (or scalar wrapper) into the domain."""
    if not isinstance(v, (int, float, complex, Fraction, Real, TropicalScalar)) \
            or isinstance(v, bool):
        raise DomainMismatchError(
            f"{type(v).__name__} is not a scalar value")
    if algebra.is_tropical:
        if isinstance(v, TropicalScalar):
            v = v.value
        if isinstance(v, float) and math.isinf(v):
            return TropicalScalar(algebra.validate(v))
        return TropicalScalar(algebra.coerce_finite(v))
    name = algebra.name
    if isinstance(v, TropicalScalar):
        if v.is_infinite:
            raise DomainMismatchError(f"infinite value not coercible into {name}")
        v = v.value
    if isinstance(v, Real):
        v = v.value
    if name == "Z":
        if isinstance(v, float):
            if v != int(v):
                raise DomainMismatchError(f"{v} is not an integer")
            return int(v)
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise DomainMismatchError(f"{v} is not an integer")
            return int(v)
        if isinstance(v, complex):
            raise DomainMismatchError("complex value not coercible into Z")
        return int(v)
    if name == "Q":
        if isinstance(v, complex):
            raise DomainMismatchError("complex value not coercible into Q")
        return Fraction(v)
    if name == "R":
        if isinstance(v, complex):
            raise DomainMismatchError("complex value not coercible into R")
        return Real(Fraction(v))
    if name == "R64":
        if isinstance(v, complex):
            if v.imag != 0:
                raise DomainMismatchError("complex value not coercible into R64")
            return v.real
        return float(v)
    if name == "C64":
        return complex(v)
    raise UnknownAlgebraError(f"unknown algebra: {name}")


def parse_number_literal(algebra, text):
    """Interpret a decimal literal in the given domain."""
    if algebra.is_tropical:
        if "." in text:
            if algebra.carrier == "Z":
                raise DomainMismatchError(
                    f"decimal literal {text} not valid in {algebra.name}")
            raw = Fraction(text) if algebra.carrier == "R" else float(text)
        else:
            raw = int(text)
        return coerce_scalar(algebra, raw)
    name = algebra.name
    if "." in text:
        if name == "Z":
            raise DomainMismatchError(f"decimal literal {text} not valid in Z")
        if name in ("Q", "R"):
            return coerce_scalar(algebra, Fraction(text))
        return coerce_scalar(algebra, float(text))
    return coerce_scalar(algebra, int(text))


def _raw(v):
    if isinstance(v, Real):
        return v.value
    if isinstance(v, TropicalScalar):
        return v.value
    return v


MAX_EXPONENT = 100_000  # keeps a single ** from swallowing the process


def integer_exponent(n):
    if isinstance(n, Fraction) and n.denominator == 1:
        n = int(n)
    if isinstance(n, float) and not math.isinf(n) and n == int(n):
        n = int(n)
    if isinstance(n, complex) and n.imag == 0 and n.real == int(n.real):
        n = int(n.real)
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainMismatchError("exponents must be integers")
    if abs(n) > MAX_EXPONENT:
        raise DomainMismatchError(f"exponent {n} is out of range")
    return n


def scalar_arith(algebra, op, a, b):
    """Dispatch +, -, *, /, ^ over the domain; operands are coerced first."""
    if algebra.is_tropical:
        return _tropical_arith(algebra, op, a, b)
    a = coerce_scalar(algebra, a)
    b = coerce_scalar(algebra, b)
    name = algebra.name
    x, y = _raw(a), _raw(b)
    if op == "add":
        out = x + y
    elif op == "sub":
        out = x - y
    elif op == "mul":
        out = x * y
    elif op == "div":
        if y == 0:
            raise DivisionByZeroError("division by zero")
        if name == "Z":
            if x % y != 0:
                raise DomainMismatchError(f"{x}/{y} has no exact quotient in Z")
            out = x // y
        elif name in ("Q", "R"):
            out = Fraction(x) / Fraction(y)
        else:
            out = x / y
    elif op == "pow":
        n = integer_exponent(y)
        try:
            if n < 0:
                if name == "Z":
                    raise DomainMismatchError(
                        "negative exponent has no result in Z")
                if x == 0:
                    raise DivisionByZeroError("zero to a negative power")
                if name in ("Q", "R"):
                    out = Fraction(x) ** n
                else:
                    out = x ** n
            else:
                out = x ** n
        except OverflowError:
            raise DomainMismatchError(
                f"{x}^{n} overflows double precision") from None
    else:
        raise ValueError(f"unknown operation {op}")
    return coerce_scalar(algebra, out)


def _tropical_arith(sig, op, a, b):
    a = coerce_scalar(sig, a)
    b = coerce_scalar(sig, b)
    if op == "add":
        return TropicalScalar(trop_add(sig, a.value, b.value))
    if op == "mul":
        return TropicalScalar(trop_mul(sig, a.value, b.value))
    if op == "div":
        if sig.mul_op not in ("Plus", "Mult"):
            raise NonInvertibleSignatureError(
                f"{sig.name}: lattice multiplication is not invertible")
        return TropicalScalar(trop_residual(sig, a.value, b.value))
    if op == "pow":
        n = integer_exponent(b.value)
        return TropicalScalar(trop_pow(sig, a.value, n))
    if op == "sub":
        raise DomainMismatchError(
            f"subtraction is not defined in {sig.name}")
    raise ValueError(f"unknown operation {op}")
