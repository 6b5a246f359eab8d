"""Numeric and algebraic solvers: univariate complex roots, polynomial
inequalities over the reals, Buchberger Groebner bases, and zero-dimensional
polynomial systems.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NoSolutionError,
    NonConvergenceError,
    NotUnivariateError,
    PositiveDimensionalError,
    WrongSpaceError,
    ZeroPolynomialError,
)
from .polynomial import (
    Polynomial,
    mono_degree,
    mono_div,
    mono_divides,
    mono_key,
    mono_lcm,
    mono_mul,
)
from .spaces import Real

DK_SWEEP_CAP = 1000
DK_ANGLE_OFFSET = 0.4
CLUSTER_TOL = 1e-6
REAL_SNAP = 1e-9


@dataclass
class RootList:
    """Complex roots with multiplicities, ordered by descending real part,
    ties by descending imaginary part."""

    roots: list  # [(complex, multiplicity)]

    def degree(self):
        return sum(m for _, m in self.roots)


@dataclass(frozen=True)
class Interval:
    lower: float  # -inf allowed
    upper: float  # +inf allowed
    lower_closed: bool
    upper_closed: bool

    @property
    def is_point(self):
        return self.lower == self.upper


@dataclass
class IntervalSet:
    """Disjoint, ascending, merged interval components over the extended reals."""

    components: tuple

    def approx_equal(self, other, tol=1e-6):
        if len(self.components) != len(other.components):
            return False
        for a, b in zip(self.components, other.components):
            if (a.lower_closed, a.upper_closed) != (b.lower_closed, b.upper_closed):
                return False
            for x, y in ((a.lower, b.lower), (a.upper, b.upper)):
                if math.isinf(x) or math.isinf(y):
                    if x != y:
                        return False
                elif abs(x - y) > tol:
                    return False
        return True


@dataclass
class GroebnerBasis:
    generators: list  # reduced, normalized, descending by leading monomial


@dataclass
class SolutionMatrix:
    rows: list  # each row: [complex per variable]
    column_variables: tuple


# -- univariate root finding ---------------------------------------------------


def _univariate_coeffs(p):
    """Return (variable index, dense complex coefficients, degree)."""
    used = p.variables_used()
    if len(used) > 1:
        raise NotUnivariateError(
            "root solving needs a polynomial in one variable")
    if not p:
        raise ZeroPolynomialError("the zero polynomial has every value as a root")
    index = next(iter(used)) if used else 0
    degree = p.degree_in(index)
    coeffs = [0j] * (degree + 1)  # coeffs[k] multiplies x^k
    for m, c in p.terms.items():
        if isinstance(c, Real):
            c = c.value
        coeffs[m[index]] += complex(c)
    return index, coeffs, degree


def _poly_eval(coeffs, z):
    total = 0j
    for c in reversed(coeffs):
        total = total * z + c
    return total


def _poly_deriv(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:]


def solve_univariate(p, cancel=None):
    """All complex roots by simultaneous Weierstrass iteration plus a Newton
    polish; conjugate symmetry is enforced for real-coefficient inputs.

    Real-coefficient inputs are split square-free first (exactly, over Q),
    so multiplicities are exact and the iteration only ever sees simple
    roots."""
    index, original, degree = _univariate_coeffs(p)
    if degree < 1:
        raise ZeroPolynomialError("cannot solve a constant equation")
    real_input = all(c.imag == 0 for c in original)
    if real_input:
        roots = _roots_via_squarefree(p, index, cancel)
    else:
        roots = _roots_by_clustering(original, cancel)
    scale = max(abs(c) for c in original)
    for z, _ in roots:
        residual = abs(_poly_eval(original, z))
        bound = 1e-8 * scale * max(1.0, abs(z)) ** degree
        if residual > bound:
            raise NonConvergenceError(
                f"root {z} has residual {residual:.3e} above {bound:.3e}")
    roots.sort(key=lambda t: (-t[0].real, -t[0].imag))
    return RootList(roots)


def _roots_via_squarefree(p, index, cancel):
    from .polynomial import squarefree_decomposition

    def to_fraction(c):
        if isinstance(c, Real):
            return Fraction(c.value)
        if isinstance(c, complex):
            return Fraction(c.real)
        return Fraction(c)

    exact = Polynomial(p.context, {m: to_fraction(c)
                                   for m, c in p.terms.items()})
    out = []
    for factor, mult in squarefree_decomposition(exact, index):
        fdeg = factor.degree_in(index)
        coeffs = [0j] * (fdeg + 1)
        for m, c in factor.terms.items():
            coeffs[m[index]] += complex(c)
        for z in _simple_roots(coeffs, cancel, real_input=True):
            out.append((z, mult))
    return out


def _roots_by_clustering(coeffs, cancel):
    work = list(coeffs)
    zero_mult = 0
    while work[0] == 0 and len(work) > 1:
        work = work[1:]
        zero_mult += 1
    roots = _simple_roots(work, cancel, real_input=False) if len(work) > 1 else []
    clustered = _cluster(roots)
    out = []
    for z, mult in clustered:
        if mult > 1 and z != 0:
            z = _snap(_newton_polish(work, z, multiplicity=mult))
        out.append((z, mult))
    if zero_mult:
        out.append((0j, zero_mult))
    return out


def _simple_roots(coeffs, cancel, real_input):
    """Roots of a dense complex-coefficient polynomial, assumed square-free;
    degrees one and two use closed forms."""
    degree = len(coeffs) - 1
    if degree == 0:
        return []
    if degree == 1:
        return [_snap(-coeffs[0] / coeffs[1])]
    if degree == 2:
        c0, c1, c2 = coeffs
        sd = cmath.sqrt(c1 * c1 - 4 * c2 * c0)
        roots = [(-c1 + sd) / (2 * c2), (-c1 - sd) / (2 * c2)]
    else:
        roots = _durand_kerner(coeffs, degree, cancel)
        roots = [_newton_polish(coeffs, z) for z in roots]
    roots = [_snap(z) for z in roots]
    if real_input:
        roots = _enforce_conjugates(roots)
    return roots


def _durand_kerner(coeffs, degree, cancel):
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    radius = 1.0 + max(abs(c) for c in monic[:-1])
    z = [radius * cmath.exp(1j * (2 * math.pi * k / degree + DK_ANGLE_OFFSET))
         for k in range(degree)]
    tol = 1e-14 * radius
    converged = False
    for _ in range(DK_SWEEP_CAP):
        if cancel is not None:
            cancel.check()
        max_step = 0.0
        for i in range(degree):
            denom = 1 + 0j
            for j in range(degree):
                if j != i:
                    denom *= z[i] - z[j]
            if denom == 0:
                z[i] += tol + 1e-12  # perturb a collision and retry
                continue
            step = _poly_eval(monic, z[i]) / denom
            z[i] -= step
            max_step = max(max_step, abs(step))
        if max_step < tol:
            converged = True
            break
    if not converged:
        # multiple roots stall the sweep metric; the residual gate below
        # still protects the result
        pass
    return z


def _newton_polish(coeffs, z, multiplicity=1):
    dcoeffs = _poly_deriv(coeffs)
    for _ in range(40):
        fz = _poly_eval(coeffs, z)
        if fz == 0:
            return z
        dz = _poly_eval(dcoeffs, z)
        if dz == 0:
            return z
        step = multiplicity * fz / dz
        z -= step
        if abs(step) < 1e-15 * max(1.0, abs(z)):
            break
    return z


def _snap(z):
    threshold = REAL_SNAP * max(1.0, abs(z))
    re = 0.0 if abs(z.real) < threshold else z.real
    im = 0.0 if abs(z.imag) < threshold else z.imag
    return complex(re, im)


def _enforce_conjugates(roots):
    out = []
    pending = sorted(roots, key=lambda z: (z.real, abs(z.imag), z.imag))
    while pending:
        z = pending.pop(0)
        if z.imag == 0:
            out.append(z)
            continue
        best = None
        best_d = None
        for k, w in enumerate(pending):
            d = abs(w - z.conjugate())
            if best_d is None or d < best_d:
                best, best_d = k, d
        if best is not None and best_d < 1e-6 * max(1.0, abs(z)):
            w = pending.pop(best)
            mean = (z + w.conjugate()) / 2
            mean = complex(mean.real, abs(mean.imag))
            out.append(mean)
            out.append(mean.conjugate())
        else:
            out.append(z)
    return out


def _cluster(roots):
    clusters = []
    for z in sorted(roots, key=lambda w: (w.real, w.imag)):
        for i, (center, members) in enumerate(clusters):
            if abs(z - center) < CLUSTER_TOL * max(1.0, abs(center)):
                members.append(z)
                clusters[i] = (sum(members) / len(members), members)
                break
        else:
            clusters.append((z, [z]))
    return [(center, len(members)) for center, members in clusters]


# -- polynomial inequalities ------------------------------------------------------

NEG_INF = -math.inf
POS_INF = math.inf


def solve_inequality(p, relop, cancel=None):
    """Sign-chart solution of p(x) relop 0 over the reals."""
    if relop not in ("ge", "le", "gt", "lt"):
        raise ValueError(f"not an inequality relation: {relop}")
    used = p.variables_used()
    if len(used) > 1:
        raise NotUnivariateError("inequalities must be univariate")
    if p.is_constant():
        if not p:
            raise ZeroPolynomialError("inequality degenerates to 0 relop 0")
        c = p.constant_value()
        if isinstance(c, Real):
            c = c.value
        holds = {"ge": c >= 0, "le": c <= 0, "gt": c > 0, "lt": c < 0}[relop]
        if holds:
            return IntervalSet((Interval(NEG_INF, POS_INF, False, False),))
        return IntervalSet(())
    index = next(iter(used))
    roots = solve_univariate(p, cancel)
    real_roots = sorted((z.real, m) for z, m in roots.roots if z.imag == 0)
    lead_sign = 1.0
    lead = p.leading()
    lc = lead[1].value if isinstance(lead[1], Real) else lead[1]
    if complex(lc).real < 0:
        lead_sign = -1.0
    degree = p.degree_in(index)
    # sign on the rightmost region, then walk left flipping at odd roots
    signs = []
    s = lead_sign
    for _, mult in reversed(real_roots):
        signs.append(s)
        if mult % 2 == 1:
            s = -s
    signs.append(s)
    signs.reverse()  # signs[i] is the sign on region i (left of root i)
    del degree
    want_positive = relop in ("ge", "gt")
    strict = relop in ("gt", "lt")
    components = []
    bounds = [NEG_INF] + [r for r, _ in real_roots] + [POS_INF]
    for i in range(len(signs)):
        lo, hi = bounds[i], bounds[i + 1]
        satisfied = (signs[i] > 0) == want_positive
        if satisfied and lo != hi:
            components.append(Interval(lo, hi, False, False))
    if not strict:
        for r, _ in real_roots:
            components.append(Interval(r, r, True, True))
    components.sort(key=lambda c: (c.lower, c.upper))
    return IntervalSet(tuple(_merge(components)))


def _merge(components):
    out = []
    for c in components:
        if out:
            last = out[-1]
            touching = (c.lower < last.upper
                        or (c.lower == last.upper
                            and (c.lower_closed or last.upper_closed)))
            if touching:
                out[-1] = Interval(last.lower, max(last.upper, c.upper),
                                   last.lower_closed,
                                   c.upper_closed if c.upper >= last.upper
                                   else last.upper_closed)
                continue
        out.append(c)
    return out


# -- normal form and Groebner bases --------------------------------------------------


def normal_form(f, basis, cancel=None):
    """Remainder of multivariate division of f by the list of polynomials."""
    return divide(f, basis, cancel)[1]


def divide(f, basis, cancel=None):
    """Multivariate division: quotients plus remainder, so that
    f = sum(q_i g_i) + r and no remainder term is divisible by any leading
    monomial of the divisors.  The quotients witness ideal membership."""
    active = [(i, g, g.leading()) for i, g in enumerate(basis) if g]
    quotients = [Polynomial.zero(f.context) for _ in basis]
    remainder = Polynomial.zero(f.context)
    p = f
    while p:
        if cancel is not None:
            cancel.check()
        pm, pc = p.leading()
        for i, g, (gm, gc) in active:
            if mono_divides(gm, pm):
                ratio = _coeff_div(pc, gc)
                shift = mono_div(pm, gm)
                quotients[i] = quotients[i].add(
                    Polynomial(p.context, {shift: ratio}, prune=False))
                p = p.sub(g.mul_term(ratio, shift))
                break
        else:
            tip = Polynomial(p.context, {pm: pc}, prune=False)
            remainder = remainder.add(tip)
            p = p.sub(tip)
    return quotients, remainder


def _coeff_div(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    return a / b


def s_polynomial(f, g):
    fm, fc = f.leading()
    gm, gc = g.leading()
    lcm = mono_lcm(fm, gm)
    return (f.mul_term(_coeff_div(1, fc), mono_div(lcm, fm))
            .sub(g.mul_term(_coeff_div(1, gc), mono_div(lcm, gm))))


def groebner_basis(polys, cancel=None, integer_output=None):
    """Reduced Groebner basis by Buchberger's algorithm with the coprime and
    chain pair-pruning criteria; pure lex order, last declared variable most
    significant.

    Computation runs over the fraction field; when integer_output is set the
    reduced generators are scaled to content-free integer polynomials with a
    positive leading coefficient, otherwise they are monic.
    """
    ctx = polys[0].context
    if integer_output is None:
        integer_output = ctx.algebra.name == "Z"
    basis = []
    for p in polys:
        q = Polynomial(ctx, {m: Fraction(c) for m, c in p.terms.items()})
        if q:
            basis.append(q)
    if not basis:
        raise ZeroPolynomialError("cannot take a basis of the zero ideal")

    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    processed = set()
    while pairs:
        if cancel is not None:
            cancel.check()
        i, j = min(pairs, key=lambda ij: (
            mono_degree(mono_lcm(basis[ij[0]].leading()[0],
                                 basis[ij[1]].leading()[0])), ij))
        pairs.discard((i, j))
        processed.add((i, j))
        fm = basis[i].leading()[0]
        gm = basis[j].leading()[0]
        lcm = mono_lcm(fm, gm)
        if lcm == mono_mul(fm, gm):
            continue  # coprime leading monomials: S-poly reduces to zero
        if _chain_criterion(basis, i, j, lcm, pairs):
            continue
        s = s_polynomial(basis[i], basis[j])
        r = normal_form(s, basis, cancel)
        if r:
            basis.append(r)
            k = len(basis) - 1
            pairs.update((m, k) for m in range(k))
    reduced = _autoreduce(basis, cancel)
    reduced.sort(key=lambda g: mono_key(g.leading()[0]), reverse=True)
    generators = [_normalize_generator(g, integer_output) for g in reduced]
    return GroebnerBasis(generators)


def _chain_criterion(basis, i, j, lcm, pending):
    for k in range(len(basis)):
        if k in (i, j):
            continue
        if not mono_divides(basis[k].leading()[0], lcm):
            continue
        ik = (min(i, k), max(i, k))
        jk = (min(j, k), max(j, k))
        if ik not in pending and jk not in pending:
            return True
    return False


def _autoreduce(basis, cancel=None):
    current = [g for g in basis if g]
    while True:
        reduced = []
        changed = False
        for i, g in enumerate(current):
            others = reduced + current[i + 1:]
            r = normal_form(g, others, cancel) if others else g
            if r.terms != g.terms:
                changed = True
            if r:
                reduced.append(r)
        current = reduced
        if not changed:
            return current


def _normalize_generator(g, integer_output):
    from math import gcd
    _, lc = g.leading()
    monic = g.scale(Fraction(1) / Fraction(lc))
    if not integer_output:
        return monic
    den_lcm = 1
    for c in monic.terms.values():
        c = Fraction(c)
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    scaled = monic.scale(Fraction(den_lcm))
    num_gcd = 0
    for c in scaled.terms.values():
        num_gcd = gcd(num_gcd, abs(int(Fraction(c))))
    if num_gcd > 1:
        scaled = scaled.scale(Fraction(1, num_gcd))
    return Polynomial(g.context, {m: int(Fraction(c))
                                  for m, c in scaled.terms.items()})


# -- polynomial systems (\solveNAE) ----------------------------------------------------

RESIDUAL_TOL = 1e-6


def solve_system(polys, cancel=None):
    """Solve a zero-dimensional system: lex basis, univariate eliminant,
    numeric back-substitution through the triangular chain."""
    ctx = polys[0].context
    if ctx.algebra.name not in ("Z", "Q", "R"):
        raise WrongSpaceError(
            "\\solveNAE needs an exact coefficient domain (Z, Q or R)")
    basis = groebner_basis(polys, cancel, integer_output=False).generators
    if len(basis) == 1 and basis[0].is_constant():
        raise NoSolutionError("the system has no solutions (basis is [1])")
    nvars = len(ctx.variables)
    for index in range(nvars):
        if not any(_pure_power_in(g, index) for g in basis):
            raise PositiveDimensionalError(
                f"no pure power of {ctx.variables[index]} leads the basis; "
                "the solution set is not finite")
    partials = [[]]
    for index in range(nvars):
        relevant = [g for g in basis
                    if g.variables_used() <= set(range(index + 1))
                    and index in g.variables_used()]
        new_partials = []
        for known in partials:
            candidates = []
            for g in relevant:
                coeffs = _substitute_known(g, known, index)
                if coeffs is not None:
                    candidates.append(coeffs)
            candidates = [c for c in candidates if len(c) > 1]
            if not candidates:
                continue
            candidates.sort(key=len)
            primary = candidates[0]
            for root in _complex_roots(primary, cancel):
                ok = True
                for other in candidates[1:]:
                    scale = max(abs(c) for c in other)
                    if abs(_poly_eval(other, root)) > RESIDUAL_TOL * (1 + scale):
                        ok = False
                        break
                if ok:
                    new_partials.append(known + [root])
        partials = new_partials
    rows = []
    for sol in partials:
        row = [_snap(z) for z in sol]
        if _row_residuals_ok(polys, row):
            rows.append(row)
    rows = _dedupe_rows(rows)
    rows.sort(key=lambda row: tuple((-z.real, -z.imag) for z in reversed(row)))
    return SolutionMatrix(rows, ctx.variables)


def _pure_power_in(g, index):
    lead = g.leading()
    if lead is None:
        return False
    m = lead[0]
    return m[index] > 0 and all(e == 0 for i, e in enumerate(m) if i != index)


def _substitute_known(g, known, index):
    """Dense coefficients of g as a univariate in variable `index` after
    substituting the known leading coordinates."""
    degree = g.degree_in(index)
    coeffs = [0j] * (degree + 1)
    for m, c in g.terms.items():
        acc = complex(Fraction(c))
        for i, e in enumerate(m):
            if i == index or e == 0:
                continue
            acc *= known[i] ** e
        coeffs[m[index]] += acc
    scale = max(abs(c) for c in coeffs) or 1.0
    trimmed = [0j if abs(c) < 1e-12 * scale else c for c in coeffs]
    while len(trimmed) > 1 and trimmed[-1] == 0:
        trimmed.pop()
    return trimmed


def _complex_roots(coeffs, cancel):
    degree = len(coeffs) - 1
    if degree == 0:
        return []
    zero_mult = 0
    work = list(coeffs)
    while work[0] == 0 and len(work) > 1:
        work = work[1:]
        zero_mult += 1
    roots = []
    if len(work) > 1:
        raw = _durand_kerner(work, len(work) - 1, cancel)
        roots = [_newton_polish(work, z) for z in raw]
    clustered = _cluster([_snap(z) for z in roots])
    out = [z for z, _ in clustered]
    if zero_mult:
        out.append(0j)
    return out


def _row_residuals_ok(polys, row):
    for f in polys:
        scale = max(abs(complex(Fraction(c))) for c in f.terms.values())
        if abs(f.eval_complex(row)) > RESIDUAL_TOL * (1 + scale):
            return False
    return True


def _dedupe_rows(rows):
    out = []
    for row in rows:
        if not any(all(abs(a - b) < CLUSTER_TOL for a, b in zip(row, kept))
                   for kept in out):
            out.append(row)
    return out
