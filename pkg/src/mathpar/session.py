"""Per-session execution: a persistent Environment, statement evaluation,
command dispatch, and output selection.

Sections run against a shared environment; a failing statement stops its
section but keeps every binding made before the failure.
"""

import time
from dataclasses import dataclass, field

from . import astnodes as A
from . import parser, printer, solvers, symbolic, tropical
from .errors import (
    ArityError,
    DomainMismatchError,
    EvalError,
    EvaluationCancelled,
    MathparError,
    UnboundIdentifierError,
    WrongSpaceError,
)
from .parser import CONSTANT_COMMANDS, FUNCTION_COMMANDS
from .polynomial import Polynomial
from .spaces import (
    SpaceContext,
    TropicalScalar,
    coerce_scalar,
    default_space,
    integer_exponent,
    parse_number_literal,
    resolve_algebra,
    scalar_arith,
)
from .symbolic import SymExpr, SymPoly, combine, is_scalar

INF = float("inf")

PRINT_LIKE = (r"\print", r"\prints")


@dataclass
class Binding:
    value: object
    space: SpaceContext  # context the value was created in


@dataclass
class Output:
    label: object  # str | None
    mathpar: str
    latex: str


@dataclass
class Diagnostic:
    severity: str  # error | warning
    message: str
    line: int
    column: int


@dataclass
class ExecutionResult:
    outputs: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self):
        return not any(d.severity == "error" for d in self.diagnostics)


class Environment:
    """Binding table plus the active Space; reserved names SPACE and
    FLOATPOS never appear among the bindings."""

    def __init__(self, space=None):
        self.bindings = {}
        self.space = space or default_space()
        self.created_at = time.time()
        self.last_used_at = self.created_at

    def touch(self):
        self.last_used_at = time.time()


def clear_environment(env):
    env.bindings.clear()
    env.space = default_space()
    env.touch()
    return env


def apply_space_decl(env, decl):
    if isinstance(decl, A.SpaceDecl):
        algebra = resolve_algebra(decl.algebra)
        env.space = SpaceContext(algebra, tuple(decl.variables),
                                 env.space.floatpos)
    elif isinstance(decl, A.ConfigDecl):
        if decl.value < 0:
            raise EvalError("FLOATPOS must be nonnegative")
        env.space = env.space.with_floatpos(decl.value)
    else:
        raise TypeError(f"not a declaration: {decl!r}")
    return env


def execute_section(env, source, cancel=None):
    """Parse and run one section against the environment; the last value is
    emitted when no print-like statement ran."""
    env.touch()
    result = ExecutionResult()
    try:
        program = parser.parse_source(source)
    except MathparError as e:
        result.diagnostics.append(Diagnostic("error", e.message,
                                             e.line or 1, e.column or 1))
        return result
    printed = False
    last = None
    for stmt in program.statements:
        try:
            if isinstance(stmt, A.TextComment):
                continue
            if isinstance(stmt, (A.SpaceDecl, A.ConfigDecl)):
                apply_space_decl(env, stmt)
                continue
            if isinstance(stmt, A.Assign):
                value = eval_expr(env, stmt.expr, cancel)
                env.bindings[stmt.target] = Binding(value, env.space)
                last = (stmt.target, value)
                continue
            if isinstance(stmt, A.Call) and stmt.name in PRINT_LIKE:
                result.outputs.extend(_print_command(env, stmt, cancel))
                printed = True
                continue
            if isinstance(stmt, A.Call) and stmt.name == r"\plot":
                raise EvalError("plotting is out of scope for this kernel")
            value = eval_expr(env, stmt, cancel)
            last = (None, value)
        except EvaluationCancelled as e:
            result.diagnostics.append(Diagnostic(
                "error", e.message, stmt.line or 1, stmt.column or 1))
            return result
        except MathparError as e:
            result.diagnostics.append(Diagnostic(
                "error", e.message, e.line or stmt.line or 1,
                e.column or stmt.column or 1))
            return result
        except Exception as e:  # keep one bad statement from killing a session
            result.diagnostics.append(Diagnostic(
                "error", f"internal error: {type(e).__name__}: {e}",
                stmt.line or 1, stmt.column or 1))
            return result
    if not printed and last is not None:
        label, value = last
        result.outputs.append(_make_output(env, label, value))
    return result


def _make_output(env, label, value):
    fp = env.space.floatpos
    return Output(label, printer.format_value(value, fp, latex=False),
                  printer.format_value(value, fp, latex=True))


def _print_command(env, node, cancel):
    outputs = []
    for arg in node.args:
        label = None
        if isinstance(arg, A.VarRef):
            plain = not arg.name.startswith("\\")
            if plain or arg.name in env.bindings:
                label = arg.name
        value = eval_expr(env, arg, cancel)
        outputs.append(_make_output(env, label, value))
    return outputs


# -- expression evaluation ---------------------------------------------------------

def eval_expr(env, node, cancel=None):
    space = env.space
    if isinstance(node, A.NumberLit):
        try:
            return parse_number_literal(space.algebra, node.text)
        except EvalError as e:
            raise e.at(node.line, node.column)
    if isinstance(node, A.VarRef):
        return _eval_varref(env, node)
    if isinstance(node, A.Neg):
        return _negate(env, eval_expr(env, node.expr, cancel), node)
    if isinstance(node, A.BinOp):
        split = _split_power_base(env, node, cancel)
        if split is not None:
            return split
        lhs = eval_expr(env, node.lhs, cancel)
        rhs = eval_expr(env, node.rhs, cancel)
        try:
            return _eval_binop(env, node.op, lhs, rhs)
        except EvalError as e:
            raise e.at(node.line, node.column)
    if isinstance(node, A.Relation):
        raise EvalError("relations are only meaningful inside \\solve",
                        node.line, node.column)
    if isinstance(node, A.ListLit):
        return _eval_list(env, node, cancel)
    if isinstance(node, A.Call):
        try:
            return _eval_call(env, node, cancel)
        except EvalError as e:
            raise e.at(node.line, node.column)
    raise EvalError(f"cannot evaluate {type(node).__name__}",
                    node.line, node.column)


def _eval_varref(env, node):
    name = node.name
    space = env.space
    if name.startswith("\\"):
        if name == r"\infty":
            if space.algebra.is_tropical:
                return TropicalScalar(space.algebra.validate(INF))
            raise WrongSpaceError(r"\infty is only a value in tropical spaces",
                                  node.line, node.column)
        if name == r"\i":
            if space.algebra.name == "C64":
                return complex(0, 1)
            raise WrongSpaceError(r"\i needs the C64 space",
                                  node.line, node.column)
        if name in CONSTANT_COMMANDS:
            pass  # greek letters act as ordinary identifiers
        else:
            raise WrongSpaceError(
                f"noncommutative symbol {name} is not supported",
                node.line, node.column)
    binding = env.bindings.get(name)
    if binding is not None:
        if binding.space.same_space(space):
            return binding.value
        return _coerce_stale(space, name, binding, node)
    if name in space.variables:
        if space.algebra.is_tropical:
            raise WrongSpaceError(
                "tropical spaces have no polynomial indeterminates",
                node.line, node.column)
        return Polynomial.from_variable(space, name)
    parts = _split_variables(env, name)
    if parts:
        out = Polynomial.from_variable(space, parts[0])
        for v in parts[1:]:
            out = out.mul(Polynomial.from_variable(space, v))
        return out
    raise UnboundIdentifierError(f"unbound identifier {name}",
                                 node.line, node.column)


def _split_variables(env, name):
    """Decompose an unbound identifier into adjacent space variables, so xy
    in Q[x, y] reads as the product x y.  Longest variable name wins."""
    space = env.space
    if space.algebra.is_tropical or name in env.bindings:
        return None
    ordered = sorted(space.variables, key=len, reverse=True)
    parts = []
    i = 0
    while i < len(name):
        for v in ordered:
            if name.startswith(v, i):
                parts.append(v)
                i += len(v)
                break
        else:
            return None
    return parts if len(parts) > 1 else None


def _split_power_base(env, node, cancel):
    """xy^2 means x (y^2): an exponent on a decomposable identifier binds
    to its last variable only."""
    if node.op != "pow" or not isinstance(node.lhs, A.VarRef):
        return None
    name = node.lhs.name
    if name in env.bindings or name in env.space.variables:
        return None
    parts = _split_variables(env, name)
    if not parts:
        return None
    space = env.space
    powered = _eval_binop(env, "pow",
                          Polynomial.from_variable(space, parts[-1]),
                          eval_expr(env, node.rhs, cancel))
    out = Polynomial.from_variable(space, parts[0])
    for v in parts[1:-1]:
        out = out.mul(Polynomial.from_variable(space, v))
    return _eval_binop(env, "mul", out, powered)


def _coerce_stale(space, name, binding, node):
    value = binding.value
    if is_scalar(value) or isinstance(value, TropicalScalar):
        try:
            return coerce_scalar(space.algebra, value)
        except EvalError:
            pass
    raise WrongSpaceError(
        f"{name} was defined in {binding.space.name} and cannot be used "
        f"in {space.name}", node.line, node.column)


def _negate(env, value, node):
    space = env.space
    if isinstance(value, TropicalScalar):
        if value.is_infinite:
            return TropicalScalar(space.algebra.validate(-value.value))
        return TropicalScalar(space.algebra.coerce_finite(-value.value))
    if isinstance(value, tropical.TropicalMatrix):
        sig = value.signature
        return tropical.TropicalMatrix.build(sig, [
            [-v for v in row] for row in value.entries])
    if isinstance(value, Polynomial):
        return value.neg()
    if isinstance(value, SymExpr):
        return symbolic.sym_neg(space, value)
    if is_scalar(value):
        return scalar_arith(space.algebra, "sub",
                            coerce_scalar(space.algebra, 0), value)
    raise EvalError("this value cannot be negated", node.line, node.column)


def _eval_binop(env, op, lhs, rhs):
    space = env.space
    if space.algebra.is_tropical:
        return _eval_tropical_binop(space, op, lhs, rhs)
    for v in (lhs, rhs):
        if isinstance(v, (TropicalScalar, tropical.TropicalMatrix)):
            raise WrongSpaceError(
                "tropical values cannot be used in a classical space")
        if not (is_scalar(v) or isinstance(v, (Polynomial, SymExpr))):
            raise EvalError("this value does not support arithmetic")
    return combine(space, op, lhs, rhs)


def _eval_tropical_binop(space, op, lhs, rhs):
    sig = space.algebra
    lhs_mat = isinstance(lhs, tropical.TropicalMatrix)
    rhs_mat = isinstance(rhs, tropical.TropicalMatrix)
    if not lhs_mat and not rhs_mat:
        return scalar_arith(sig, op, lhs, rhs)
    if lhs_mat and rhs_mat:
        if op == "add":
            return tropical.mat_add(lhs, rhs)
        if op == "mul":
            return tropical.mat_mul(lhs, rhs)
        raise DomainMismatchError(
            f"matrices only support (+) and (x), not {op}")
    if op == "mul":
        scalar = rhs if lhs_mat else lhs
        matrix = lhs if lhs_mat else rhs
        scalar = coerce_scalar(sig, scalar)
        return tropical.mat_scale(sig, scalar.value, matrix)
    if op == "pow" and lhs_mat:
        n = _node_int(rhs)
        if not lhs.is_square() or n < 1:
            raise DomainMismatchError("matrix powers need a square base and n >= 1")
        out = lhs
        for _ in range(n - 1):
            out = tropical.mat_mul(out, lhs)
        return out
    raise DomainMismatchError("unsupported tropical operation")


def _node_int(value):
    if isinstance(value, TropicalScalar):
        value = value.value
    return integer_exponent(value)


def _eval_list(env, node, cancel):
    space = env.space
    if not space.algebra.is_tropical:
        raise WrongSpaceError(
            "list literals evaluate to matrices only in tropical spaces",
            node.line, node.column)
    sig = space.algebra
    if node.elements and all(isinstance(e, A.ListLit) for e in node.elements):
        grid = []
        for row_node in node.elements:
            row = []
            for cell in row_node.elements:
                v = coerce_scalar(sig, eval_expr(env, cell, cancel))
                row.append(v.value)
            grid.append(row)
        return tropical.TropicalMatrix.build(sig, grid)
    column = []
    for cell in node.elements:
        v = coerce_scalar(sig, eval_expr(env, cell, cancel))
        column.append([v.value])
    return tropical.TropicalMatrix.build(sig, column)


# -- command dispatch -------------------------------------------------------------------

CLASSICAL_EXACT = ("Z", "Q", "R")


def _classical_operand(value, name, node):
    """Commands over expressions accept scalars, polynomials and symbolic
    expressions; solver results and matrices are not expression material."""
    if is_scalar(value) or isinstance(value, (Polynomial, SymExpr)):
        return value
    raise EvalError(f"{name} needs a scalar, polynomial or expression, "
                    f"not {type(value).__name__}", node.line, node.column)


def _eval_call(env, node, cancel):
    name = node.name
    space = env.space
    if name in FUNCTION_COMMANDS:
        _require_classical(space, name)
        _need_args(node, 1)
        arg = _classical_operand(eval_expr(env, node.args[0], cancel),
                                 name, node)
        return symbolic.apply_function(space, name[1:], arg)
    if name == r"\value":
        return _cmd_value(env, node, cancel)
    if name == r"\Factor":
        _require_classical(space, name)
        _need_args(node, 1)
        return symbolic.factor_simplify(
            space,
            _classical_operand(eval_expr(env, node.args[0], cancel), name, node))
    if name == r"\int":
        return _cmd_integrate(env, node, cancel)
    if name == r"\D":
        return _cmd_derivative(env, node, cancel)
    if name == r"\solve":
        return _cmd_solve(env, node, cancel)
    if name == r"\gbasis":
        return _cmd_gbasis(env, node, cancel)
    if name == r"\solveNAE":
        return _cmd_solve_nae(env, node, cancel)
    if name in (r"\solveLAETropic", r"\solveLAITropic"):
        _require_tropical(space, name)
        _need_args(node, 2)
        a = _as_matrix(env, node.args[0], cancel)
        b = _as_column(env, node.args[1], cancel)
        if name == r"\solveLAETropic":
            return tropical.solve_linear_equation(a, b, cancel)
        return tropical.solve_linear_inequality(a, b, cancel)
    if name == r"\BellmanEquation":
        _require_tropical(space, name)
        if len(node.args) == 1:
            return tropical.bellman_homogeneous(
                _as_matrix(env, node.args[0], cancel), cancel)
        _need_args(node, 2)
        a = _as_matrix(env, node.args[0], cancel)
        b = _as_column(env, node.args[1], cancel)
        return tropical.bellman(a, b, cancel)
    if name == r"\searchLeastDistances":
        _require_tropical(space, name)
        _need_args(node, 1)
        return tropical.search_least_distances(
            _as_matrix(env, node.args[0], cancel), cancel)
    if name == r"\findTheShortestPath":
        _require_tropical(space, name)
        _need_args(node, 3)
        a = _as_matrix(env, node.args[0], cancel)
        i = _node_int(eval_expr(env, node.args[1], cancel))
        j = _node_int(eval_expr(env, node.args[2], cancel))
        return tropical.find_shortest_path(a, i, j, cancel)
    if name in PRINT_LIKE or name == r"\plot":
        raise EvalError(f"{name} is a statement, not an expression")
    raise EvalError(f"no evaluator for {name}")


def _need_args(node, n):
    if len(node.args) != n:
        raise ArityError(f"{node.name} takes {n} argument(s), "
                         f"got {len(node.args)}")


def _require_classical(space, name):
    if space.algebra.is_tropical:
        raise WrongSpaceError(f"{name} needs a classical space, "
                              f"not {space.algebra.name}")


def _require_tropical(space, name):
    if not space.algebra.is_tropical:
        raise WrongSpaceError(f"{name} needs a tropical space, "
                              f"not {space.algebra.name}")


def _require_exact(space, name):
    if space.algebra.is_tropical or space.algebra.name not in CLASSICAL_EXACT:
        raise WrongSpaceError(
            f"{name} needs an exact coefficient domain (Z, Q or R)")


def _cmd_value(env, node, cancel):
    space = env.space
    _require_classical(space, r"\value")
    if not node.args:
        raise ArityError(r"\value needs a function argument")
    target = _classical_operand(eval_expr(env, node.args[0], cancel),
                                r"\value", node)
    if len(node.args) == 1:
        return target
    if len(node.args) != 2 or not isinstance(node.args[1], A.ListLit):
        raise ArityError(r"\value takes (f, [v1, ..., vn])")
    subs = [_classical_operand(eval_expr(env, e, cancel), r"\value", node)
            for e in node.args[1].elements]
    return symbolic.value(space, target, subs)


def _cmd_integrate(env, node, cancel):
    space = env.space
    _require_classical(space, r"\int")
    _need_args(node, 1)
    integrand = _classical_operand(eval_expr(env, node.args[0], cancel),
                                   r"\int", node)
    var = node.diff_var or space.variables[0]
    return symbolic.integrate(space, integrand, var)


def _cmd_derivative(env, node, cancel):
    space = env.space
    _require_classical(space, r"\D")
    _need_args(node, 2)
    target = _classical_operand(eval_expr(env, node.args[0], cancel),
                                r"\D", node)
    spec = node.args[1]
    if isinstance(spec, A.VarRef):
        var, order = spec.name, 1
    elif (isinstance(spec, A.BinOp) and spec.op == "pow"
          and isinstance(spec.lhs, A.VarRef)
          and isinstance(spec.rhs, A.NumberLit)):
        var, order = spec.lhs.name, int(spec.rhs.text)
    else:
        raise EvalError(r"\D takes (f, var) or (f, var^n)")
    return symbolic.derivative(space, target, var, order)


def _as_solver_polynomial(env, value, node):
    space = env.space
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, SymPoly):
        return value.poly
    if is_scalar(value):
        return Polynomial.from_scalar(space, value)
    raise EvalError("the solvers need polynomial arguments",
                    node.line, node.column)


def _cmd_solve(env, node, cancel):
    space = env.space
    _require_classical(space, r"\solve")
    _need_args(node, 1)
    arg = node.args[0]
    if isinstance(arg, A.Relation):
        lhs = eval_expr(env, arg.lhs, cancel)
        rhs = eval_expr(env, arg.rhs, cancel)
        moved = combine(space, "sub", lhs, rhs)
        p = _as_solver_polynomial(env, moved, node)
        if arg.op == "eq":
            return solvers.solve_univariate(p, cancel)
        if space.algebra.name == "C64":
            raise WrongSpaceError("inequalities need a real domain")
        return solvers.solve_inequality(p, arg.op, cancel)
    value = eval_expr(env, arg, cancel)
    p = _as_solver_polynomial(env, value, node)
    return solvers.solve_univariate(p, cancel)


def _cmd_gbasis(env, node, cancel):
    space = env.space
    _require_exact(space, r"\gbasis")
    if not node.args:
        raise ArityError(r"\gbasis needs at least one polynomial")
    polys = [_as_solver_polynomial(env, eval_expr(env, a, cancel), node)
             for a in node.args]
    return solvers.groebner_basis(polys, cancel)


def _cmd_solve_nae(env, node, cancel):
    space = env.space
    _require_exact(space, r"\solveNAE")
    if not node.args:
        raise ArityError(r"\solveNAE needs at least one polynomial")
    polys = [_as_solver_polynomial(env, eval_expr(env, a, cancel), node)
             for a in node.args]
    return solvers.solve_system(polys, cancel)


def _as_matrix(env, node, cancel):
    value = eval_expr(env, node, cancel)
    if not isinstance(value, tropical.TropicalMatrix):
        raise EvalError("expected a tropical matrix", node.line, node.column)
    return value


def _as_column(env, node, cancel):
    value = _as_matrix(env, node, cancel)
    if value.rows == 1 and value.cols > 1:
        return tropical.TropicalMatrix.build(
            value.signature, [[value.entry(0, j)] for j in range(value.cols)])
    return value
