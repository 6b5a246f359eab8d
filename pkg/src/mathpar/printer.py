"""Printers: AST back to Mathpar text and to LaTeX math-mode text.

print_mathpar output re-parses to a structurally identical tree; the
juxtaposition rules below only join factors where the lexer cannot merge
them into a single token.
"""

from . import astnodes as A

# printing precedence; parenthesize a child when its level is too low
_ATOM = 6
_POW = 5
_MUL = 4
_UNARY = 3
_ADD = 2
_REL = 1
_STMT = 0


def print_mathpar(node):
    """Render a statement, expression or whole Program as Mathpar text."""
    if isinstance(node, A.Program):
        return "".join(_stmt_mathpar(s) for s in node.statements)
    return _stmt_mathpar(node).rstrip("\n").rstrip(";")


def _stmt_mathpar(node):
    if isinstance(node, A.TextComment):
        return f'"{node.text}"\n'
    return _mp(node, _STMT) + ";\n"


def _is_div(node):
    return isinstance(node, A.BinOp) and node.op == "div"


def _ends_with_number_token(text):
    # True when the trailing digit run is a standalone number, not the
    # tail of an identifier such as a_1
    i = len(text)
    while i > 0 and (text[i - 1].isdigit() or text[i - 1] == "."):
        i -= 1
    if i == len(text):
        return False
    if i == 0:
        return True
    prev = text[i - 1]
    return not (prev.isalnum() or prev == "_")


def _join_factors(left, right):
    tight = (right[:1] in ("(", "\\")
             or left[-1:] == ")"
             or (_ends_with_number_token(left) and right[:1].isalpha()))
    return left + right if tight else left + " " + right


def _mp(node, parent_level):
    text, level = _mp_level(node)
    if level < parent_level:
        return "(" + text + ")"
    return text


_REL_TEXT = {"eq": " = ", "le": r" \le ", "ge": r" \ge ", "lt": " < ", "gt": " > "}


def _mp_level(node):
    if isinstance(node, A.NumberLit):
        return node.text, _ATOM
    if isinstance(node, A.VarRef):
        return node.name, _ATOM
    if isinstance(node, A.Assign):
        return f"{node.target} = {_mp(node.expr, _REL)}", _STMT
    if isinstance(node, A.Relation):
        lhs = _mp(node.lhs, _ADD)
        rhs = _mp(node.rhs, _ADD)
        return lhs + _REL_TEXT[node.op] + rhs, _REL
    if isinstance(node, A.Neg):
        return "-" + _mp(node.expr, _UNARY), _UNARY
    if isinstance(node, A.BinOp):
        return _mp_binop(node)
    if isinstance(node, A.Call):
        args = ", ".join(_mp(a, _REL) for a in node.args)
        text = f"{node.name}({args})"
        if node.diff_var:
            text += f" d {node.diff_var}"
        return text, _ATOM
    if isinstance(node, A.ListLit):
        return "[" + ", ".join(_mp(e, _REL) for e in node.elements) + "]", _ATOM
    if isinstance(node, A.SpaceDecl):
        return f"SPACE = {node.algebra}[{', '.join(node.variables)}]", _STMT
    if isinstance(node, A.ConfigDecl):
        return f"{node.key} = {node.value}", _STMT
    if isinstance(node, A.TextComment):
        return f'"{node.text}"', _STMT
    raise TypeError(f"cannot print {node!r}")


def _mp_binop(node):
    if node.op == "add":
        return _mp(node.lhs, _ADD) + "+" + _mp(node.rhs, _ADD + 1), _ADD
    if node.op == "sub":
        return _mp(node.lhs, _ADD) + "-" + _mp(node.rhs, _ADD + 1), _ADD
    if node.op == "mul":
        # quotients as factors get explicit parentheses: (8/7)x^7
        lhs_level = _MUL + 1 if _is_div(node.lhs) else _MUL
        left = _mp(node.lhs, lhs_level)
        right = _mp(node.rhs, _MUL + 1)
        return _join_factors(left, right), _MUL
    if node.op == "div":
        return _mp(node.lhs, _MUL) + "/" + _mp(node.rhs, _MUL + 1), _MUL
    if node.op == "pow":
        base = _mp(node.lhs, _POW + 1)
        exponent = _mp_exponent(node.rhs)
        return base + "^" + exponent, _POW
    raise ValueError(f"unknown operator {node.op}")


def _mp_exponent(node):
    # the exponent grammar admits atoms, an optional leading minus,
    # and chained powers; everything else needs parentheses
    if isinstance(node, A.Neg):
        return "-" + _mp_exponent(node.expr)
    if isinstance(node, (A.NumberLit, A.VarRef)):
        return _mp(node, _ATOM)
    if isinstance(node, A.BinOp) and node.op == "pow":
        return _mp(node.lhs, _POW + 1) + "^" + _mp_exponent(node.rhs)
    return "(" + _mp(node, _STMT) + ")"


# -- LaTeX -------------------------------------------------------------------

_REL_LATEX = {"eq": " = ", "le": r" \le ", "ge": r" \ge ", "lt": " < ", "gt": " > "}


def print_latex(node):
    """Render a statement or expression as LaTeX math-mode text."""
    if isinstance(node, A.Program):
        return r" \\ ".join(_lx(s, _STMT) for s in node.statements)
    return _lx(node, _STMT)


def _lx(node, parent_level):
    text, level = _lx_level(node)
    if level < parent_level:
        return r"\left(" + text + r"\right)"
    return text


def _lx_level(node):
    if isinstance(node, A.NumberLit):
        return node.text, _ATOM
    if isinstance(node, A.VarRef):
        if node.name == r"\i":
            return r"\mathbf{i}", _ATOM
        return node.name, _ATOM
    if isinstance(node, A.Assign):
        return f"{node.target} = {_lx(node.expr, _REL)}", _STMT
    if isinstance(node, A.Relation):
        return (_lx(node.lhs, _ADD) + _REL_LATEX[node.op]
                + _lx(node.rhs, _ADD)), _REL
    if isinstance(node, A.Neg):
        return "-" + _lx(node.expr, _UNARY), _UNARY
    if isinstance(node, A.BinOp):
        return _lx_binop(node)
    if isinstance(node, A.Call):
        args = ", ".join(_lx(a, _REL) for a in node.args)
        text = f"{node.name}({args})"
        if node.diff_var:
            text += rf"\, d {node.diff_var}"
        return text, _ATOM
    if isinstance(node, A.ListLit):
        if node.elements and all(isinstance(e, A.ListLit) for e in node.elements):
            return _lx_matrix(node), _ATOM
        body = ", ".join(_lx(e, _REL) for e in node.elements)
        return r"\left[" + body + r"\right]", _ATOM
    if isinstance(node, A.SpaceDecl):
        return rf"SPACE = {node.algebra}[{', '.join(node.variables)}]", _STMT
    if isinstance(node, A.ConfigDecl):
        return f"{node.key} = {node.value}", _STMT
    if isinstance(node, A.TextComment):
        return rf"\text{{{node.text}}}", _STMT
    raise TypeError(f"cannot print {node!r}")


def _lx_matrix(node):
    ncols = max(len(r.elements) for r in node.elements)
    rows = [" & ".join(_lx(e, _REL) for e in r.elements) for r in node.elements]
    return (r"\left(\begin{array}{" + "c" * ncols + "}"
            + r" \\ ".join(rows) + r"\end{array}\right)")


def _lx_binop(node):
    if node.op == "add":
        return _lx(node.lhs, _ADD) + "+" + _lx(node.rhs, _ADD + 1), _ADD
    if node.op == "sub":
        return _lx(node.lhs, _ADD) + "-" + _lx(node.rhs, _ADD + 1), _ADD
    if node.op == "mul":
        left = _lx(node.lhs, _MUL)
        right = _lx(node.rhs, _MUL + 1)
        sep = r"\cdot " if right[:1].isdigit() else ""
        return left + sep + right, _MUL
    if node.op == "div":
        return (r"\frac{" + _lx(node.lhs, _STMT) + "}{"
                + _lx(node.rhs, _STMT) + "}"), _MUL
    if node.op == "pow":
        base = _lx(node.lhs, _POW + 1)
        return base + "^{" + _lx(node.rhs, _STMT) + "}", _POW
    raise ValueError(f"unknown operator {node.op}")


# -- Value rendering (session output) ------------------------------------------

from fractions import Fraction

from .polynomial import Polynomial
from .solvers import GroebnerBasis, IntervalSet, RootList, SolutionMatrix
from .spaces import (
    Real,
    TropicalScalar,
    format_float,
    format_scalar,
    format_scalar_latex,
)
from .symbolic import SymAdd, SymApply, SymDiv, SymExpr, SymMul, SymPoly, SymPow


def format_value(value, floatpos, latex=False):
    """Render any session Value as Mathpar text or LaTeX."""
    if isinstance(value, Polynomial):
        return format_polynomial(value, floatpos, latex)
    if isinstance(value, SymExpr):
        return _sym_text(value, floatpos, latex, _ADD)
    if isinstance(value, IntervalSet):
        return _interval_set_text(value, floatpos)
    if isinstance(value, RootList):
        return _root_list_text(value, floatpos, latex)
    if isinstance(value, SolutionMatrix):
        return _solution_matrix_text(value, floatpos, latex)
    if isinstance(value, GroebnerBasis):
        items = ", ".join(format_polynomial(g, floatpos, latex)
                          for g in value.generators)
        return f"[{items}]"
    if isinstance(value, str):
        return value
    if hasattr(value, "entries") and hasattr(value, "signature"):
        return _tropical_matrix_text(value, floatpos, latex)
    if hasattr(value, "nodes") and hasattr(value, "distance"):
        nodes = ", ".join(str(n) for n in value.nodes)
        dist = format_scalar(TropicalScalar(value.distance), floatpos)
        return f"[[{nodes}], {dist}]"
    if latex:
        return format_scalar_latex(value, floatpos)
    return format_scalar(value, floatpos)


# -- polynomials ----------------------------------------------------------------

def format_polynomial(p, floatpos, latex=False):
    if not p.terms:
        return "0"
    pieces = []
    for mono, coeff in p.sorted_terms():
        mono_txt = _monomial_text(p.context, mono, latex)
        sign, coeff_txt = _coefficient_text(coeff, floatpos, bool(mono_txt), latex)
        body = _join_tight(coeff_txt, mono_txt)
        if not pieces:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(sign + body)
    return "".join(pieces)


def _monomial_text(context, mono, latex):
    parts = []
    for name, exp in zip(context.variables, mono):
        if exp == 0:
            continue
        if exp == 1:
            parts.append(name)
        elif latex:
            parts.append(f"{name}^{{{exp}}}")
        else:
            parts.append(f"{name}^{exp}")
    if latex:
        return "".join(parts)
    out = ""
    for part in parts:
        out = _join_tight(out, part)
    return out


def _join_tight(left, right):
    if not left:
        return right
    if not right:
        return left
    if right[0].isalpha() and (left[-1].isalpha() or left[-1] == "_"):
        return left + " " + right  # xy would lex as one identifier
    if right[0].isdigit() and (left[-1].isdigit() or left[-1].isalpha()):
        return left + " " + right
    if left[-1] == "i" and right[0] == "\\":
        return left + " " + right
    if left[-1:] == "\\":
        return left + right
    if left.endswith("\\i"):
        return left + " " + right  # \ix would lex as one command
    return left + right


def _coefficient_text(coeff, floatpos, has_mono, latex):
    if isinstance(coeff, Real):
        coeff = coeff.value
    if isinstance(coeff, complex):
        if coeff.imag == 0:
            coeff = coeff.real
        else:
            body = (format_scalar_latex(coeff, floatpos) if latex
                    else format_scalar(coeff, floatpos))
            if has_mono:
                if not body.startswith("("):
                    body = f"({body})"
                return "+", body
            return "+", body
    if isinstance(coeff, float):
        if coeff == int(coeff):
            coeff = int(coeff)
        else:
            sign = "-" if coeff < 0 else "+"
            return sign, format_float(abs(coeff), floatpos)
    if isinstance(coeff, Fraction):
        if coeff.denominator == 1:
            coeff = int(coeff)
        else:
            sign = "-" if coeff < 0 else "+"
            num, den = abs(coeff.numerator), coeff.denominator
            if latex:
                return sign, rf"\frac{{{num}}}{{{den}}}"
            body = f"{num}/{den}"
            return sign, f"({body})" if has_mono else body
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    if has_mono and mag == 1:
        return sign, ""
    return sign, str(mag)


# -- symbolic expressions ----------------------------------------------------------

def _sym_text(e, floatpos, latex, level):
    text, own = _sym_level(e, floatpos, latex)
    if own < level:
        return rf"\left({text}\right)" if latex else f"({text})"
    return text


def _sym_level(e, floatpos, latex):
    if isinstance(e, SymPoly):
        text = format_polynomial(e.poly, floatpos, latex)
        if len(e.poly.terms) == 1 and not text.startswith("-"):
            return text, _MUL
        if e.poly.is_constant() and not text.startswith("-"):
            return text, _ATOM
        return text, _ADD
    if isinstance(e, SymApply):
        inner = _sym_text(e.arg, floatpos, latex, _ADD)
        return f"\\{e.fn}({inner})", _ATOM
    if isinstance(e, SymAdd):
        out = ""
        for part in e.parts:
            text = _sym_text(part, floatpos, latex, _ADD)
            if not out:
                out = text
            elif text.startswith("-"):
                out += text
            else:
                out += "+" + text
        return out, _ADD
    if isinstance(e, SymMul):
        out = ""
        for part in e.parts:
            text = _sym_text(part, floatpos, latex, _MUL + 1)
            out = text if not out else _join_tight(out, text)
        return out, _MUL
    if isinstance(e, SymPow):
        base = _sym_text(e.base, floatpos, latex, _ATOM)
        if latex:
            return f"{base}^{{{e.exponent}}}", _POW
        return f"{base}^{e.exponent}", _POW
    if isinstance(e, SymDiv):
        if latex:
            num = _sym_text(e.num, floatpos, latex, _ADD)
            den = _sym_text(e.den, floatpos, latex, _ADD)
            return rf"\frac{{{num}}}{{{den}}}", _MUL
        num = _sym_text(e.num, floatpos, latex, _MUL + 1)
        den = _sym_text(e.den, floatpos, latex, _MUL + 1)
        return f"{num}/{den}", _MUL
    raise TypeError(f"cannot render {e!r}")


# -- solver results -------------------------------------------------------------------

def _trim_zeros(text):
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text or "0"


def _endpoint_text(v, floatpos):
    if v == float("inf"):
        return r"\infty"
    if v == float("-inf"):
        return r"-\infty"
    return _trim_zeros(format_float(v, floatpos))


def _interval_set_text(intervals, floatpos):
    if not intervals.components:
        return r"\{\}"
    pieces = []
    for c in intervals.components:
        if c.is_point:
            pieces.append(r"\{" + _endpoint_text(c.lower, floatpos) + r"\}")
            continue
        left = "[" if c.lower_closed else "("
        right = "]" if c.upper_closed else ")"
        pieces.append(f"{left}{_endpoint_text(c.lower, floatpos)}, "
                      f"{_endpoint_text(c.upper, floatpos)}{right}")
    return r"\cup".join(pieces)


def _root_list_text(roots, floatpos, latex):
    fmt = format_scalar_latex if latex else format_scalar
    items = []
    for z, mult in roots.roots:
        items.extend([fmt(z, floatpos)] * mult)
    return "[" + ", ".join(items) + "]"


def _solution_matrix_text(matrix, floatpos, latex):
    if latex:
        ncols = len(matrix.column_variables)
        rows = [" & ".join(format_scalar_latex(z, floatpos) for z in row)
                for row in matrix.rows]
        return (r"\left(\begin{array}{" + "c" * ncols + "}"
                + r" \\ ".join(rows) + r"\end{array}\right)")
    rows = ["[" + ", ".join(format_scalar(z, floatpos) for z in row) + "]"
            for row in matrix.rows]
    return "[" + ", ".join(rows) + "]"


def _tropical_matrix_text(matrix, floatpos, latex):
    fmt = lambda v: format_scalar(TropicalScalar(v), floatpos)  # noqa: E731
    if latex:
        ncols = max(matrix.cols, 1)
        rows = [" & ".join(fmt(v) for v in row) for row in matrix.entries]
        return (r"\left(\begin{array}{" + "c" * ncols + "}"
                + r" \\ ".join(rows) + r"\end{array}\right)")
    rows = ["[" + ", ".join(fmt(v) for v in row) + "]"
            for row in matrix.entries]
    return "[" + ", ".join(rows) + "]"
