"""Recursive descent parser for ATeX token streams.

Precedence, tightest first:  ^  >  implicit/explicit multiplication and /
>  unary minus  >  + and -  >  relations  >  statement-level assignment.
Implicit multiplication is recognized between adjacent operands, so
`x^4y^3` parses as (x^4)(y^3) and `5x(y^3+x)` as 5*x*(y^3+x).
"""

from . import lexer
from .astnodes import (
    Assign,
    BinOp,
    Call,
    ConfigDecl,
    ListLit,
    Neg,
    NumberLit,
    Program,
    Relation,
    SpaceDecl,
    TextComment,
    VarRef,
)
from .errors import ParseError, UnknownCommandError

FUNCTION_COMMANDS = (r"\sin", r"\cos", r"\tg", r"\ctg", r"\ln", r"\exp")

VALUE_COMMANDS = (
    r"\value", r"\Factor", r"\int", r"\D", r"\solve", r"\gbasis",
    r"\solveNAE", r"\solveLAETropic", r"\solveLAITropic",
    r"\BellmanEquation", r"\searchLeastDistances", r"\findTheShortestPath",
)

PRINT_COMMANDS = (r"\print", r"\prints", r"\plot")

CALL_COMMANDS = FUNCTION_COMMANDS + VALUE_COMMANDS + PRINT_COMMANDS

RELATION_COMMANDS = {r"\le": "le", r"\ge": "ge", r"\lt": "lt", r"\gt": "gt"}

GREEK_NAMES = (
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lambda", "mu", "nu", "xi", "omicron", "pi", "rho",
    "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega",
    "Gamma", "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Upsilon",
    "Phi", "Psi", "Omega",
)

CONSTANT_COMMANDS = tuple("\\" + g for g in GREEK_NAMES) + (r"\infty", r"\i")

RELATION_OPERATORS = {"=": "eq", "<=": "le", ">=": "ge", "<": "lt", ">": "gt"}


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead=0):
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def at_end(self):
        return self.pos >= len(self.tokens)


def _err(message, tok):
    if tok is None:
        return ParseError(message + " at end of input")
    return ParseError(f"{message}: {tok.lexeme!r}", tok.line, tok.column)


def parse(tokens):
    """Parse a token sequence into a Program."""
    s = _Stream(tokens)
    statements = []
    while not s.at_end():
        tok = s.peek()
        if tok.kind == lexer.PUNCT and tok.lexeme == ";":
            s.next()
            continue
        if tok.kind == lexer.QUOTED:
            s.next()
            statements.append(TextComment(tok.lexeme, line=tok.line, column=tok.column))
            continue
        statements.append(_parse_statement(s))
        sep = s.peek()
        if sep is None:
            break
        if sep.kind == lexer.PUNCT and sep.lexeme == ";":
            s.next()
        elif sep.kind == lexer.QUOTED:
            pass  # the comment itself separates; picked up next loop
        else:
            raise _err("expected ';' or a text comment before", sep)
    return Program(tuple(statements))


def parse_source(source):
    return parse(lexer.tokenize(source))


GREEK_COMMANDS = tuple("\\" + g for g in GREEK_NAMES)


def _parse_statement(s):
    tok = s.peek()
    nxt = s.peek(1)
    is_eq = nxt is not None and nxt.kind == lexer.OPERATOR and nxt.lexeme == "="
    assignable = (tok.kind == lexer.IDENTIFIER
                  or (tok.kind == lexer.COMMAND and tok.lexeme in GREEK_COMMANDS))
    if assignable and is_eq:
        if tok.lexeme == "SPACE":
            return _parse_space_decl(s)
        if tok.lexeme == "FLOATPOS":
            return _parse_floatpos_decl(s)
        s.next()
        s.next()
        expr = _parse_expression(s)
        return Assign(tok.lexeme, expr, line=tok.line, column=tok.column)
    return _parse_expression(s)


def _parse_space_decl(s):
    tok = s.next()  # SPACE
    s.next()  # =
    name_tok = s.next()
    if name_tok is None or name_tok.kind != lexer.IDENTIFIER:
        raise _err("expected an algebra name after SPACE =", name_tok)
    _expect_punct(s, "[")
    variables = []
    while True:
        v = s.next()
        if v is None:
            raise _err("unbalanced brackets in SPACE declaration", v)
        if v.kind == lexer.IDENTIFIER or (v.kind == lexer.COMMAND
                                          and v.lexeme in CONSTANT_COMMANDS):
            variables.append(v.lexeme)
        else:
            raise _err("expected a variable name", v)
        sep = s.next()
        if sep is not None and sep.kind == lexer.PUNCT and sep.lexeme == ",":
            continue
        if sep is not None and sep.kind == lexer.PUNCT and sep.lexeme == "]":
            break
        raise _err("expected ',' or ']' in SPACE declaration", sep)
    return SpaceDecl(name_tok.lexeme, tuple(variables),
                     line=tok.line, column=tok.column)


def _parse_floatpos_decl(s):
    tok = s.next()  # FLOATPOS
    s.next()  # =
    num = s.next()
    if num is None or num.kind != lexer.NUMBER or "." in num.lexeme:
        raise _err("FLOATPOS needs a nonnegative integer", num)
    return ConfigDecl("FLOATPOS", int(num.lexeme), line=tok.line, column=tok.column)


def _expect_punct(s, ch):
    tok = s.next()
    if tok is None or tok.kind != lexer.PUNCT or tok.lexeme != ch:
        if ch in "()[]":
            raise _err(f"unbalanced parentheses: expected {ch!r}", tok)
        raise _err(f"expected {ch!r}", tok)
    return tok


def _parse_expression(s):
    lhs = _parse_additive(s)
    tok = s.peek()
    if tok is not None:
        op = None
        if tok.kind == lexer.OPERATOR and tok.lexeme in RELATION_OPERATORS:
            op = RELATION_OPERATORS[tok.lexeme]
        elif tok.kind == lexer.COMMAND and tok.lexeme in RELATION_COMMANDS:
            op = RELATION_COMMANDS[tok.lexeme]
        if op is not None:
            s.next()
            rhs = _parse_additive(s)
            return Relation(op, lhs, rhs, line=tok.line, column=tok.column)
    return lhs


def _parse_additive(s):
    lhs = _parse_unary(s)
    while True:
        tok = s.peek()
        if tok is None or tok.kind != lexer.OPERATOR or tok.lexeme not in "+-":
            return lhs
        s.next()
        rhs = _parse_unary(s)
        op = "add" if tok.lexeme == "+" else "sub"
        lhs = BinOp(op, lhs, rhs, line=tok.line, column=tok.column)


def _parse_unary(s):
    tok = s.peek()
    if tok is not None and tok.kind == lexer.OPERATOR and tok.lexeme == "-":
        s.next()
        return Neg(_parse_unary(s), line=tok.line, column=tok.column)
    return _parse_multiplicative(s)


def _starts_operand(tok):
    if tok is None:
        return False
    if tok.kind in (lexer.NUMBER, lexer.IDENTIFIER):
        return True
    if tok.kind == lexer.PUNCT and tok.lexeme in "([":
        return True
    if tok.kind == lexer.COMMAND:
        return tok.lexeme in CALL_COMMANDS or tok.lexeme in CONSTANT_COMMANDS \
            or _is_noncommutative_name(tok.lexeme)
    return False


def _is_noncommutative_name(lexeme):
    # \Name with a capital first letter that is not a registered command
    body = lexeme[1:]
    return (body[:1].isupper() and lexeme not in CALL_COMMANDS
            and lexeme not in CONSTANT_COMMANDS)


def _parse_multiplicative(s):
    lhs = _parse_power(s)
    while True:
        tok = s.peek()
        if tok is not None and tok.kind == lexer.OPERATOR and tok.lexeme in "*/":
            s.next()
            rhs = _parse_power(s)
            op = "mul" if tok.lexeme == "*" else "div"
            lhs = BinOp(op, lhs, rhs, line=tok.line, column=tok.column)
            continue
        if _starts_operand(tok):
            rhs = _parse_power(s)
            lhs = BinOp("mul", lhs, rhs, line=tok.line, column=tok.column)
            continue
        return lhs


def _parse_power(s):
    base = _parse_primary(s)
    tok = s.peek()
    if tok is not None and tok.kind == lexer.OPERATOR and tok.lexeme == "^":
        s.next()
        exponent = _parse_exponent(s)
        return BinOp("pow", base, exponent, line=tok.line, column=tok.column)
    return base


def _parse_exponent(s):
    tok = s.peek()
    if tok is not None and tok.kind == lexer.OPERATOR and tok.lexeme == "-":
        s.next()
        return Neg(_parse_exponent(s), line=tok.line, column=tok.column)
    base = _parse_primary(s)
    nxt = s.peek()
    if nxt is not None and nxt.kind == lexer.OPERATOR and nxt.lexeme == "^":
        s.next()
        exponent = _parse_exponent(s)  # right-associative
        return BinOp("pow", base, exponent, line=nxt.line, column=nxt.column)
    return base


def _parse_primary(s):
    tok = s.next()
    if tok is None:
        raise _err("unexpected end of input", tok)
    if tok.kind == lexer.NUMBER:
        return NumberLit(tok.lexeme, line=tok.line, column=tok.column)
    if tok.kind == lexer.IDENTIFIER:
        return VarRef(tok.lexeme, line=tok.line, column=tok.column)
    if tok.kind == lexer.PUNCT and tok.lexeme == "(":
        inner = _parse_expression(s)
        _expect_punct(s, ")")
        return inner
    if tok.kind == lexer.PUNCT and tok.lexeme == "[":
        return _parse_list(s, tok)
    if tok.kind == lexer.COMMAND:
        return _parse_command(s, tok)
    raise _err("unexpected token", tok)


def _parse_list(s, open_tok):
    elements = []
    tok = s.peek()
    if tok is not None and tok.kind == lexer.PUNCT and tok.lexeme == "]":
        s.next()
        return ListLit((), line=open_tok.line, column=open_tok.column)
    while True:
        elements.append(_parse_expression(s))
        sep = s.next()
        if sep is None:
            raise _err("unbalanced parentheses: expected ']'", sep)
        if sep.kind == lexer.PUNCT and sep.lexeme == ",":
            continue
        if sep.kind == lexer.PUNCT and sep.lexeme == "]":
            break
        raise _err("expected ',' or ']'", sep)
    return ListLit(tuple(elements), line=open_tok.line, column=open_tok.column)


def _parse_command(s, tok):
    name = tok.lexeme
    if name in RELATION_COMMANDS:
        raise _err("relation operator in operand position", tok)
    if name in CONSTANT_COMMANDS or _is_noncommutative_name(name):
        return VarRef(name, line=tok.line, column=tok.column)
    if name not in CALL_COMMANDS:
        raise UnknownCommandError(f"unknown command {name}", tok.line, tok.column)
    _expect_punct(s, "(")
    args = []
    nxt = s.peek()
    if nxt is not None and nxt.kind == lexer.PUNCT and nxt.lexeme == ")":
        s.next()
    else:
        while True:
            args.append(_parse_expression(s))
            sep = s.next()
            if sep is None:
                raise _err("unbalanced parentheses: expected ')'", sep)
            if sep.kind == lexer.PUNCT and sep.lexeme == ",":
                continue
            if sep.kind == lexer.PUNCT and sep.lexeme == ")":
                break
            raise _err("expected ',' or ')'", sep)
    diff_var = None
    if name == r"\int":
        d = s.peek()
        v = s.peek(1)
        if (d is not None and d.kind == lexer.IDENTIFIER and d.lexeme == "d"
                and v is not None
                and (v.kind == lexer.IDENTIFIER
                     or (v.kind == lexer.COMMAND and v.lexeme in CONSTANT_COMMANDS))):
            s.next()
            s.next()
            diff_var = v.lexeme
    return Call(name, tuple(args), diff_var, line=tok.line, column=tok.column)
