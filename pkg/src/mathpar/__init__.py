"""Mathpar: a session-oriented computer algebra kernel for the ATeX language.

The kernel evaluates TeX-like input (commands start with a backslash,
statements end with semicolons) inside an explicit algebraic Space, and is
exposed as a Python API, an HTTP service and a CLI/REPL.
"""

__version__ = "0.1.0"

from .errors import CancelToken, EvalError, LexError, MathparError, ParseError  # noqa: F401
from .lexer import tokenize  # noqa: F401
from .parser import parse, parse_source  # noqa: F401
from .printer import format_value, print_latex, print_mathpar  # noqa: F401
from .session import (  # noqa: F401
    Environment,
    ExecutionResult,
    apply_space_decl,
    clear_environment,
    eval_expr,
    execute_section,
)
from .spaces import (  # noqa: F401
    SpaceContext,
    default_space,
    format_scalar,
    resolve_algebra,
    tropical_catalog,
)
