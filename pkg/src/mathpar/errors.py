"""Error types shared across the kernel, plus the cooperative cancellation token."""

import threading
import time


class MathparError(Exception):
    """Base class; carries an optional 1-based source position."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def at(self, line, column):
        """Attach a position if none is set yet; returns self."""
        if self.line is None:
            self.line = line
            self.column = column
        return self


class LexError(MathparError):
    pass


class ParseError(MathparError):
    pass


class EvalError(MathparError):
    pass


# -- lexing / parsing ------------------------------------------------------

class UnterminatedQuoteError(LexError):
    pass


class IllegalCharacterError(LexError):
    pass


class UnknownCommandError(ParseError):
    pass


# -- spaces / scalars ------------------------------------------------------

class UnknownAlgebraError(EvalError):
    pass


class InvalidSignatureError(EvalError):
    pass


class DomainMismatchError(EvalError):
    pass


class DivisionByZeroError(EvalError):
    pass


class UndefinedProductError(EvalError):
    pass


# -- evaluation ------------------------------------------------------------

class UnboundIdentifierError(EvalError):
    pass


class WrongSpaceError(EvalError):
    pass


class ArityError(EvalError):
    pass


class UndefinedValueError(EvalError):
    pass


class UnsupportedFunctionError(EvalError):
    pass


class NonPolynomialIntegrandError(EvalError):
    pass


# -- solvers ---------------------------------------------------------------

class ZeroPolynomialError(EvalError):
    pass


class NonConvergenceError(EvalError):
    pass


class NotUnivariateError(EvalError):
    pass


class PositiveDimensionalError(EvalError):
    pass


class NoSolutionError(EvalError):
    """A x = b has no exact solution; carries the greatest subsolution."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


# -- tropical --------------------------------------------------------------

class NonInvertibleSignatureError(EvalError):
    pass


class DimensionMismatchError(EvalError):
    pass


class SignatureMismatchError(EvalError):
    pass


class StarDivergesError(EvalError):
    pass


class UnreachableError(EvalError):
    pass


# -- cancellation ----------------------------------------------------------

class EvaluationCancelled(MathparError):
    pass


class CancelToken:
    """Cooperative cancellation: long-running loops call check() each step.

    A token can be cancelled explicitly or carry a wall-clock budget in
    seconds; either condition makes check() raise EvaluationCancelled.
    """

    def __init__(self, budget_seconds=None):
        self._cancelled = threading.Event()
        self._deadline = None
        if budget_seconds is not None:
            self._deadline = time.monotonic() + budget_seconds

    def cancel(self):
        self._cancelled.set()

    def check(self):
        if self._cancelled.is_set():
            raise EvaluationCancelled("evaluation cancelled")
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise EvaluationCancelled("evaluation exceeded its time budget")
