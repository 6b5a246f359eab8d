"""Tokenizer for ATeX source text.

Reserved words start with a backslash; expressions are separated by
semicolons or by quoted text comments.  Positions are 1-based.
"""

from dataclasses import dataclass, field

from .errors import IllegalCharacterError, UnterminatedQuoteError

COMMAND = "command"
IDENTIFIER = "identifier"
NUMBER = "number"
OPERATOR = "operator"
PUNCT = "punct"
QUOTED = "quoted"

OPERATOR_CHARS = "+-*/^=<>"
PUNCT_CHARS = "()[],;"


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)

    def __repr__(self):
        return f"Token({self.kind}, {self.lexeme!r}, {self.line}:{self.column})"


def tokenize(source):
    """Split ATeX source into tokens; raises LexError subclasses on bad input."""
    tokens = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def advance(k=1):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch.isspace():
            advance()
            continue
        start_line, start_col = line, col
        if ch == '"':
            j = source.find('"', i + 1)
            if j < 0:
                raise UnterminatedQuoteError(
                    "unterminated quoted text", start_line, start_col)
            text = source[i + 1:j]
            advance(j - i + 1)
            tokens.append(Token(QUOTED, text, start_line, start_col))
            continue
        if ch == "\\":
            j = i + 1
            while j < n and source[j].isalpha():
                j += 1
            if j == i + 1:
                raise IllegalCharacterError(
                    "backslash must be followed by letters", start_line, start_col)
            lexeme = source[i:j]
            advance(j - i)
            tokens.append(Token(COMMAND, lexeme, start_line, start_col))
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            lexeme = source[i:j]
            advance(j - i)
            tokens.append(Token(NUMBER, lexeme, start_line, start_col))
            continue
        if ch.isalpha() and ch.isascii():
            j = i + 1
            while j < n and source[j].isalnum() and source[j].isascii():
                j += 1
            # one subscript group: a_1, a_max
            if j < n and source[j] == "_" and j + 1 < n and source[j + 1].isalnum():
                j += 1
                while j < n and source[j].isalnum() and source[j].isascii():
                    j += 1
            lexeme = source[i:j]
            advance(j - i)
            tokens.append(Token(IDENTIFIER, lexeme, start_line, start_col))
            continue
        if ch in "<>" and i + 1 < n and source[i + 1] == "=":
            advance(2)
            tokens.append(Token(OPERATOR, ch + "=", start_line, start_col))
            continue
        if ch in OPERATOR_CHARS:
            advance()
            tokens.append(Token(OPERATOR, ch, start_line, start_col))
            continue
        if ch in PUNCT_CHARS:
            advance()
            tokens.append(Token(PUNCT, ch, start_line, start_col))
            continue
        raise IllegalCharacterError(
            f"character {ch!r} is not part of the language alphabet",
            start_line, start_col)
    return tokens
