"""AST node types for parsed ATeX programs.

Structural equality ignores source positions, so round-tripped trees
compare equal to their originals.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Node:
    line: int = field(default=0, compare=False, kw_only=True)
    column: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class NumberLit(Node):
    """Numeric literal kept as its exact decimal text; the active Space
    decides how it is interpreted at evaluation time."""
    text: str


@dataclass(frozen=True)
class VarRef(Node):
    name: str  # plain identifiers, or backslash constants like \infty


@dataclass(frozen=True)
class Assign(Node):
    target: str
    expr: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # add | sub | mul | div | pow
    lhs: Node
    rhs: Node


@dataclass(frozen=True)
class Neg(Node):
    expr: Node


@dataclass(frozen=True)
class Call(Node):
    name: str  # command with backslash, e.g. \sin
    args: tuple
    diff_var: str | None = None  # the x of  \int(f) d x


@dataclass(frozen=True)
class ListLit(Node):
    elements: tuple


@dataclass(frozen=True)
class Relation(Node):
    op: str  # eq | le | ge | lt | gt
    lhs: Node
    rhs: Node


@dataclass(frozen=True)
class SpaceDecl(Node):
    algebra: str
    variables: tuple


@dataclass(frozen=True)
class ConfigDecl(Node):
    key: str  # FLOATPOS
    value: int


@dataclass(frozen=True)
class TextComment(Node):
    text: str


@dataclass(frozen=True)
class Program:
    statements: tuple
