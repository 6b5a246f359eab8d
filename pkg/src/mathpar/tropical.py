"""Matrix algebra over tropical semirings: closure (Kleene star), the two
residuation solvers, Bellman fixpoints, and all-pairs least distances with
path reconstruction.

Matrix entries are raw carrier values (int, Fraction or float, with
float('+-inf') for the infinite elements); the signature travels with the
matrix.
"""

import math
from dataclasses import dataclass

from .errors import (
    DimensionMismatchError,
    NoSolutionError,
    SignatureMismatchError,
    StarDivergesError,
    UnreachableError,
)
from .spaces import trop_add, trop_mul, trop_residual


@dataclass(frozen=True)
class TropicalMatrix:
    signature: object
    entries: tuple  # tuple of row tuples

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def build(cls, signature, grid):
        rows = tuple(tuple(row) for row in grid)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatchError("ragged matrix rows")
        return cls(signature, rows)

    def entry(self, i, j):
        return self.entries[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def is_square(self):
        return self.rows == self.cols


@dataclass(frozen=True)
class PathResult:
    nodes: tuple  # 1-based node indices
    distance: object


def identity(signature, n):
    return TropicalMatrix.build(signature, [
        [signature.unit if i == j else signature.zero for j in range(n)]
        for i in range(n)])


def _check_signatures(a, b):
    if a.signature != b.signature:
        raise SignatureMismatchError(
            f"matrices over {a.signature.name} and {b.signature.name}")


def mat_add(a, b):
    _check_signatures(a, b)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatchError(
            f"cannot add {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    sig = a.signature
    return TropicalMatrix.build(sig, [
        [trop_add(sig, a.entry(i, j), b.entry(i, j)) for j in range(a.cols)]
        for i in range(a.rows)])


def mat_mul(a, b):
    _check_signatures(a, b)
    if a.cols != b.rows:
        raise DimensionMismatchError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    sig = a.signature
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = sig.zero
            for k in range(a.cols):
                acc = trop_add(sig, acc, trop_mul(sig, a.entry(i, k), b.entry(k, j)))
            row.append(acc)
        out.append(row)
    return TropicalMatrix.build(sig, out)


def _dot_absorbing(sig, row, col):
    """Row-by-column product where the zero element absorbs before any
    indeterminate form can arise; used internally by the residuation
    solvers, whose principal solutions may contain top elements."""
    acc = sig.zero
    for a, x in zip(row, col):
        if a == sig.zero or x == sig.zero:
            continue
        acc = trop_add(sig, acc, trop_mul(sig, a, x))
    return acc


def mat_scale(sig, scalar, m):
    return TropicalMatrix.build(sig, [
        [trop_mul(sig, scalar, m.entry(i, j)) for j in range(m.cols)]
        for i in range(m.rows)])


def kleene_star(a, cancel=None):
    """A* = I (+) A (+) A^2 (+) ..., iterated as M <- I (+) A M until the
    fixpoint.  Without an improving cycle the fixpoint arrives within n
    iterations (paths need at most n - 1 edges), so a change at iteration n
    signals divergence."""
    if not a.is_square():
        raise DimensionMismatchError("Kleene star needs a square matrix")
    n = a.rows
    eye = identity(a.signature, n)
    m = eye
    for _ in range(n):
        if cancel is not None:
            cancel.check()
        nxt = mat_add(eye, mat_mul(a, m))
        if nxt == m:
            return m
        m = nxt
    raise StarDivergesError(
        "closure did not stabilize: the matrix has an improving cycle")


def solve_linear_equation(a, b, cancel=None):
    """Principal solution of A x = b by residuation; exact solutions only.

    When A xhat differs from b the greatest subsolution xhat rides along on
    the error payload."""
    xhat = _principal_solution(a, b)
    sig = a.signature
    check = [_dot_absorbing(sig, a.entries[i], xhat) for i in range(a.rows)]
    if list(check) != [b.entry(i, 0) for i in range(a.rows)]:
        raise NoSolutionError(
            "A x = b has no solution; the greatest subsolution is attached",
            best=TropicalMatrix.build(sig, [[v] for v in xhat]))
    return TropicalMatrix.build(sig, [[v] for v in xhat])


def solve_linear_inequality(a, b, cancel=None):
    """Greatest x with A x <= b in the order induced by the tropical plus."""
    xhat = _principal_solution(a, b)
    return TropicalMatrix.build(a.signature, [[v] for v in xhat])


def _principal_solution(a, b):
    _check_signatures(a, b)
    if b.cols != 1 or b.rows != a.rows:
        raise DimensionMismatchError(
            f"need a {a.rows}x1 right-hand side, got {b.rows}x{b.cols}")
    sig = a.signature
    dual = min if sig.add_op == "Max" else max
    xhat = []
    for j in range(a.cols):
        residuals = [trop_residual(sig, b.entry(i, 0), a.entry(i, j))
                     for i in range(a.rows)]
        xhat.append(dual(residuals))
    return xhat


def bellman(a, b, cancel=None):
    """Least solution of A x (+) b = x, namely A* b; the fixpoint property
    is asserted before returning."""
    if not a.is_square():
        raise DimensionMismatchError("Bellman systems need a square matrix")
    if b.cols != 1 or b.rows != a.rows:
        raise DimensionMismatchError(
            f"need a {a.rows}x1 right-hand side, got {b.rows}x{b.cols}")
    star = kleene_star(a, cancel)
    x = mat_mul(star, b)
    fixpoint = mat_add(mat_mul(a, x), b)
    if fixpoint != x:
        raise StarDivergesError("A* b failed the fixpoint check")
    return x


def bellman_homogeneous(a, cancel=None):
    """Generating columns for A x = x: the columns of A* at every index
    whose A+ diagonal entry equals the unit.  May be empty."""
    if not a.is_square():
        raise DimensionMismatchError("Bellman systems need a square matrix")
    sig = a.signature
    star = kleene_star(a, cancel)
    plus = mat_mul(a, star)
    columns = []
    for i in range(a.rows):
        if plus.entry(i, i) == sig.unit:
            columns.append(star.column(i))
    grid = [[col[i] for col in columns] for i in range(a.rows)]
    result = TropicalMatrix(sig, tuple(tuple(row) for row in grid))
    for col in columns:
        vec = TropicalMatrix.build(sig, [[v] for v in col])
        if mat_mul(a, vec) != vec:
            raise StarDivergesError("generating column failed A x = x")
    return result


def search_least_distances(a, cancel=None):
    """A*: entry (i, j) is the best ⊕-value over all paths from i to j,
    the empty path included."""
    return kleene_star(a, cancel)


def find_shortest_path(a, start, end, cancel=None):
    """One optimal path between 1-based nodes plus its distance, via a
    Floyd-Warshall closure with a successor table; ties prefer smaller
    intermediate nodes."""
    if not a.is_square():
        raise DimensionMismatchError("path search needs a square matrix")
    n = a.rows
    if not (1 <= start <= n and 1 <= end <= n):
        raise DimensionMismatchError(
            f"nodes must lie in 1..{n}, got {start} and {end}")
    sig = a.signature
    dist = [[a.entry(i, j) for j in range(n)] for i in range(n)]
    succ = [[j if a.entry(i, j) != sig.zero else None for j in range(n)]
            for i in range(n)]
    for k in range(n):
        if cancel is not None:
            cancel.check()
        for i in range(n):
            if dist[i][k] == sig.zero:
                continue
            for j in range(n):
                if dist[k][j] == sig.zero:
                    continue
                cand = trop_mul(sig, dist[i][k], dist[k][j])
                if cand != dist[i][j] and trop_add(sig, cand, dist[i][j]) == cand:
                    dist[i][j] = cand
                    succ[i][j] = succ[i][k]
    for i in range(n):
        better = trop_add(sig, dist[i][i], sig.unit)
        if better != sig.unit:
            raise StarDivergesError(
                "an improving cycle makes path weights unbounded")
    i, j = start - 1, end - 1
    if i == j:
        return PathResult((start,), sig.unit)
    if dist[i][j] == sig.zero:
        raise UnreachableError(f"no path from node {start} to node {end}")
    nodes = [i]
    at = i
    while at != j:
        at = succ[at][j]
        nodes.append(at)
    distance = sig.unit
    for u, v in zip(nodes, nodes[1:]):
        distance = trop_mul(sig, distance, a.entry(u, v))
    return PathResult(tuple(p + 1 for p in nodes), distance)


def is_finite_entry(v):
    return not (isinstance(v, float) and math.isinf(v))
