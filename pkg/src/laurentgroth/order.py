"""Additive total orders on Z^n.

An order is *additive* when ``a < b`` implies ``a + c < b + c`` for all
lattice points ``a, b, c``.  Two kinds are supported: plain lexicographic
comparison, and comparison of ``R @ a`` against ``R @ b`` lexicographically
for a full-rank integer matrix ``R`` (lex is the identity-matrix case).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .errors import UsageError, WeightSearchError

LT, EQ, GT = -1, 0, 1

Point = tuple

DEFAULT_WEIGHT_BUDGET = 64


def vadd(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Point) -> Point:
    return tuple(-x for x in a)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def zero_point(dim: int) -> Point:
    return (0,) * dim


@dataclass(frozen=True)
class OrderSpec:
    """An additive total order on Z^n.

    ``kind`` is ``"lex"`` or ``"matrix"``.  Matrix orders compare the images
    ``rows @ a`` lexicographically; the rows must be linearly independent
    over Q so that the order is total.
    """

    dim: int
    kind: str = "lex"
    rows: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "matrix"):
            raise UsageError("order kind must be 'lex' or 'matrix', got %r" % (self.kind,))
        if self.dim <= 0:
            raise UsageError("order dimension must be positive")
        if self.kind == "matrix":
            rows = tuple(tuple(int(x) for x in row) for row in self.rows)
            object.__setattr__(self, "rows", rows)
            if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
                raise UsageError("matrix order needs %d rows of length %d" % (self.dim, self.dim))
            if _rational_rank(rows) != self.dim:
                raise UsageError("matrix order rows must be linearly independent over Q")

    def key(self, a: Point) -> Point:
        """Sort key: comparing keys lexicographically realizes the order."""
        self._check(a)
        if self.kind == "lex":
            return tuple(a)
        return tuple(dot(row, a) for row in self.rows)

    def _check(self, a: Sequence[int]):
        if len(a) != self.dim:
            raise UsageError("point %r has wrong dimension, expected %d" % (a, self.dim))


def lex_order(dim: int) -> OrderSpec:
    return OrderSpec(dim=dim, kind="lex")


def matrix_order(rows: Iterable[Iterable[int]]) -> OrderSpec:
    rows = tuple(tuple(int(x) for x in row) for row in rows)
    return OrderSpec(dim=len(rows), kind="matrix", rows=rows)


def compare(order: OrderSpec, a: Point, b: Point) -> int:
    """Return LT, EQ or GT according to the order."""
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return LT
    if ka > kb:
        return GT
    return EQ


def is_positive(order: OrderSpec, v: Point) -> bool:
    return compare(order, v, zero_point(order.dim)) == GT


def _rational_rank(rows) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivval = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / pivval
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def find_weight(order: OrderSpec, vectors: Iterable[Point], budget: int = DEFAULT_WEIGHT_BUDGET) -> Point:
    """Find an integer weight ``w`` with ``w . v >= 1`` for every vector.

    Every input vector must be positive for the order.  Matrix orders first
    try nonnegative integer combinations of the order's rows; both kinds then
    fall back to an exhaustive search by increasing max-norm.  Failure within
    the budget raises WeightSearchError rather than silently degrading.
    """
    vecs = tuple(tuple(int(x) for x in v) for v in vectors)
    return _find_weight_cached(order, vecs, budget)


@lru_cache(maxsize=None)
def _find_weight_cached(order: OrderSpec, vecs: tuple, budget: int) -> Point:
    for v in vecs:
        if not is_positive(order, v):
            raise UsageError("weight search requires positive vectors, got %r" % (v,))
    if not vecs:
        return (1,) * order.dim

    def works(w):
        return all(dot(w, v) >= 1 for v in vecs)

    if order.kind == "matrix":
        for total in range(1, budget + 1):
            for coeffs in _compositions(total, order.dim):
                w = tuple(sum(c * row[i] for c, row in zip(coeffs, order.rows))
                          for i in range(order.dim))
                if works(w):
                    return w

    for norm in range(1, budget + 1):
        for w in product(range(-norm, norm + 1), repeat=order.dim):
            if max(abs(x) for x in w) != norm:
                continue
            if works(w):
                return w

    raise WeightSearchError(
        "no weight certificate with max-norm <= %d for vectors %r" % (budget, list(vecs)))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest
