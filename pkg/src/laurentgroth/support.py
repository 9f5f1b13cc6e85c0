"""Support certificates for series: translated finitely generated submonoids of Z^n.

A ConeSupport certifies "every coefficient outside offset + N<generators> is
zero".  The generators are positive for the order and the stored weight
vector ``w`` satisfies ``w . v >= 1`` for each generator, which bounds every
enumeration: a monoid element that is a sum of k generators has weight-height
at least k.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .errors import UsageError
from .order import OrderSpec, Point, compare, dot, find_weight, is_positive, vadd, vsub, GT, LT


@dataclass(frozen=True)
class ConeSupport:
    order: OrderSpec
    offset: Point
    generators: tuple
    weight: Point
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.order.dim


def cone_support(order: OrderSpec, offset, generators, weight=None) -> ConeSupport:
    """Build a support certificate, computing a weight when none is supplied."""
    offset = tuple(int(x) for x in offset)
    order._check(offset)
    gens = []
    for v in generators:
        v = tuple(int(x) for x in v)
        order._check(v)
        if not is_positive(order, v):
            raise UsageError("support generator %r is not positive for the order" % (v,))
        if v not in gens:
            gens.append(v)
    gens = tuple(sorted(gens, key=order.key))
    if weight is None:
        weight = find_weight(order, gens)
    else:
        weight = tuple(int(x) for x in weight)
        for v in gens:
            if dot(weight, v) < 1:
                raise UsageError("weight %r does not certify generator %r" % (weight, v))
    return ConeSupport(order=order, offset=offset, generators=gens, weight=weight)


def single_point_support(order: OrderSpec, point) -> ConeSupport:
    return cone_support(order, point, ())


def height(s: ConeSupport, g: Point) -> int:
    """Weight-height of a point relative to the support offset."""
    return dot(s.weight, vsub(g, s.offset))


def _monoid_points(gens: tuple, weight: Point, bound: int, cache: dict) -> set:
    """All N-combinations of ``gens`` with ``weight``-height <= bound."""
    key = ("pts", weight)
    cached_bound, pts = cache.get(key, (-1, None))
    if cached_bound >= bound:
        return pts
    dim = len(weight)
    seen = {(0,) * dim}
    frontier = [(0,) * dim]
    while frontier:
        p = frontier.pop()
        for v in gens:
            q = vadd(p, v)
            if q not in seen and dot(weight, q) <= bound:
                seen.add(q)
                frontier.append(q)
    cache[key] = (bound, seen)
    return seen


def contains(s: ConeSupport, g) -> bool:
    """True iff ``g - offset`` is an N-combination of the generators."""
    g = tuple(int(x) for x in g)
    s.order._check(g)
    d = vsub(g, s.offset)
    h = dot(s.weight, d)
    if h < 0:
        return False
    if all(x == 0 for x in d):
        return True
    return d in _monoid_points(s.generators, s.weight, h, s._cache)


def enumerate_upto(s: ConeSupport, bound: int) -> list:
    """Support points with weight-height <= bound, strictly increasing for the order.

    Best-first search over the monoid: a priority queue keyed by the order,
    deduplicating points, terminated by the weight bound.
    """
    if bound < 0:
        return []
    key = ("enum", bound)
    if key in s._cache:
        return s._cache[key]
    out = []
    start = s.offset
    heap = [(s.order.key(start), start)]
    seen = {start}
    while heap:
        _, p = heapq.heappop(heap)
        out.append(p)
        for v in s.generators:
            q = vadd(p, v)
            if q not in seen and height(s, q) <= bound:
                seen.add(q)
                heapq.heappush(heap, (s.order.key(q), q))
    s._cache[key] = out
    return out


def sum_support(s1: ConeSupport, s2: ConeSupport) -> ConeSupport:
    """Certificate for a product of series: offsets add, generators merge."""
    _check_compatible(s1, s2)
    gens = s1.generators + tuple(v for v in s2.generators if v not in s1.generators)
    return cone_support(s1.order, vadd(s1.offset, s2.offset), gens)


def union_support(s1: ConeSupport, s2: ConeSupport) -> ConeSupport:
    """Certificate covering both supports, used for sums of series.

    The offset is the order-minimum of the two offsets; the difference to the
    other offset joins the generators so both translated monoids are covered.
    """
    _check_compatible(s1, s2)
    c = compare(s1.order, s1.offset, s2.offset)
    low, high = (s1, s2) if c in (LT, 0) else (s2, s1)
    gens = list(s1.generators)
    gens += [v for v in s2.generators if v not in gens]
    diff = vsub(high.offset, low.offset)
    if any(x != 0 for x in diff) and diff not in gens:
        gens.append(diff)
    return cone_support(s1.order, low.offset, gens)


def convolution_pairs(s1: ConeSupport, s2: ConeSupport, k) -> list:
    """All pairs (a, b) with a + b = k, a in s1, b in s2.

    Finite because a common weight certificate bounds both halves: the
    heights of a - e1 and b - e2 are nonnegative and sum to a constant.
    """
    _check_compatible(s1, s2)
    k = tuple(int(x) for x in k)
    s1.order._check(k)
    merged = sum_support(s1, s2)
    bound = dot(merged.weight, vsub(k, merged.offset))
    if bound < 0:
        return []
    deltas = _monoid_points(s1.generators, merged.weight, bound, s1._cache)
    pairs = []
    for d in deltas:
        a = vadd(s1.offset, d)
        b = vsub(k, a)
        if contains(s2, b):
            pairs.append((a, b))
    pairs.sort(key=lambda ab: s1.order.key(ab[0]))
    return pairs


def _check_compatible(s1: ConeSupport, s2: ConeSupport):
    if s1.order != s2.order:
        raise UsageError("supports use different orders")
