"""The ring of formal Laurent series with lazy exact coefficients.

A LaurentSeries is a memoized coefficient oracle over exact rationals paired
with a ConeSupport certificate: coefficients outside the certified region are
zero by fiat, and the oracle is only consulted inside it.  Arithmetic is
structural: sums, products and inverses are new oracles closing over their
operands, so truncation height is a query-time parameter rather than a
construction-time loss.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SupportViolationError, UsageError, ZeroProbeError
from .order import OrderSpec, Point, compare, dot, vadd, vneg, vsub, zero_point, GT
from .support import (
    ConeSupport,
    cone_support,
    contains,
    convolution_pairs,
    enumerate_upto,
    height,
    single_point_support,
    sum_support,
    union_support,
)

DEFAULT_PROBE_HEIGHT = 32


def as_scalar(x) -> Fraction:
    """Exact rational from int, Fraction or a 'p/q' string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise UsageError("not an exact scalar: %r" % (x,))


class LaurentSeries:
    """Coefficient oracle with support certificate and memo table."""

    __slots__ = ("support", "provenance", "_oracle", "_memo")

    def __init__(self, support: ConeSupport, oracle, provenance: str = "external"):
        self.support = support
        self.provenance = provenance
        self._oracle = oracle
        self._memo = {}

    @property
    def order(self) -> OrderSpec:
        return self.support.order

    def coefficient(self, g) -> Fraction:
        g = tuple(int(x) for x in g)
        if not contains(self.support, g):
            return Fraction(0)
        if g in self._memo:
            return self._memo[g]
        val = self._oracle(g)
        self._memo[g] = val
        return val

    def __repr__(self):
        return "LaurentSeries(%s, offset=%r)" % (self.provenance, self.support.offset)


def from_terms(terms, support: ConeSupport) -> LaurentSeries:
    """Series with exactly the given nonzero coefficients.

    Every term must lie inside the support certificate.
    """
    table = {}
    for g, c in terms:
        g = tuple(int(x) for x in g)
        c = as_scalar(c)
        if not contains(support, g):
            raise SupportViolationError("term at %r lies outside the support" % (g,))
        if c != 0:
            table[g] = table.get(g, Fraction(0)) + c
    table = {g: c for g, c in table.items() if c != 0}
    return LaurentSeries(support, lambda g: table.get(g, Fraction(0)), "terms")


def zero_series(order: OrderSpec) -> LaurentSeries:
    return from_terms((), single_point_support(order, zero_point(order.dim)))


def one_series(order: OrderSpec) -> LaurentSeries:
    return monomial(order, zero_point(order.dim), 1)


def monomial(order: OrderSpec, point, coef=1) -> LaurentSeries:
    point = tuple(int(x) for x in point)
    return from_terms([(point, as_scalar(coef))], single_point_support(order, point))


def add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    _check_same_order(f, g)
    sup = union_support(f.support, g.support)
    return LaurentSeries(sup, lambda p: f.coefficient(p) + g.coefficient(p), "sum")


def negate(f: LaurentSeries) -> LaurentSeries:
    return LaurentSeries(f.support, lambda p: -f.coefficient(p), "sum")


def sub(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return add(f, negate(g))


def scale(c, f: LaurentSeries) -> LaurentSeries:
    c = as_scalar(c)
    return LaurentSeries(f.support, lambda p: c * f.coefficient(p), "sum")


def mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Cauchy product; each coefficient is a finite convolution sum."""
    _check_same_order(f, g)
    sup = sum_support(f.support, g.support)

    def oracle(p):
        total = Fraction(0)
        for a, b in convolution_pairs(f.support, g.support, p):
            ca = f.coefficient(a)
            if ca != 0:
                total += ca * g.coefficient(b)
        return total

    return LaurentSeries(sup, oracle, "product")


def invert(f: LaurentSeries, zero_probe_height: int = DEFAULT_PROBE_HEIGHT,
           integer_only: bool = False) -> LaurentSeries:
    """Multiplicative inverse of a series with a detectable least term.

    The least nonzero term ``c x^m`` is located by scanning the support in
    increasing order up to ``zero_probe_height``; a series with no nonzero
    coefficient in that window is reported as apparently zero rather than
    assumed zero.  Writing ``f = c x^m (1 - u)`` with ``u`` vanishing at 0,
    the inverse is ``c^-1 x^-m sum(u^j)``, evaluated by a recurrence on
    weight-height (every nonzero point of ``u``'s support has height >= 1).

    The certificate of the inverse is anchored at ``-m`` over the same
    generators, so every nonzero term of ``f`` scanned in the probe window
    must lie in ``m + N<generators>``; anchor the support at the least term
    when constructing ``f`` if this check fails.
    """
    sup = f.support
    order = sup.order
    m = None
    for p in enumerate_upto(sup, zero_probe_height):
        if f.coefficient(p) != 0:
            m = p
            break
    if m is None:
        raise ZeroProbeError(
            "no nonzero coefficient below probe height %d; apparently zero, cannot invert"
            % zero_probe_height)
    c = f.coefficient(m)
    if integer_only and c.denominator == 1 and abs(c.numerator) != 1:
        raise UsageError("least coefficient %s is not a unit in the integers" % c)
    inv_sup = cone_support(order, vneg(m), sup.generators, sup.weight)
    base = cone_support(order, zero_point(order.dim), sup.generators, sup.weight)
    for p in enumerate_upto(sup, zero_probe_height):
        if f.coefficient(p) != 0 and not contains(base, vsub(p, m)):
            raise SupportViolationError(
                "nonzero term at %r is not reachable from the least term %r within the "
                "support monoid; re-anchor the support at the least term" % (p, m))

    cinv = Fraction(1) / c
    # s = sum over j of u^j satisfies s = 1 + u * s with u vanishing at 0;
    # u[a] = -c^-1 f[a + m] for a != 0 in the base monoid.
    s_memo = {}

    def s_coeff(p):
        if p in s_memo:
            return s_memo[p]
        zero = zero_point(order.dim)
        val = Fraction(1) if p == zero else Fraction(0)
        for a, b in convolution_pairs(base, base, p):
            if a == zero:
                continue
            ua = -cinv * f.coefficient(vadd(a, m))
            if ua != 0:
                val += ua * s_coeff(b)
        s_memo[p] = val
        return val

    def oracle(p):
        return cinv * s_coeff(vadd(p, m))

    return LaurentSeries(inv_sup, oracle, "inverse")


def equal_up_to(f: LaurentSeries, g: LaurentSeries, e, probe_height: int = DEFAULT_PROBE_HEIGHT) -> bool:
    """Whether ``f - g`` lies in the zero-neighborhood of series divisible by x^e.

    Decided through the certificate: every point of the merged support that
    precedes ``e``, enumerated up to ``probe_height``, must carry a zero
    coefficient of ``f - g``.  The probe height makes the enumeration finite;
    it matches the library-wide contract that equalities are asserted through
    an explicit height.
    """
    _check_same_order(f, g)
    e = tuple(int(x) for x in e)
    f.order._check(e)
    d = sub(f, g)
    for p in enumerate_upto(d.support, probe_height):
        if compare(f.order, p, e) == GT or p == e:
            continue
        if d.coefficient(p) != 0:
            return False
    return True


def truncate(f: LaurentSeries, bound: int) -> list:
    """Sorted (point, coefficient) pairs for the nonzero terms of height <= bound."""
    if bound < 0:
        return []
    out = []
    for p in enumerate_upto(f.support, bound):
        c = f.coefficient(p)
        if c != 0:
            out.append((p, c))
    return out


def series_equal_through(f: LaurentSeries, g: LaurentSeries, bound: int) -> bool:
    """Coefficientwise equality on every certificate point of height <= bound."""
    _check_same_order(f, g)
    d = sub(f, g)
    return all(d.coefficient(p) == 0 for p in enumerate_upto(d.support, bound))


def _check_same_order(f: LaurentSeries, g: LaurentSeries):
    if f.order != g.order:
        raise UsageError("series use different orders")
