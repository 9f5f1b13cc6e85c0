"""Grothendieck-group classes as label-indexed series vectors, and series-matrix
inversion for the basis change between projectives and simples.

Matrix inversion splits off the constant-term scalar matrix and expands the
remainder as a Neumann series: every division performed is by a scalar pivot,
so no series division with an unknown least term ever occurs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import SingularConstantTermError, UsageError
from .order import OrderSpec, zero_point, vadd, vsub
from .series import (
    LaurentSeries,
    add,
    mul,
    scale,
    series_equal_through,
    sub,
    zero_series,
    one_series,
)
from .support import cone_support, convolution_pairs, enumerate_upto


@dataclass
class K0Vector:
    """Finitely supported vector over the series ring.

    ``basis`` tags the labels as classes of simples, projectives or a custom
    family; mixing tags in arithmetic is a checked error, not a silent bug.
    Absent labels stand for the zero series.
    """

    basis: str
    labels: tuple
    entries: dict
    order: OrderSpec

    def __post_init__(self):
        self.labels = tuple(self.labels)
        for lab in self.entries:
            if lab not in self.labels:
                raise UsageError("entry label %r not in basis labels %r" % (lab, self.labels))

    def entry(self, label) -> LaurentSeries:
        if label not in self.labels:
            raise UsageError("unknown label %r" % (label,))
        return self.entries.get(label, zero_series(self.order))


def k0_add(v: K0Vector, w: K0Vector) -> K0Vector:
    if v.basis != w.basis or v.labels != w.labels:
        raise UsageError("cannot add K0 vectors over different bases")
    entries = {}
    for lab in v.labels:
        if lab in v.entries and lab in w.entries:
            entries[lab] = add(v.entries[lab], w.entries[lab])
        elif lab in v.entries:
            entries[lab] = v.entries[lab]
        elif lab in w.entries:
            entries[lab] = w.entries[lab]
    return K0Vector(v.basis, v.labels, entries, v.order)


def k0_negate(v: K0Vector) -> K0Vector:
    from .series import negate

    return K0Vector(v.basis, v.labels, {lab: negate(s) for lab, s in v.entries.items()}, v.order)


def k0_scale(a: LaurentSeries, v: K0Vector) -> K0Vector:
    """Entrywise action of the series ring on a class vector."""
    return K0Vector(v.basis, v.labels, {lab: mul(a, s) for lab, s in v.entries.items()}, v.order)


def k0_equal_through(v: K0Vector, w: K0Vector, bound: int) -> bool:
    if v.labels != w.labels:
        return False
    return all(series_equal_through(v.entry(lab), w.entry(lab), bound) for lab in v.labels)


@dataclass
class SeriesMatrix:
    """Rectangular matrix of Laurent series with labelled rows and columns."""

    row_labels: tuple
    col_labels: tuple
    entries: dict
    order: OrderSpec
    row_basis: str = "custom"
    col_basis: str = "custom"

    def __post_init__(self):
        self.row_labels = tuple(self.row_labels)
        self.col_labels = tuple(self.col_labels)
        for (r, c) in self.entries:
            if r not in self.row_labels or c not in self.col_labels:
                raise UsageError("entry (%r, %r) outside the declared labels" % (r, c))

    def entry(self, r, c) -> LaurentSeries:
        if r not in self.row_labels or c not in self.col_labels:
            raise UsageError("unknown matrix position (%r, %r)" % (r, c))
        return self.entries.get((r, c), zero_series(self.order))

    def is_square(self) -> bool:
        return len(self.row_labels) == len(self.col_labels)


def matrix_identity(order: OrderSpec, labels, basis: str = "custom") -> SeriesMatrix:
    labels = tuple(labels)
    entries = {(lab, lab): one_series(order) for lab in labels}
    return SeriesMatrix(labels, labels, entries, order, basis, basis)


def matrix_mul(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    if a.col_labels != b.row_labels:
        raise UsageError("matrix shapes do not compose")
    entries = {}
    for r in a.row_labels:
        for c in b.col_labels:
            acc = None
            for k in a.col_labels:
                if (r, k) in a.entries and (k, c) in b.entries:
                    term = mul(a.entries[(r, k)], b.entries[(k, c)])
                    acc = term if acc is None else add(acc, term)
            if acc is not None:
                entries[(r, c)] = acc
    return SeriesMatrix(a.row_labels, b.col_labels, entries, a.order, a.row_basis, b.col_basis)


def invert_matrix(m: SeriesMatrix, bound: int) -> SeriesMatrix:
    """Inverse of a square series matrix, verified entrywise through ``bound``.

    Writes ``M = M0 (I - U)`` with ``M0`` the constant-term scalar matrix and
    ``U`` vanishing at degree zero; the inverse is ``sum(U^j) M0^-1`` with the
    Neumann sum evaluated by the same weight-height recurrence as scalar
    inversion.
    """
    if not m.is_square():
        raise UsageError("only square matrices can be inverted")
    order = m.order
    labels = m.row_labels
    n = len(labels)
    origin = zero_point(order.dim)

    m0 = [[m.entry(r, c).coefficient(origin) for c in labels] for r in labels]
    m0_inv = linalg.invert_matrix_q(m0)
    if m0_inv is None:
        raise SingularConstantTermError("constant-term matrix singular")

    # U = I - M0^-1 M vanishes at the origin by construction.
    u_entries = {}
    for i, r in enumerate(labels):
        for j, c in enumerate(labels):
            acc = None
            for k, kl in enumerate(labels):
                if (kl, c) in m.entries and m0_inv[i][k] != 0:
                    term = scale(m0_inv[i][k], m.entries[(kl, c)])
                    acc = term if acc is None else add(acc, term)
            if acc is None:
                acc = zero_series(order)
            u_entries[(r, c)] = sub(one_series(order), acc) if r == c else \
                sub(zero_series(order), acc)

    gens = []
    for s in m.entries.values():
        for v in s.support.generators:
            if v not in gens:
                gens.append(v)
        off = s.support.offset
        if any(x != 0 for x in off) and off not in gens:
            gens.append(off)
    base = cone_support(order, origin, gens)

    # s = sum over j of U^j satisfies s = I + U s; recurrence on weight-height.
    s_memo = {}

    def s_coeff(i: int, j: int, p) -> Fraction:
        key = (i, j, p)
        if key in s_memo:
            return s_memo[key]
        val = Fraction(1) if (p == origin and i == j) else Fraction(0)
        for a, b in convolution_pairs(base, base, p):
            if a == origin:
                continue
            for k in range(n):
                ua = u_entries[(labels[i], labels[k])].coefficient(a)
                if ua != 0:
                    val += ua * s_coeff(k, j, b)
        s_memo[key] = val
        return val

    inv_entries = {}
    for i, r in enumerate(labels):
        for j, c in enumerate(labels):
            coeffs = [(k, m0_inv[k][j]) for k in range(n) if m0_inv[k][j] != 0]

            def oracle(p, i=i, coeffs=coeffs):
                return sum((cf * s_coeff(i, k, p) for k, cf in coeffs), Fraction(0))

            inv_entries[(r, c)] = LaurentSeries(base, oracle, "external")

    inv = SeriesMatrix(m.col_labels, m.row_labels, inv_entries, order, m.col_basis, m.row_basis)
    ident = matrix_identity(order, labels)
    for prod in (matrix_mul(m, inv), matrix_mul(inv, m)):
        for r in labels:
            for c in labels:
                lhs, rhs = prod.entry(r, c), ident.entry(r, c)
                if not series_equal_through(lhs, rhs, bound):
                    raise SingularConstantTermError(
                        "inverse verification failed at entry (%r, %r) through height %d"
                        % (r, c, bound))
    return inv


def change_basis(v: K0Vector, m: SeriesMatrix) -> K0Vector:
    """Rewrite a class vector through a matrix: w_r = sum_c M[r,c] v_c."""
    if tuple(m.col_labels) != tuple(v.labels):
        raise UsageError("matrix columns %r do not match vector basis %r"
                         % (m.col_labels, v.labels))
    entries = {}
    for r in m.row_labels:
        acc = None
        for c in m.col_labels:
            if (r, c) in m.entries and c in v.entries:
                term = mul(m.entries[(r, c)], v.entries[c])
                acc = term if acc is None else add(acc, term)
        if acc is not None:
            entries[r] = acc
    return K0Vector(m.row_basis, m.row_labels, entries, v.order)
