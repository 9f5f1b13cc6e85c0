"""Exact Gaussian elimination over Q on dense list-of-lists matrices.

Matrices are lists of rows of Fractions.  Pivoting is first-nonzero in fixed
column order with ties broken by row order, so every reduction is
deterministic and reproducible.
"""

from __future__ import annotations

from fractions import Fraction


def zeros(nrows: int, ncols: int):
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(n: int):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_copy(m):
    return [row[:] for row in m]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c != 0:
                bt = b[t]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum(c * x for c, x in zip(row, v)) for row in a]


def is_zero_matrix(a) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(m):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    r = mat_copy(m)
    nrows = len(r)
    ncols = len(r[0]) if nrows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if r[i][col] != 0), None)
        if piv is None:
            continue
        r[rank], r[piv] = r[piv], r[rank]
        pv = r[rank][col]
        if pv != 1:
            r[rank] = [x / pv for x in r[rank]]
        for i in range(nrows):
            if i != rank and r[i][col] != 0:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[rank])]
        pivots.append(col)
        rank += 1
    return r, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m, ncols=None):
    """Basis of the right kernel, one vector per free column, in column order."""
    if not m:
        return [_unit(ncols, j) for j in range(ncols or 0)]
    ncols = len(m[0])
    r, pivots = rref(m)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][j]
        basis.append(v)
    return basis


def unit_vector(n, j):
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


_unit = unit_vector


def column_space_complement(vectors, dim: int):
    """Indices of standard basis vectors completing the span of the vectors.

    The standard vectors at non-pivot coordinates of the span's row echelon
    form descend to a deterministic basis of the quotient by the span.
    """
    if dim == 0:
        return []
    if not vectors:
        return list(range(dim))
    _, pivots = rref([list(v) for v in vectors])
    return [i for i in range(dim) if i not in pivots]


def solve_in_span(basis, target):
    """Coordinates of ``target`` in the span of ``basis`` vectors, or None.

    ``basis`` is a list of vectors; solves sum(x_k basis_k) = target exactly.
    """
    n = len(target)
    k = len(basis)
    if k == 0:
        return [] if all(x == 0 for x in target) else None
    aug = [[basis[c][i] for c in range(k)] + [target[i]] for i in range(n)]
    r, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for i, pc in enumerate(pivots):
        x[pc] = r[i][k]
    return x


def invert_matrix_q(m):
    """Inverse of a square rational matrix, or None when singular."""
    n = len(m)
    aug = [list(row) + irow for row, irow in zip(mat_copy(m), identity(n))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in r[:n]]
