"""Positive Z^n-graded algebras presented by quivers with homogeneous relations.

The algebra is expanded degree by degree up to a mandatory truncation height.
Each degree slice of ``e_j R e_i`` is the span of paths of that degree modulo
the matching slice of the two-sided relation ideal, reduced by exact Gaussian
elimination over Q.  To avoid materializing raw paths, a slice is presented on
symbols ``(arrow, lower basis element)``: peeling the outermost arrow of a
path is a unique factorization, and ideal elements with a nonempty outer part
already vanish in the lower quotient, so only ``relation . basis`` vectors
need to be eliminated at each degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import TruncationError, UsageError, ValidationError
from .order import OrderSpec, Point, dot, is_positive, vadd, vsub, zero_point
from .series import LaurentSeries, as_scalar
from .support import ConeSupport, cone_support, enumerate_upto, union_support
from .grothmod import SeriesMatrix


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str
    deg: Point


@dataclass(frozen=True)
class QuiverPresentation:
    """Quiver with homogeneous relations, truncated at a fixed height.

    Relations are rational linear combinations of directed paths; a path is a
    tuple of arrow names listed left-to-right in composition order, the
    rightmost arrow acting first.
    """

    vertices: tuple
    arrows: tuple
    relations: tuple
    order: OrderSpec
    height: int


def presentation(vertices, arrows, relations, order: OrderSpec, height: int) -> QuiverPresentation:
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise ValidationError("duplicate vertex labels")
    arrs = []
    names = set()
    for a in arrows:
        if isinstance(a, Arrow):
            name, src, tgt, deg = a.name, a.src, a.tgt, a.deg
        else:
            name, src, tgt, deg = a
        deg = tuple(int(x) for x in deg)
        order._check(deg)
        if name in names:
            raise ValidationError("duplicate arrow name %r" % name)
        names.add(name)
        if src not in vertices or tgt not in vertices:
            raise ValidationError("arrow %r joins unknown vertices" % name)
        if not is_positive(order, deg):
            raise ValidationError("arrow %r has non-positive degree %r" % (name, deg))
        arrs.append(Arrow(name, src, tgt, deg))
    rels = tuple(_normalize_relation(r, {a.name: a for a in arrs}, order) for r in relations)
    if height < 0:
        raise ValidationError("truncation height must be nonnegative")
    return QuiverPresentation(vertices, tuple(arrs), rels, order, int(height))


def _normalize_relation(rel, arrow_map, order: OrderSpec):
    """A relation is ((coef, path), ...); all paths must share src, tgt and degree."""
    terms = []
    sig = None
    for coef, path in rel:
        coef = as_scalar(coef)
        path = tuple(str(p) for p in path)
        if not path:
            raise ValidationError("empty path in relation")
        deg = zero_point(order.dim)
        for i, name in enumerate(path):
            if name not in arrow_map:
                raise ValidationError("unknown arrow %r in relation" % name)
            deg = vadd(deg, arrow_map[name].deg)
            if i + 1 < len(path) and arrow_map[name].src != arrow_map[path[i + 1]].tgt:
                raise ValidationError("path %r is not composable" % (path,))
        src = arrow_map[path[-1]].src
        tgt = arrow_map[path[0]].tgt
        if sig is None:
            sig = (src, tgt, deg)
        elif sig != (src, tgt, deg):
            raise ValidationError(
                "relation %r is not homogeneous: %r vs %r" % (rel, sig, (src, tgt, deg)))
        if coef != 0:
            terms.append((coef, path))
    if not terms:
        raise ValidationError("relation with no nonzero terms")
    return tuple(terms)


class AlgElem:
    """Basis element of a degree slice: a vertex idempotent or a reduced symbol
    ``arrow * lower basis element``."""

    __slots__ = ("eid", "deg", "src", "tgt", "arrow", "sub")

    def __init__(self, eid, deg, src, tgt, arrow=None, sub=None):
        self.eid = eid
        self.deg = deg
        self.src = src
        self.tgt = tgt
        self.arrow = arrow
        self.sub = sub

    def __repr__(self):
        if self.arrow is None:
            return "e_%s" % self.src
        return "%s*#%d" % (self.arrow, self.sub)


class AlgebraTruncation:
    """Degreewise bases and multiplication data of the quotient algebra."""

    def __init__(self, pres: QuiverPresentation):
        self.pres = pres
        self.order = pres.order
        self.height = pres.height
        self.arrow_map = {a.name: a for a in pres.arrows}
        self.support = cone_support(self.order, zero_point(self.order.dim),
                                    [a.deg for a in pres.arrows])
        self.weight = self.support.weight
        self.elems = []
        self.basis = {}
        self.lmul = {}
        self._mult_memo = {}
        self._expand()

    # -- construction -----------------------------------------------------

    def _new_elem(self, deg, src, tgt, arrow=None, sub=None):
        e = AlgElem(len(self.elems), deg, src, tgt, arrow, sub)
        self.elems.append(e)
        self.basis.setdefault((deg, src, tgt), []).append(e.eid)
        return e

    def _expand(self):
        pres = self.pres
        degrees = enumerate_upto(self.support, self.height)
        degrees.sort(key=lambda g: (self.deg_height(g), self.order.key(g)))
        for v in pres.vertices:
            self._new_elem(zero_point(self.order.dim), v, v)
        for g in degrees:
            if self.deg_height(g) > 0:
                self._expand_degree(g)

    def _expand_degree(self, g):
        pres = self.pres
        # Spanning symbols (arrow, lower basis element), grouped per (src, tgt).
        symbols = {}
        for a in pres.arrows:
            gsub = vsub(g, a.deg)
            for (deg, src, tgt), ids in self.basis.items():
                if deg != gsub or tgt != a.src:
                    continue
                for eid in ids:
                    symbols.setdefault((src, a.tgt), []).append((a.name, eid))
        rel_vectors = {}
        for rel in pres.relations:
            rel_deg = self._path_degree(rel[0][1])
            gsub = vsub(g, rel_deg)
            rel_src = self.arrow_map[rel[0][1][-1]].src
            rel_tgt = self.arrow_map[rel[0][1][0]].tgt
            for (deg, src, tgt), ids in self.basis.items():
                if deg != gsub or tgt != rel_src:
                    continue
                block = (src, rel_tgt)
                syms = symbols.get(block, [])
                index = {s: i for i, s in enumerate(syms)}
                for eid in ids:
                    vec = [Fraction(0)] * len(syms)
                    for coef, path in rel:
                        for sym, c in self._path_times(path, eid).items():
                            vec[index[sym]] += coef * c
                    if any(x != 0 for x in vec):
                        rel_vectors.setdefault(block, []).append(vec)
        for block, syms in sorted(symbols.items()):
            vectors = rel_vectors.get(block, [])
            if vectors:
                reduced, pivots = linalg.rref(vectors)
            else:
                reduced, pivots = [], []
            pivset = set(pivots)
            src, tgt = block
            new_ids = {}
            for j, (aname, sub) in enumerate(syms):
                if j not in pivset:
                    e = self._new_elem(g, src, tgt, aname, sub)
                    new_ids[j] = e.eid
            for j, (aname, sub) in enumerate(syms):
                if j in pivset:
                    i = pivots.index(j)
                    expansion = {}
                    for jj in range(len(syms)):
                        if jj not in pivset and reduced[i][jj] != 0:
                            expansion[new_ids[jj]] = -reduced[i][jj]
                    self.lmul[(aname, sub)] = expansion
                else:
                    self.lmul[(aname, sub)] = {new_ids[j]: Fraction(1)}

    def _path_times(self, path, eid):
        """Class of ``path . elem`` as a vector over outermost-arrow symbols.

        The inner part reduces through stored arrow multiplications; only the
        outermost arrow is kept symbolic.
        """
        vec = {eid: Fraction(1)}
        for name in reversed(path[1:]):
            vec = self._apply_arrow(name, vec)
        out = {}
        outer = path[0]
        for sub, c in vec.items():
            out[(outer, sub)] = out.get((outer, sub), Fraction(0)) + c
        return out

    def _apply_arrow(self, name, vec):
        out = {}
        for sub, c in vec.items():
            for eid, c2 in self.lmul[(name, sub)].items():
                out[eid] = out.get(eid, Fraction(0)) + c * c2
        return {eid: c for eid, c in out.items() if c != 0}

    def _path_degree(self, path):
        deg = zero_point(self.order.dim)
        for name in path:
            deg = vadd(deg, self.arrow_map[name].deg)
        return deg

    # -- queries ----------------------------------------------------------

    def deg_height(self, g) -> int:
        return dot(self.weight, g)

    def dim(self, g, src, tgt) -> int:
        return len(self.basis.get((tuple(g), src, tgt), ()))

    def basis_ids(self, g, src, tgt):
        return list(self.basis.get((tuple(g), src, tgt), ()))

    def dims_at(self, g) -> int:
        return sum(len(ids) for (deg, _, _), ids in self.basis.items() if deg == tuple(g))

    def multiply(self, eid1: int, eid2: int) -> dict:
        """Product ``b1 . b2`` (b2 acting first) as a vector over basis ids."""
        key = (eid1, eid2)
        if key in self._mult_memo:
            return self._mult_memo[key]
        b1, b2 = self.elems[eid1], self.elems[eid2]
        if b1.src != b2.tgt:
            result = {}
        elif self.deg_height(vadd(b1.deg, b2.deg)) > self.height:
            raise TruncationError("product of degrees %r and %r exceeds height %d"
                                  % (b1.deg, b2.deg, self.height))
        elif b1.arrow is None:
            result = {eid2: Fraction(1)}
        else:
            inner = self.multiply(b1.sub, eid2)
            result = {}
            for eid, c in inner.items():
                for out_id, c2 in self.lmul[(b1.arrow, eid)].items():
                    result[out_id] = result.get(out_id, Fraction(0)) + c * c2
            result = {eid: c for eid, c in result.items() if c != 0}
        self._mult_memo[key] = result
        return result


def expand_algebra(p: QuiverPresentation) -> AlgebraTruncation:
    """Degreewise normal forms of the quotient algebra up to the height."""
    return AlgebraTruncation(p)


@dataclass
class GradedModule:
    """Degreewise exact linear-algebra data for a graded module.

    ``dims`` maps (degree, vertex) to a dimension; ``mats`` maps
    (arrow name, degree) to the arrow's action matrix from that degree to
    degree + deg(arrow).  Data is trusted at degrees whose absolute
    weight-height is at most ``height``; queries beyond that raise rather
    than silently returning zero.
    """

    algebra: AlgebraTruncation
    dims: dict
    mats: dict
    support: ConeSupport
    height: int
    name: str = ""

    def dim(self, g, v) -> int:
        return self.dims.get((tuple(g), v), 0)

    def mat(self, arrow_name, g):
        g = tuple(g)
        if (arrow_name, g) in self.mats:
            return self.mats[(arrow_name, g)]
        a = self.algebra.arrow_map[arrow_name]
        return linalg.zeros(self.dim(vadd(g, a.deg), a.tgt), self.dim(g, a.src))

    def degrees(self):
        """Occurring (degree, vertex) pairs with nonzero dimension."""
        return [(g, v) for (g, v), d in self.dims.items() if d > 0]


def module_from_dims(algebra: AlgebraTruncation, dims: dict, mats: dict,
                     support=None, height=None, name: str = "") -> GradedModule:
    dims = {(tuple(g), v): int(d) for (g, v), d in dims.items() if d}
    mats = dict(mats)
    if height is not None:
        for (g, v) in dims:
            if dot(algebra.weight, g) > height:
                raise ValidationError(
                    "module data at degree %r exceeds the declared height %d" % (g, height))
    if support is None:
        pts = [g for (g, _v) in dims]
        if pts:
            base = min(pts, key=algebra.order.key)
            gens = list(algebra.support.generators)
            for g in pts:
                d = vsub(g, base)
                if any(x != 0 for x in d) and d not in gens:
                    gens.append(d)
            support = cone_support(algebra.order, base, gens)
        else:
            support = algebra.support
    if height is None:
        height = algebra.height
    return GradedModule(algebra, dims, mats, support, height, name)


def validate_module(m: GradedModule):
    """Check that every relation acts as zero wherever it is computable."""
    alg = m.algebra
    for rel in alg.pres.relations:
        rel_deg = alg._path_degree(rel[0][1])
        src = alg.arrow_map[rel[0][1][-1]].src
        tgt = alg.arrow_map[rel[0][1][0]].tgt
        for (g, v), d in m.dims.items():
            if v != src or d == 0:
                continue
            gt = vadd(g, rel_deg)
            if dot(alg.weight, gt) > m.height:
                continue
            total = linalg.zeros(m.dim(gt, tgt), d)
            for coef, path in rel:
                mat = _path_action(m, path, g)
                total = linalg.mat_add(total, linalg.mat_scale(coef, mat))
            if not linalg.is_zero_matrix(total):
                raise ValidationError(
                    "relation %r does not vanish on module %r at degree %r"
                    % (rel, m.name or "<module>", g))


def _path_action(m: GradedModule, path, g):
    """Matrix of a path acting on the degree-g slice, rightmost arrow first."""
    alg = m.algebra
    cur_deg = tuple(g)
    cur = linalg.identity(m.dim(cur_deg, alg.arrow_map[path[-1]].src))
    for name in reversed(path):
        cur = linalg.mat_mul(m.mat(name, cur_deg), cur)
        cur_deg = vadd(cur_deg, alg.arrow_map[name].deg)
    return cur


def graded_dimension(m) -> LaurentSeries:
    """Total graded dimension as a lazy series; queries beyond the trusted
    height raise a TruncationError instead of returning a silent zero.

    Heights are absolute: data is trusted at degrees g with weight . g up to
    the truncation bound.
    """
    if isinstance(m, AlgebraTruncation):
        alg, sup, bound = m, m.support, m.height

        def count(g):
            return alg.dims_at(g)
    else:
        alg, sup, bound = m.algebra, m.support, m.height

        def count(g, mod=m):
            return sum(mod.dims.get((g, v), 0) for v in alg.pres.vertices)

    weight = alg.weight

    def oracle(g):
        if dot(weight, g) > bound:
            raise TruncationError("graded dimension at %r is beyond height %d" % (g, bound))
        return Fraction(count(g))

    return LaurentSeries(sup, oracle, "external")


def cartan_matrix(a: AlgebraTruncation) -> SeriesMatrix:
    """Entry (j, i) counts dim e_j R_g e_i: the class of the projective at
    vertex i in terms of shifted simples."""
    entries = {}
    vertices = a.pres.vertices
    for j in vertices:
        for i in vertices:
            def oracle(g, i=i, j=j):
                if a.deg_height(g) > a.height:
                    raise TruncationError("Cartan entry at %r beyond height %d" % (g, a.height))
                return Fraction(a.dim(g, i, j))

            entries[(j, i)] = LaurentSeries(a.support, oracle, "external")
    return SeriesMatrix(vertices, vertices, entries, a.order,
                        row_basis="simple", col_basis="projective")


def projective_module(a: AlgebraTruncation, i: str, shift=None, name=None) -> GradedModule:
    """The projective R e_i, optionally shifted, as a graded module."""
    if i not in a.pres.vertices:
        raise UsageError("unknown vertex %r" % (i,))
    shift = tuple(int(x) for x in shift) if shift is not None else zero_point(a.order.dim)
    dims = {}
    for (deg, src, tgt), ids in a.basis.items():
        if src == i and ids:
            dims[(vadd(deg, shift), tgt)] = len(ids)
    mats = {}
    for (deg, src, tgt), ids in a.basis.items():
        if src != i or not ids:
            continue
        for arr in a.pres.arrows:
            if arr.src != tgt:
                continue
            if a.deg_height(vadd(deg, arr.deg)) > a.height:
                continue
            target_ids = a.basis_ids(vadd(deg, arr.deg), i, arr.tgt)
            col_index = {eid: k for k, eid in enumerate(target_ids)}
            matrix = linalg.zeros(len(target_ids), len(ids))
            for col, eid in enumerate(ids):
                for out_id, c in a.lmul[(arr.name, eid)].items():
                    matrix[col_index[out_id]][col] = c
            mats[(arr.name, vadd(deg, shift))] = matrix
    sup = cone_support(a.order, shift, a.support.generators, a.support.weight)
    bound = dot(a.weight, shift) + a.height
    return GradedModule(a, dims, mats, sup, bound,
                        name or ("P_%s%s" % (i, list(shift) if any(shift) else "")))


def simple_module(a: AlgebraTruncation, i: str, shift=None, name=None) -> GradedModule:
    """The simple top of R e_i: one-dimensional at its vertex, zero arrows."""
    if i not in a.pres.vertices:
        raise UsageError("unknown vertex %r" % (i,))
    shift = tuple(int(x) for x in shift) if shift is not None else zero_point(a.order.dim)
    dims = {(shift, i): 1}
    sup = cone_support(a.order, shift, (), (1,) * a.order.dim)
    return GradedModule(a, dims, {}, sup, dot(a.weight, shift) + a.height,
                        name or ("S_%s%s" % (i, list(shift) if any(shift) else "")))


def shift_module(m: GradedModule, g) -> GradedModule:
    g = tuple(int(x) for x in g)
    dims = {(vadd(deg, g), v): d for (deg, v), d in m.dims.items()}
    mats = {(an, vadd(deg, g)): mat for (an, deg), mat in m.mats.items()}
    sup = cone_support(m.algebra.order, vadd(m.support.offset, g),
                       m.support.generators, m.support.weight)
    return GradedModule(m.algebra, dims, mats, sup,
                        m.height + dot(m.algebra.weight, g), m.name)


def direct_sum(modules) -> GradedModule:
    modules = list(modules)
    if not modules:
        raise UsageError("empty direct sum needs an algebra context")
    alg = modules[0].algebra
    bound = min(m.height for m in modules)
    keys = set()
    for m in modules:
        keys.update(k for k in m.dims if dot(alg.weight, k[0]) <= bound)
    dims = {}
    for key in keys:
        dims[key] = sum(m.dims.get(key, 0) for m in modules)
    mats = {}
    arrow_degs = set()
    for m in modules:
        arrow_degs.update(
            k for k in m.mats
            if dot(alg.weight, vadd(k[1], alg.arrow_map[k[0]].deg)) <= bound)
    for (an, deg) in arrow_degs:
        arr = alg.arrow_map[an]
        blocks = [m.mat(an, deg) for m in modules]
        rows = sum(m.dim(vadd(deg, arr.deg), arr.tgt) for m in modules)
        cols = sum(m.dim(deg, arr.src) for m in modules)
        big = linalg.zeros(rows, cols)
        r0 = c0 = 0
        for m, b in zip(modules, blocks):
            for r, row in enumerate(b):
                for c, x in enumerate(row):
                    big[r0 + r][c0 + c] = x
            r0 += m.dim(vadd(deg, arr.deg), arr.tgt)
            c0 += m.dim(deg, arr.src)
        mats[(an, deg)] = big
    sup = modules[0].support
    for m in modules[1:]:
        sup = union_support(sup, m.support)
    return GradedModule(alg, dims, mats, sup, bound)
