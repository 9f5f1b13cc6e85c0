"""Homological engine: truncation functors, composition multiplicities,
projective covers, minimal resolutions, chain complexes, Euler classes and
induced maps of bimodule functors.

Everything is degreewise exact linear algebra over Q.  Covers choose basis
lifts by Gaussian elimination with first-nonzero pivoting in a fixed basis
order, so all matrices are deterministic and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import TruncationError, UsageError, ValidationError
from .order import OrderSpec, compare, dot, vadd, vsub, zero_point, GT
from .series import LaurentSeries, from_terms
from .support import cone_support, enumerate_upto
from .grothmod import K0Vector
from .grmod import (
    AlgebraTruncation,
    GradedModule,
    graded_dimension,
    projective_module,
)


@dataclass
class ModuleMorphism:
    """Degree-zero map of graded modules: one rational matrix per (degree, vertex)."""

    source: GradedModule
    target: GradedModule
    mats: dict

    def mat(self, g, v):
        g = tuple(g)
        if (g, v) in self.mats:
            return self.mats[(g, v)]
        return linalg.zeros(self.target.dim(g, v), self.source.dim(g, v))


def validate_morphism(f: ModuleMorphism):
    """Check degreewise commutation with every arrow action."""
    alg = f.source.algebra
    bound = min(f.source.height, f.target.height)
    slices = set(f.source.dims) | set(f.mats)
    for (g, v) in sorted(slices, key=lambda gv: (alg.order.key(gv[0]), gv[1])):
        for a in alg.pres.arrows:
            if a.src != v:
                continue
            gt = vadd(g, a.deg)
            if dot(alg.weight, gt) > bound:
                continue
            lhs = linalg.mat_mul(f.mat(gt, a.tgt), f.source.mat(a.name, g))
            rhs = linalg.mat_mul(f.target.mat(a.name, g), f.mat(g, v))
            if lhs != rhs:
                raise ValidationError(
                    "morphism does not commute with arrow %r at degree %r" % (a.name, g))


def _occurring_degrees(m: GradedModule):
    """Degrees with nonzero dimension, sorted by the order."""
    degs = sorted({g for (g, _v), d in m.dims.items() if d > 0}, key=m.algebra.order.key)
    return degs


def _finite_series(order: OrderSpec, terms) -> LaurentSeries:
    """Series with finitely many terms over an inferred support certificate."""
    pts = [tuple(g) for g, c in terms if c != 0]
    if not pts:
        mn, gens = zero_point(order.dim), []
    else:
        mn = min(pts, key=order.key)
        gens = []
        for p in pts:
            d = vsub(p, mn)
            if any(x != 0 for x in d) and d not in gens:
                gens.append(d)
    return from_terms(terms, cone_support(order, mn, gens))


def beta_le(m: GradedModule, g) -> GradedModule:
    """Quotient of the module by its degrees above g (cobaric truncation)."""
    g = tuple(int(x) for x in g)
    order = m.algebra.order
    dims = {(d, v): n for (d, v), n in m.dims.items() if compare(order, d, g) != GT}
    mats = {}
    for (an, d), mat in m.mats.items():
        dt = vadd(d, m.algebra.arrow_map[an].deg)
        if compare(order, d, g) != GT and compare(order, dt, g) != GT:
            mats[(an, d)] = mat
    return GradedModule(m.algebra, dims, mats, m.support, m.height, m.name)


def beta_gt(m: GradedModule, g) -> GradedModule:
    """Submodule supported in degrees above g; a submodule by positivity."""
    g = tuple(int(x) for x in g)
    order = m.algebra.order
    dims = {(d, v): n for (d, v), n in m.dims.items() if compare(order, d, g) == GT}
    mats = {(an, d): mat for (an, d), mat in m.mats.items()
            if compare(order, d, g) == GT}
    return GradedModule(m.algebra, dims, mats, m.support, m.height, m.name)


def composition_multiplicities(m: GradedModule) -> K0Vector:
    """Graded Jordan-Hoelder multiplicities: for a basic algebra the simple at
    vertex j occurs dim e_j M_g times in degree g."""
    alg = m.algebra
    entries = {}
    for v in alg.pres.vertices:
        def oracle(g, v=v):
            if dot(alg.weight, g) > m.height:
                raise TruncationError("multiplicity at %r beyond height %d" % (g, m.height))
            return Fraction(m.dims.get((g, v), 0))

        entries[v] = LaurentSeries(m.support, oracle, "external")
    return K0Vector("simple", alg.pres.vertices, entries, alg.order)


def composition_multiplicities_boxscan(m: GradedModule) -> dict:
    """Multiplicities gathered by a brute-force scan of the stored degree table,
    independent of the ordered support enumeration."""
    out = {}
    for (g, v), d in sorted(m.dims.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if d:
            out[(g, v)] = out.get((g, v), 0) + d
    return out


def ordered_composition_series(m: GradedModule):
    """Degreewise semisimple slices in increasing order of occurring degrees."""
    out = []
    for g in _occurring_degrees(m):
        slice_mult = {}
        for v in m.algebra.pres.vertices:
            d = m.dims.get((g, v), 0)
            if d:
                slice_mult[v] = d
        out.append((g, slice_mult))
    return out


@dataclass
class FreeCover:
    """A direct sum of shifted projectives with its generator bookkeeping.

    ``summands`` lists (shift degree, vertex); ``gen_index[(g, v)]`` lists
    (summand index, algebra basis element id) pairs giving the basis of the
    degree-g, vertex-v slice in a fixed order.
    """

    module: GradedModule
    summands: list
    gen_index: dict


def free_module(alg: AlgebraTruncation, summands) -> FreeCover:
    summands = [(tuple(g), v) for g, v in summands]
    if summands:
        bound = min(dot(alg.weight, s) for s, _v in summands) + alg.height
    else:
        bound = alg.height
    dims = {}
    gen_index = {}
    for s_idx, (shift, v) in enumerate(summands):
        for (deg, src, tgt), ids in alg.basis.items():
            if src != v or not ids:
                continue
            key = (vadd(deg, shift), tgt)
            if dot(alg.weight, key[0]) > bound:
                continue
            gen_index.setdefault(key, [])
            for eid in ids:
                gen_index[key].append((s_idx, eid))
            dims[key] = len(gen_index[key])
    mats = {}
    for (g, tgt), basis in gen_index.items():
        for arr in alg.pres.arrows:
            if arr.src != tgt:
                continue
            gt = vadd(g, arr.deg)
            if dot(alg.weight, gt) > bound:
                continue
            target_basis = gen_index.get((gt, arr.tgt), [])
            col_index = {pair: k for k, pair in enumerate(target_basis)}
            matrix = linalg.zeros(len(target_basis), len(basis))
            for col, (s_idx, eid) in enumerate(basis):
                for out_id, c in alg.lmul[(arr.name, eid)].items():
                    matrix[col_index[(s_idx, out_id)]][col] = c
            mats[(arr.name, g)] = matrix
    if summands:
        base = min((s for s, _v in summands), key=alg.order.key)
        gens = list(alg.support.generators)
        for s, _v in summands:
            d = vsub(s, base)
            if any(x != 0 for x in d) and d not in gens:
                gens.append(d)
        sup = cone_support(alg.order, base, gens)
    else:
        sup = alg.support
    module = GradedModule(alg, dims, mats, sup, bound, "free")
    return FreeCover(module, summands, gen_index)


@dataclass
class CoverResult:
    cover: FreeCover
    pi: ModuleMorphism
    kernel: GradedModule
    inclusion: ModuleMorphism

    def __iter__(self):
        # Unpacks as the (P, pi, K) triple.
        return iter((self.cover.module, self.pi, self.kernel))


def module_top(m: GradedModule):
    """Lifted basis of M / R_{>0} M: per (degree, vertex), the standard
    coordinates surviving after quotienting by all incoming arrow images."""
    alg = m.algebra
    tops = {}
    for (g, v), d in sorted(m.dims.items(), key=lambda kv: (alg.order.key(kv[0][0]), kv[0][1])):
        if d == 0:
            continue
        incoming = []
        for a in alg.pres.arrows:
            if a.tgt != v:
                continue
            gs = vsub(g, a.deg)
            if m.dim(gs, a.src) == 0:
                continue
            mat = m.mat(a.name, gs)
            for col in range(len(mat[0]) if mat else 0):
                incoming.append([mat[r][col] for r in range(len(mat))])
        free = linalg.column_space_complement(incoming, d)
        if free:
            tops[(g, v)] = free
    return tops


def projective_cover(m: GradedModule) -> CoverResult:
    """Projective cover within the truncation window.

    The top of M is computed degreewise as the cokernel of all incoming arrow
    actions; P is the matching direct sum of shifted projectives, pi lifts the
    chosen top basis, and K = ker(pi) is extracted by exact elimination.  The
    kernel starts strictly above the least degree of M.
    """
    alg = m.algebra
    tops = module_top(m)
    summands = []
    lifts = []
    for (g, v), free in sorted(tops.items(), key=lambda kv: (alg.order.key(kv[0][0]), kv[0][1])):
        for idx in free:
            summands.append((g, v))
            lifts.append(((g, v), idx))
    cover = free_module(alg, summands)
    p = cover.module
    window = min(m.height, p.height)

    act_memo = {}

    def act(eid, s_idx):
        # Image in M of the P-basis element (summand s_idx, algebra element eid).
        key = (eid, s_idx)
        if key in act_memo:
            return act_memo[key]
        elem = alg.elems[eid]
        (g0, v0), lift_idx = lifts[s_idx]
        if elem.arrow is None:
            vec = [Fraction(0)] * m.dim(g0, v0)
            vec[lift_idx] = Fraction(1)
        else:
            sub_vec = act(elem.sub, s_idx)
            sub_deg = vadd(alg.elems[elem.sub].deg, g0)
            vec = linalg.mat_vec(m.mat(elem.arrow, sub_deg), sub_vec)
        act_memo[key] = vec
        return vec

    pi_mats = {}
    for (g, v), basis in cover.gen_index.items():
        if dot(alg.weight, g) > window:
            continue
        cols = [act(eid, s_idx) for s_idx, eid in basis]
        matrix = [[cols[c][r] for c in range(len(cols))] for r in range(m.dim(g, v))]
        pi_mats[(g, v)] = matrix
    pi = ModuleMorphism(p, m, pi_mats)
    for (g, v), d in m.dims.items():
        if d and linalg.rank(pi.mat(g, v)) != d:
            raise ValidationError(
                "cover is not surjective at degree %r; the module is not generated "
                "inside its trusted window" % (g,))

    kernel_basis = {}
    for (g, v), matrix in pi_mats.items():
        ker = linalg.nullspace(matrix, ncols=p.dim(g, v))
        if ker:
            kernel_basis[(g, v)] = ker
    k_dims = {key: len(vecs) for key, vecs in kernel_basis.items()}
    k_mats = {}
    for (g, v), vecs in kernel_basis.items():
        for a in alg.pres.arrows:
            if a.src != v:
                continue
            gt = vadd(g, a.deg)
            if dot(alg.weight, gt) > window:
                continue
            target = kernel_basis.get((gt, a.tgt), [])
            if not target and p.dim(gt, a.tgt) == 0:
                continue
            images = [linalg.mat_vec(p.mat(a.name, g), vec) for vec in vecs]
            matrix = linalg.zeros(len(target), len(vecs))
            for col, img in enumerate(images):
                coords = linalg.solve_in_span(target, img)
                if coords is None:
                    raise ValidationError("kernel is not closed under the arrow action")
                for row, c in enumerate(coords):
                    matrix[row][col] = c
            k_mats[(a.name, g)] = matrix
    k = GradedModule(alg, k_dims, k_mats, p.support, window, "ker(%s)" % (m.name or "pi"))
    incl_mats = {}
    for (g, v), vecs in kernel_basis.items():
        incl_mats[(g, v)] = [[vecs[c][r] for c in range(len(vecs))]
                             for r in range(p.dim(g, v))]
    incl = ModuleMorphism(k, p, incl_mats)
    return CoverResult(cover, pi, k, incl)


def minimal_resolution(m: GradedModule, length: int):
    """Classes of the terms of a minimal projective resolution.

    Returns one K0Vector over the projective basis per homological degree
    0..length; each entry is the finite sum of the shifts of the
    corresponding indecomposable projective.  Raises TruncationError with the
    first unreliable step when the window is exhausted before ``length``.
    """
    alg = m.algebra
    out = []
    current = m
    for step in range(length + 1):
        if step > current.height:
            raise TruncationError(
                "resolution step %d is beyond the trusted height %d; its classes "
                "would lie entirely outside the window" % (step, current.height))
        res = projective_cover(current)
        out.append(_summand_classes(alg, res.cover.summands))
        current = res.kernel
    return out


def resolution_complex(m: GradedModule, length: int):
    """The resolution assembled as a chain complex P_length -> ... -> P_0."""
    alg = m.algebra
    covers = []
    current = m
    for step in range(length + 1):
        if step > current.height:
            raise TruncationError(
                "resolution step %d is beyond the trusted height %d" % (step, current.height))
        res = projective_cover(current)
        covers.append(res)
        current = res.kernel
    components = {h: covers[h].cover.module for h in range(length + 1)}
    diffs = {}
    for h in range(1, length + 1):
        upper, lower = covers[h], covers[h - 1]
        mats = {}
        for (g, v) in upper.pi.mats:
            into_kernel = upper.pi.mats[(g, v)]
            embed = lower.inclusion.mat(g, v)
            mats[(g, v)] = linalg.mat_mul(embed, into_kernel)
        diffs[h] = ModuleMorphism(upper.cover.module, lower.cover.module, mats)
    return ChainComplex(0, length, components, diffs)


def _summand_classes(alg: AlgebraTruncation, summands) -> K0Vector:
    per_vertex = {}
    for g, v in summands:
        per_vertex.setdefault(v, {})
        per_vertex[v][g] = per_vertex[v].get(g, 0) + 1
    entries = {}
    for v, table in per_vertex.items():
        entries[v] = _finite_series(alg.order, [(g, Fraction(c)) for g, c in table.items()])
    return K0Vector("projective", alg.pres.vertices, entries, alg.order)


@dataclass
class ChainComplex:
    """Bounded complex of graded modules with degree-zero differentials
    d_h : C_h -> C_{h-1}; d . d = 0 is checked degreewise on construction."""

    lo: int
    hi: int
    components: dict
    diffs: dict
    _checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.lo > self.hi:
            raise UsageError("empty homological range")
        for h in range(self.lo, self.hi + 1):
            if h not in self.components:
                raise UsageError("missing component in homological degree %d" % h)
        if not self._checked:
            self._check_dd()
            self._checked = True

    def component(self, h) -> GradedModule:
        return self.components[h]

    def diff(self, h) -> ModuleMorphism:
        if h in self.diffs:
            return self.diffs[h]
        source = self.components.get(h)
        target = self.components.get(h - 1)
        if source is None or target is None:
            raise UsageError("no differential at %d" % h)
        return ModuleMorphism(source, target, {})

    def _check_dd(self):
        for h in range(self.lo + 2, self.hi + 1):
            d1, d2 = self.diff(h - 1), self.diff(h)
            for (g, v) in set(d2.mats) | set(d1.mats):
                prod = linalg.mat_mul(d1.mat(g, v), d2.mat(g, v))
                if not linalg.is_zero_matrix(prod):
                    raise ValidationError("d . d is nonzero at degree %r, position %d" % (g, h))


def homology(x: ChainComplex):
    """Degreewise homology modules with their induced arrow actions."""
    out = {}
    for h in range(x.lo, x.hi + 1):
        c = x.component(h)
        alg = c.algebra
        d_out = x.diff(h) if h > x.lo else None
        d_in = x.diff(h + 1) if h < x.hi else None
        reps = {}
        img = {}
        for (g, v), dim in c.dims.items():
            if dim == 0:
                continue
            if d_out is not None:
                kernel = linalg.nullspace(d_out.mat(g, v), ncols=dim)
            else:
                kernel = [linalg.unit_vector(dim, j) for j in range(dim)]
            image = []
            if d_in is not None:
                mat = d_in.mat(g, v)
                src_dim = x.component(h + 1).dim(g, v)
                for col in range(src_dim):
                    image.append([mat[r][col] for r in range(dim)])
            chosen = []
            span = [list(vec) for vec in image]
            base_rank = linalg.rank(span) if span else 0
            for vec in kernel:
                if linalg.rank(span + [list(vec)]) > base_rank:
                    span.append(list(vec))
                    base_rank += 1
                    chosen.append(vec)
            if chosen:
                reps[(g, v)] = chosen
                img[(g, v)] = image
        dims = {key: len(vecs) for key, vecs in reps.items()}
        mats = {}
        for (g, v), vecs in reps.items():
            for a in alg.pres.arrows:
                if a.src != v:
                    continue
                gt = vadd(g, a.deg)
                if dot(alg.weight, gt) > c.height:
                    continue
                target_reps = reps.get((gt, a.tgt), [])
                target_img = img.get((gt, a.tgt), [])
                if not target_reps:
                    continue
                matrix = linalg.zeros(len(target_reps), len(vecs))
                for col, vec in enumerate(vecs):
                    image_vec = linalg.mat_vec(c.mat(a.name, g), vec)
                    coords = linalg.solve_in_span(target_img + target_reps, image_vec)
                    if coords is None:
                        raise ValidationError("homology is not closed under the arrow action")
                    for row in range(len(target_reps)):
                        matrix[row][col] = coords[len(target_img) + row]
                mats[(a.name, g)] = matrix
        out[h] = GradedModule(alg, dims, mats, c.support, c.height, "H%d" % h)
    return out


def euler_class(x: ChainComplex) -> K0Vector:
    """Alternating sum of the homology classes in the simple basis."""
    from .grothmod import k0_add, k0_negate

    hs = homology(x)
    total = None
    for h in range(x.lo, x.hi + 1):
        cls = composition_multiplicities(hs[h])
        if h % 2:
            cls = k0_negate(cls)
        total = cls if total is None else k0_add(total, cls)
    return total


def component_euler_class(x: ChainComplex) -> K0Vector:
    """Alternating sum of the component classes; equals the Euler class."""
    from .grothmod import k0_add, k0_negate

    total = None
    for h in range(x.lo, x.hi + 1):
        cls = composition_multiplicities(x.component(h))
        if h % 2:
            cls = k0_negate(cls)
        total = cls if total is None else k0_add(total, cls)
    return total


# -- submodules and quotients ---------------------------------------------


def span_submodule(m: GradedModule, seed_vectors):
    """Smallest submodule containing the seed vectors, with its inclusion.

    ``seed_vectors`` maps (degree, vertex) to lists of coordinate vectors.
    The span is closed under the arrow actions within the trusted height and
    echelonized per slice, so the output is deterministic.
    """
    alg = m.algebra
    slices = {}
    for (g, v), vecs in seed_vectors.items():
        g = tuple(g)
        for vec in vecs:
            if len(vec) != m.dim(g, v):
                raise UsageError("seed vector of wrong dimension at %r" % ((g, v),))
            slices.setdefault((g, v), []).append([Fraction(x) for x in vec])
    changed = True
    while changed:
        changed = False
        for (g, v) in sorted(slices, key=lambda gv: (alg.order.key(gv[0]), gv[1])):
            vecs = slices[(g, v)]
            for a in alg.pres.arrows:
                if a.src != v:
                    continue
                gt = vadd(g, a.deg)
                if dot(alg.weight, gt) > m.height or m.dim(gt, a.tgt) == 0:
                    continue
                mat = m.mat(a.name, g)
                existing = slices.get((gt, a.tgt), [])
                for vec in vecs:
                    img = linalg.mat_vec(mat, vec)
                    if any(x != 0 for x in img) and \
                            linalg.solve_in_span(existing, img) is None:
                        existing = existing + [img]
                        slices[(gt, a.tgt)] = existing
                        changed = True
    basis = {}
    for key, vecs in slices.items():
        reduced, pivots = linalg.rref(vecs)
        rows = [reduced[i] for i in range(len(pivots))]
        if rows:
            basis[key] = rows
    dims = {key: len(vecs) for key, vecs in basis.items()}
    mats = {}
    for (g, v), vecs in basis.items():
        for a in alg.pres.arrows:
            if a.src != v:
                continue
            gt = vadd(g, a.deg)
            if dot(alg.weight, gt) > m.height:
                continue
            target = basis.get((gt, a.tgt), [])
            matrix = linalg.zeros(len(target), len(vecs))
            for col, vec in enumerate(vecs):
                img = linalg.mat_vec(m.mat(a.name, g), vec)
                coords = linalg.solve_in_span(target, img)
                if coords is None:
                    raise ValidationError("submodule closure failed at %r" % ((g, v),))
                for row, cval in enumerate(coords):
                    matrix[row][col] = cval
            if matrix:
                mats[(a.name, g)] = matrix
    n = GradedModule(alg, dims, mats, m.support, m.height, "sub(%s)" % (m.name or "M"))
    incl_mats = {}
    for (g, v), vecs in basis.items():
        incl_mats[(g, v)] = [[vecs[c][r] for c in range(len(vecs))]
                             for r in range(m.dim(g, v))]
    return n, ModuleMorphism(n, m, incl_mats)


def quotient_module(m: GradedModule, incl: ModuleMorphism):
    """Quotient of M by the image of an inclusion, with its projection."""
    if incl.target is not m:
        raise UsageError("inclusion does not land in the module")
    alg = m.algebra
    sub_vectors = {}
    for (g, v), mat in incl.mats.items():
        cols = [[mat[r][c] for r in range(len(mat))] for c in range(len(mat[0]) if mat else 0)]
        sub_vectors[(g, v)] = cols
    reps = {}
    proj_mats = {}
    dims = {}
    for (g, v), d in m.dims.items():
        if d == 0:
            continue
        vecs = sub_vectors.get((g, v), [])
        free = linalg.column_space_complement(vecs, d)
        qdim = len(free)
        if qdim != d - linalg.rank(vecs):
            raise ValidationError("inclusion columns are not independent at %r" % ((g, v),))
        dims[(g, v)] = qdim
        reps[(g, v)] = free
        # Projection: coordinates of e_k modulo the submodule in the rep basis.
        matrix = linalg.zeros(qdim, d)
        basis_all = [list(vec) for vec in vecs] + \
                    [linalg.unit_vector(d, j) for j in free]
        for k in range(d):
            coords = linalg.solve_in_span(basis_all, linalg.unit_vector(d, k))
            if coords is None:
                raise ValidationError("quotient projection failed at %r" % ((g, v),))
            for row in range(qdim):
                matrix[row][k] = coords[len(vecs) + row]
        proj_mats[(g, v)] = matrix
    dims = {key: d for key, d in dims.items() if d}
    mats = {}
    for (g, v), free in reps.items():
        if not free:
            continue
        for a in alg.pres.arrows:
            if a.src != v:
                continue
            gt = vadd(g, a.deg)
            if dot(alg.weight, gt) > m.height:
                continue
            if dims.get((gt, a.tgt), 0) == 0:
                continue
            mat = m.mat(a.name, g)
            proj = proj_mats[(gt, a.tgt)]
            matrix = linalg.zeros(dims[(gt, a.tgt)], len(free))
            for col, k in enumerate(free):
                img = [mat[r][k] for r in range(len(mat))]
                coords = linalg.mat_vec(proj, img)
                for row, cval in enumerate(coords):
                    matrix[row][col] = cval
            mats[(a.name, g)] = matrix
    q = GradedModule(alg, dims, mats, m.support, m.height, "%s/sub" % (m.name or "M"))
    proj = ModuleMorphism(m, q, {key: mat for key, mat in proj_mats.items() if mat})
    return q, proj


# -- bimodule functors ------------------------------------------------------


@dataclass
class Bimodule:
    """Left module over one algebra with a commuting right action of another.

    ``components[i]`` is the left module B e_i for each right vertex i;
    ``right_action[arrow]`` maps, per (degree, left vertex), the slice of
    B e_{tgt} into the slice of B e_{src} at degree + deg(arrow).
    """

    left: AlgebraTruncation
    right: AlgebraTruncation
    components: dict
    right_action: dict

    def __post_init__(self):
        for i in self.right.pres.vertices:
            if i not in self.components:
                raise ValidationError("missing bimodule component for vertex %r" % (i,))
        _validate_bimodule(self)


def _right_action_morphism(b: Bimodule, arrow_name):
    arr = b.right.arrow_map[arrow_name]
    src_mod = b.components[arr.tgt]
    mats = b.right_action.get(arrow_name, {})
    tgt_mod = b.components[arr.src]

    def mat(g, v):
        g = tuple(g)
        if (g, v) in mats:
            return mats[(g, v)]
        return linalg.zeros(tgt_mod.dim(vadd(g, arr.deg), v), src_mod.dim(g, v))

    return src_mod, tgt_mod, arr, mat


def _validate_bimodule(b: Bimodule):
    left, right = b.left, b.right
    for name in b.right_action:
        if name not in right.arrow_map:
            raise ValidationError("right action for unknown arrow %r" % (name,))
    bound = min(m.height for m in b.components.values())
    for name in right.arrow_map:
        src_mod, tgt_mod, arr, rho = _right_action_morphism(b, name)
        for (g, v), d in src_mod.dims.items():
            if d == 0:
                continue
            gt = vadd(g, arr.deg)
            if dot(left.weight, gt) > bound:
                continue
            for la in left.pres.arrows:
                if la.src != v:
                    continue
                gl = vadd(g, la.deg)
                if dot(left.weight, vadd(gl, arr.deg)) > bound:
                    continue
                lhs = linalg.mat_mul(rho(gl, la.tgt), src_mod.mat(la.name, g))
                rhs = linalg.mat_mul(tgt_mod.mat(la.name, gt), rho(g, v))
                if lhs != rhs:
                    raise ValidationError(
                        "right action of %r does not commute with left arrow %r"
                        % (name, la.name))
    for rel in right.pres.relations:
        _validate_right_relation(b, rel, bound)


def _validate_right_relation(b: Bimodule, rel, bound):
    right = b.right
    rel_deg = right._path_degree(rel[0][1])
    first = rel[0][1]
    start_mod = b.components[right.arrow_map[first[0]].tgt]
    for (g, v), d in start_mod.dims.items():
        if d == 0 or dot(b.left.weight, vadd(g, rel_deg)) > bound:
            continue
        total = None
        for coef, path in rel:
            cur = linalg.identity(d)
            cur_deg = g
            # Right action composes contravariantly: the leftmost arrow of the
            # path acts first on B e_{tgt(path)}.
            for name in path:
                _, _, arr, rho = _right_action_morphism(b, name)
                cur = linalg.mat_mul(rho(cur_deg, v), cur)
                cur_deg = vadd(cur_deg, arr.deg)
            term = linalg.mat_scale(coef, cur)
            total = term if total is None else linalg.mat_add(total, term)
        if total is not None and not linalg.is_zero_matrix(total):
            raise ValidationError("right relation %r does not act as zero" % (rel,))


def functor_matrix(b: Bimodule):
    """Matrix of the induced Grothendieck-group map of tensoring with B.

    Column i holds the composition multiplicities over the left algebra of
    B e_i, i.e. the image of the class of the projective at right vertex i.
    """
    from .grothmod import SeriesMatrix

    rows = b.left.pres.vertices
    cols = b.right.pres.vertices
    entries = {}
    for i in cols:
        mult = composition_multiplicities(b.components[i])
        for w in rows:
            if w in mult.entries:
                entries[(w, i)] = mult.entries[w]
    return SeriesMatrix(rows, cols, entries, b.left.order,
                        row_basis="simple", col_basis="projective")
