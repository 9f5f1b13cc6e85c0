"""JSON-driven command line front end.

Inputs are JSON files; outputs are deterministic term tables (text) or JSON.
Exit codes: 0 success, 1 computation or assertion failure (including
truncation exhaustion), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import grmod, homalg, series as series_mod
from .errors import (
    LaurentGrothError,
    SingularConstantTermError,
    TruncationError,
    UsageError,
    ValidationError,
    WeightSearchError,
    ZeroProbeError,
)
from .grothmod import K0Vector, SeriesMatrix, change_basis, invert_matrix
from .order import OrderSpec, lex_order, matrix_order, zero_point
from .support import cone_support
from .series import (
    LaurentSeries,
    add,
    equal_up_to,
    from_terms,
    invert,
    mul,
    negate,
    series_equal_through,
    truncate,
)

log = logging.getLogger("laurentgroth")


# -- input parsing -----------------------------------------------------------


def parse_order(spec, dim: int) -> OrderSpec:
    if spec is None or spec == "lex":
        return lex_order(dim)
    if isinstance(spec, dict) and "matrix" in spec:
        return matrix_order(spec["matrix"])
    raise ValidationError("order must be \"lex\" or {\"matrix\": [[...]]}, got %r" % (spec,))


def _term_pairs(raw):
    for item in raw:
        if isinstance(item, dict):
            yield tuple(item["deg"]), item["coef"]
        else:
            deg, coef = item
            yield tuple(deg), coef


def load_series(payload) -> LaurentSeries:
    """Series from {"order":..., "terms":[...], "support": {...}?, "dim": n?}.

    Terms may be objects {"deg": [...], "coef": "p/q"} or [deg, coef] pairs.
    Without an explicit support, the offset is the order-least term degree and
    the generators are the differences of the other term degrees from it.
    """
    if not isinstance(payload, dict) or "terms" not in payload:
        raise ValidationError("series input needs a \"terms\" field")
    terms = [(deg, Fraction(str(coef))) for deg, coef in _term_pairs(payload["terms"])]
    dim = payload.get("dim")
    if dim is None:
        if terms:
            dim = len(terms[0][0])
        else:
            dim = 1
    order = parse_order(payload.get("order"), dim)
    if "support" in payload:
        sup_spec = payload["support"]
        sup = cone_support(order, sup_spec.get("offset", zero_point(dim)),
                           sup_spec.get("generators", ()))
    else:
        pts = [deg for deg, coef in terms if coef != 0]
        if pts:
            base = min(pts, key=order.key)
            gens = []
            for p in pts:
                d = tuple(x - y for x, y in zip(p, base))
                if any(d) and d not in gens:
                    gens.append(d)
            sup = cone_support(order, base, gens)
        else:
            sup = cone_support(order, zero_point(dim), ())
    return from_terms(terms, sup)


def load_algebra(payload) -> grmod.AlgebraTruncation:
    for key in ("vertices", "arrows", "height"):
        if key not in payload:
            raise ValidationError("algebra input needs a %r field" % key)
    arrows = [(a["name"], a["src"], a["tgt"], tuple(a["deg"])) for a in payload["arrows"]]
    if arrows:
        dim = len(arrows[0][3])
    else:
        dim = payload.get("dim", 1)
    order = parse_order(payload.get("order"), dim)
    relations = []
    for rel in payload.get("relations", ()):
        relations.append(tuple((Fraction(str(t.get("coef", "1"))), tuple(t["path"]))
                               for t in rel))
    pres = grmod.presentation(payload["vertices"], arrows, relations, order,
                              int(payload["height"]))
    return grmod.expand_algebra(pres)


def _parse_deg_key(key: str):
    return tuple(int(x) for x in key.split(","))


def load_module(payload, algebra: grmod.AlgebraTruncation, height=None) -> grmod.GradedModule:
    """Module from {"dims": {vertex: {"g1,g2": d}}, "arrows": {name: {"g1,g2": [[...]]}}}."""
    dims = {}
    for v, table in payload.get("dims", {}).items():
        if v not in algebra.pres.vertices:
            raise ValidationError("module dims mention unknown vertex %r" % (v,))
        for key, d in table.items():
            dims[(_parse_deg_key(key), v)] = int(d)
    mats = {}
    for name, table in payload.get("arrows", {}).items():
        if name not in algebra.arrow_map:
            raise ValidationError("module action mentions unknown arrow %r" % (name,))
        for key, rows in table.items():
            mats[(name, _parse_deg_key(key))] = [[Fraction(str(x)) for x in row]
                                                 for row in rows]
    m = grmod.module_from_dims(algebra, dims, mats, height=height)
    grmod.validate_module(m)
    return m


def load_complex(payload):
    if "algebra" not in payload or "range" not in payload:
        raise ValidationError("complex input needs \"algebra\" and \"range\" fields")
    algebra = load_algebra(payload["algebra"])
    lo, hi = (int(x) for x in payload["range"])
    components = {}
    for h in range(lo, hi + 1):
        comp = payload.get("components", {}).get(str(h))
        if comp is None:
            raise ValidationError("complex is missing component %d" % h)
        components[h] = load_module(comp, algebra)
    diffs = {}
    for h in range(lo + 1, hi + 1):
        table = payload.get("diff", {}).get(str(h), {})
        mats = {}
        for v, bydeg in table.items():
            for key, rows in bydeg.items():
                mats[(_parse_deg_key(key), v)] = [[Fraction(str(x)) for x in row]
                                                  for row in rows]
        diffs[h] = homalg.ModuleMorphism(components[h], components[h - 1], mats)
        homalg.validate_morphism(diffs[h])
    return homalg.ChainComplex(lo, hi, components, diffs)


def load_bimodule(payload) -> homalg.Bimodule:
    for key in ("left", "right", "components"):
        if key not in payload:
            raise ValidationError("bimodule input needs a %r field" % key)
    left = load_algebra(payload["left"])
    right = load_algebra(payload["right"])
    components = {}
    for i, comp in payload["components"].items():
        components[i] = load_module(comp, left)
    right_action = {}
    for name, table in payload.get("right_action", {}).items():
        mats = {}
        for v, bydeg in table.items():
            for key, rows in bydeg.items():
                mats[(_parse_deg_key(key), v)] = [[Fraction(str(x)) for x in row]
                                                  for row in rows]
        right_action[name] = mats
    return homalg.Bimodule(left, right, components, right_action)


# -- output formatting -------------------------------------------------------


def fmt_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def fmt_term_line(deg, coef) -> str:
    vars_part = " ".join("x%d^%d" % (i + 1, d) for i, d in enumerate(deg))
    return "%s %s" % (fmt_rational(coef), vars_part)


def order_header(order: OrderSpec) -> str:
    if order.kind == "lex":
        return "# order: lex dim=%d" % order.dim
    return "# order: matrix %s" % json.dumps([list(r) for r in order.rows])


def series_to_text(f: LaurentSeries, bound: int, header=True) -> str:
    lines = [order_header(f.order)] if header else []
    for deg, coef in truncate(f, bound):
        lines.append(fmt_term_line(deg, coef))
    return "\n".join(lines)


def series_to_json(f: LaurentSeries, bound: int) -> dict:
    return {
        "terms": [{"deg": list(deg), "coef": fmt_rational(coef)}
                  for deg, coef in truncate(f, bound)],
        "height": bound,
    }


def matrix_to_text(m: SeriesMatrix, bound: int) -> str:
    lines = [order_header(m.order),
             "# rows(%s)=%s cols(%s)=%s" % (m.row_basis, list(m.row_labels),
                                            m.col_basis, list(m.col_labels))]
    for r in m.row_labels:
        for c in m.col_labels:
            lines.append("entry %s %s:" % (r, c))
            for deg, coef in truncate(m.entry(r, c), bound):
                lines.append(fmt_term_line(deg, coef))
    return "\n".join(lines)


def matrix_to_json(m: SeriesMatrix, bound: int) -> dict:
    return {
        "rows": list(m.row_labels),
        "cols": list(m.col_labels),
        "row_basis": m.row_basis,
        "col_basis": m.col_basis,
        "entries": [
            {"row": r, "col": c, **series_to_json(m.entry(r, c), bound)}
            for r in m.row_labels for c in m.col_labels
        ],
        "height": bound,
    }


def k0_to_text(v: K0Vector, bound: int) -> str:
    lines = [order_header(v.order), "# basis=%s labels=%s" % (v.basis, list(v.labels))]
    for lab in v.labels:
        lines.append("class %s:" % (lab,))
        for deg, coef in truncate(v.entry(lab), bound):
            lines.append(fmt_term_line(deg, coef))
    return "\n".join(lines)


def k0_to_json(v: K0Vector, bound: int) -> dict:
    return {
        "basis": v.basis,
        "entries": {str(lab): series_to_json(v.entry(lab), bound) for lab in v.labels},
        "height": bound,
    }


def _emit(args, text_fn, json_fn, out):
    if args.format == "json":
        out.write(json.dumps(json_fn(), indent=2, sort_keys=True))
        out.write("\n")
    else:
        out.write(text_fn())
        out.write("\n")


# -- commands ----------------------------------------------------------------


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_series_mul(args, out):
    f = load_series(_read_json(args.file[0]))
    g = load_series(_read_json(args.file[1]))
    h = mul(f, g)
    _emit(args, lambda: series_to_text(h, args.height),
          lambda: series_to_json(h, args.height), out)
    return 0


def cmd_series_invert(args, out):
    f = load_series(_read_json(args.file[0]))
    g = invert(f, zero_probe_height=args.probe)
    _emit(args, lambda: series_to_text(g, args.height),
          lambda: series_to_json(g, args.height), out)
    return 0


def cmd_series_eq(args, out):
    f = load_series(_read_json(args.file[0]))
    g = load_series(_read_json(args.file[1]))
    e = _parse_deg_key(args.at)
    result = equal_up_to(f, g, e, probe_height=args.probe)
    if args.format == "json":
        out.write(json.dumps({"equal_up_to": result, "at": list(e)}) + "\n")
    else:
        out.write("true\n" if result else "false\n")
    return 0


def cmd_algebra_gdim(args, out):
    alg = load_algebra(_read_json(args.file[0]))
    bound = args.height if args.height is not None else alg.height
    s = grmod.graded_dimension(alg)
    _emit(args, lambda: series_to_text(s, bound),
          lambda: series_to_json(s, bound), out)
    return 0


def cmd_algebra_cartan(args, out):
    alg = load_algebra(_read_json(args.file[0]))
    bound = args.height if args.height is not None else alg.height
    c = grmod.cartan_matrix(alg)
    _emit(args, lambda: matrix_to_text(c, bound),
          lambda: matrix_to_json(c, bound), out)
    return 0


def cmd_algebra_simples(args, out):
    alg = load_algebra(_read_json(args.file[0]))
    bound = args.height if args.height is not None else alg.height
    inv = invert_matrix(grmod.cartan_matrix(alg), bound)
    _emit(args, lambda: matrix_to_text(inv, bound),
          lambda: matrix_to_json(inv, bound), out)
    return 0


def cmd_resolve(args, out):
    alg = load_algebra(_read_json(args.file[0]))
    if args.vertex not in alg.pres.vertices:
        raise UsageError("unknown vertex %r" % (args.vertex,))
    s = grmod.simple_module(alg, args.vertex)
    steps = homalg.minimal_resolution(s, args.length)
    bound = args.height if args.height is not None else alg.height

    def text():
        lines = [order_header(alg.order)]
        for k, q in enumerate(steps):
            lines.append("step %d:" % k)
            lines.append(k0_to_text(q, bound))
        return "\n".join(lines)

    def as_json():
        return {"vertex": args.vertex,
                "steps": [k0_to_json(q, bound) for q in steps]}

    _emit(args, text, as_json, out)
    return 0


def cmd_euler(args, out):
    x = load_complex(_read_json(args.file[0]))
    cls = homalg.euler_class(x)
    bound = args.height if args.height is not None else \
        min(x.component(h).height for h in range(x.lo, x.hi + 1))
    _emit(args, lambda: k0_to_text(cls, bound),
          lambda: k0_to_json(cls, bound), out)
    return 0


def cmd_functor(args, out):
    b = load_bimodule(_read_json(args.file[0]))
    m = homalg.functor_matrix(b)
    bound = args.height if args.height is not None else \
        min(c.height for c in b.components.values())
    _emit(args, lambda: matrix_to_text(m, bound),
          lambda: matrix_to_json(m, bound), out)
    return 0


def truncated_polynomial_algebra(n: int, bound: int) -> grmod.AlgebraTruncation:
    """k[x]/(x^n) with deg(x) = 2, truncated at the given height."""
    order = lex_order(1)
    pres = grmod.presentation(
        ["1"], [("x", "1", "1", (2,))],
        [[(Fraction(1), ("x",) * n)]],
        order, bound)
    return grmod.expand_algebra(pres)


def cmd_verify_paper(args, out):
    """Check the two motivating expansions end to end.

    (a) builds the truncated polynomial algebra on one loop of degree 2,
    (b) expands the inverse Cartan matrix and the alternating sum of the
    minimal resolution of the simple, (c) asserts they agree through the
    height, and (d) prints the two-variable expansion of
    (1 - y^2) / (1 - x^2).
    """
    n, bound = args.n, args.height
    if n < 1:
        raise UsageError("--n must be at least 1")
    alg = truncated_polynomial_algebra(n, bound)
    out.write(order_header(alg.order) + "\n")
    gdim = grmod.graded_dimension(alg)
    out.write("graded dimension of the algebra:\n")
    out.write(series_to_text(gdim, min(bound, 2 * n)) + "\n")

    cartan = grmod.cartan_matrix(alg)
    inv = invert_matrix(cartan, bound)
    series_route = inv.entry("1", "1")
    out.write("series route (inverse Cartan entry):\n")
    out.write(series_to_text(series_route, bound, header=False) + "\n")

    simple = grmod.simple_module(alg, "1")
    steps = homalg.minimal_resolution(simple, bound)
    resolution_route = None
    for k, q in enumerate(steps):
        entry = q.entry("1")
        if k % 2:
            entry = negate(entry)
        resolution_route = entry if resolution_route is None else \
            add(resolution_route, entry)
    out.write("resolution route (alternating projective classes):\n")
    out.write(series_to_text(resolution_route, bound, header=False) + "\n")

    if not series_equal_through(series_route, resolution_route, bound):
        out.write("MISMATCH between series and resolution routes\n")
        return 1
    out.write("routes agree through height %d\n" % bound)

    order2 = lex_order(2)
    numer = from_terms([((0, 0), 1), ((0, 2), -1)],
                       cone_support(order2, (0, 0), [(0, 2)]))
    denom = from_terms([((0, 0), 1), ((2, 0), -1)],
                       cone_support(order2, (0, 0), [(2, 0)]))
    frac = mul(numer, invert(denom, zero_probe_height=2))
    table_height = min(bound, 30)
    out.write("expansion of (1 - x2^2)/(1 - x1^2):\n")
    out.write(series_to_text(frac, table_height) + "\n")
    for deg, coef in truncate(frac, table_height):
        expect = Fraction(1) if deg[1] == 0 else Fraction(-1)
        if deg[0] % 2 or deg[1] not in (0, 2) or coef != expect:
            out.write("MISMATCH in the two-variable table at %r\n" % (deg,))
            return 1
    out.write("two-variable table matches\n")
    return 0


# -- driver ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laurentgroth",
        description="Exact cone-supported Laurent series and graded Grothendieck-group calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, files=1, height_default=None):
        if files:
            p.add_argument("file", nargs=files, help="JSON input file(s)")
        p.add_argument("--height", type=int, default=height_default,
                       help="truncation height for output tables")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--probe", type=int, default=series_mod.DEFAULT_PROBE_HEIGHT,
                       help="zero-probe height for inversion and comparisons")
        p.add_argument("--jobs", type=int, default=1,
                       help="reserved; computations currently run sequentially")

    p = sub.add_parser("series-mul", help="multiply two series")
    common(p, files=2, height_default=16)
    p.set_defaults(func=cmd_series_mul)

    p = sub.add_parser("series-invert", help="invert a series")
    common(p, files=1, height_default=16)
    p.set_defaults(func=cmd_series_invert)

    p = sub.add_parser("series-eq", help="compare two series below a degree")
    common(p, files=2)
    p.add_argument("--at", required=True, help="comma-separated degree vector")
    p.set_defaults(func=cmd_series_eq)

    p = sub.add_parser("algebra-gdim", help="graded dimension of a quiver algebra")
    common(p)
    p.set_defaults(func=cmd_algebra_gdim)

    p = sub.add_parser("algebra-cartan", help="Cartan matrix of a quiver algebra")
    common(p)
    p.set_defaults(func=cmd_algebra_cartan)

    p = sub.add_parser("algebra-simples", help="inverse Cartan columns (simples via projectives)")
    common(p)
    p.set_defaults(func=cmd_algebra_simples)

    p = sub.add_parser("resolve", help="minimal projective resolution of a simple")
    common(p)
    p.add_argument("vertex", help="vertex label of the simple module")
    p.add_argument("--length", type=int, default=8)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("euler", help="Euler class of a chain complex")
    common(p)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("functor", help="induced matrix of a bimodule functor")
    common(p)
    p.set_defaults(func=cmd_functor)

    p = sub.add_parser("verify-paper", help="check the motivating fraction expansions")
    common(p, files=0, height_default=40)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify_paper)

    return parser


def _configure_logging():
    level = os.environ.get("LAURENT_GROTH_LOG", "quiet").lower()
    levels = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(stream=sys.stderr, level=levels.get(level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def run(argv, out=None) -> int:
    out = out or sys.stdout
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args, out)
    except json.JSONDecodeError as exc:
        sys.stderr.write("error: malformed JSON at line %d column %d: %s\n"
                         % (exc.lineno, exc.colno, exc.msg))
        return 2
    except (UsageError, ValidationError, WeightSearchError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except (TruncationError, ZeroProbeError, SingularConstantTermError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except LaurentGrothError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
