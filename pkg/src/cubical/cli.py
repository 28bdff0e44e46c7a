"""Command-line interface.

Every subcommand reads its inputs, calls the library, and prints one JSON
document on standard output. Exit codes: 0 success, 1 domain error, 2 parse
or usage error.
"""

import argparse
import json
import math
import sys
from fractions import Fraction

from . import actions, barycentre, constructions, cross_ratios, duality, geodesics, median_ops
from .errors import CubicalError, InvalidComplex, ParseError
from .io import (
    complex_document,
    format_weight,
    parse_automorphism,
    parse_complex,
    parse_wallspace,
    parse_weight,
    serialize_complex,
)
from .pocset import Halfspace, parse_halfspace


# -- helpers -------------------------------------------------------------------


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(e.strerror, path) from None


def _number(x):
    """JSON spelling of a value: ints stay ints, fractions become decimal strings."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return format_weight(x) if x > 0 else "-" + format_weight(-x)
    return x


def _jsonable(w):
    if isinstance(w, Halfspace):
        return str(w)
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    return _number(w)


def _index_list(text, where):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated indices, got {text!r}", where) from None


def _halfspaces(text, where):
    try:
        return [parse_halfspace(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise ParseError(str(e), where) from None


def _load_complex(args, path=None, validate=True):
    X = parse_complex(_read(path or args.input))
    if getattr(args, "weights", None):
        ws = args.weights.split(",")
        if len(ws) != X.n:
            raise ParseError(f"{len(ws)} weights for {X.n} hyperplanes", "--weights")
        X = X.with_weights([parse_weight(w, "--weights") for w in ws])
    if validate:
        report = duality.validate_complex(X.n, X.vertices)
        if not report.valid:
            v = report.violations[0]
            raise InvalidComplex(f"{v.kind}: {v.message}", v.witness)
    return X


def _emit_complex(args, X):
    text = serialize_complex(X)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return complex_document(X)


def _bits_mask(mask, n):
    return [i for i in range(n) if mask >> i & 1]


# -- commands ------------------------------------------------------------------


def cmd_validate(args):
    X = parse_complex(_read(args.input))
    report = duality.validate_complex(X.n, X.vertices)
    out = {
        "valid": report.valid,
        "n_hyperplanes": report.n,
        "n_vertices": report.n_vertices,
        "violations": [
            {"kind": v.kind, "message": v.message, "witness": v.witness} for v in report.violations
        ],
    }
    return out, 0 if report.valid else 1


def cmd_dual(args):
    if args.relations is not None:
        if args.n is None:
            raise ParseError("--relations needs --n", "--n")
        rels = []
        for item in args.relations.split(","):
            if not item.strip():
                continue
            if "<=" not in item:
                raise ParseError(f"relation {item!r} should look like '0+<=1+'", "--relations")
            a, b = item.split("<=")
            rels.append((parse_halfspace(a), parse_halfspace(b)))
        X = duality.complex_from_pocset(rels, args.n)
    else:
        if not args.input:
            raise ParseError("give --in WALLSPACE or --relations", "--in")
        ws, base = parse_wallspace(_read(args.input))
        X = duality.complex_from_wallspace(ws, base)
    return _emit_complex(args, X)


def cmd_pocset(args):
    X = _load_complex(args)
    rels = duality.pocset_of_complex(X)
    return {"relations": [f"{h}<={k}" for h, k in rels]}


def cmd_median(args):
    X = _load_complex(args)
    return {"median": X.bits(median_ops.median(X, *args.vertices))}


def cmd_interval(args):
    X = _load_complex(args)
    I = median_ops.interval(X, args.u, args.v)
    return {"vertices": sorted(X.bits(z) for z in I)}


def cmd_gate(args):
    X = _load_complex(args)
    if args.hull:
        C = median_ops.hull(X, [s for s in args.hull.split(",") if s])
    elif args.halfspaces:
        C = median_ops.convex_set(X, _halfspaces(args.halfspaces, "--halfspaces"))
    else:
        raise ParseError("give --halfspaces or --hull", "--halfspaces")
    g = median_ops.gate(X, C, args.x)
    return {
        "gate": X.bits(g),
        "distance": _number(median_ops.distance_to_set(X, args.x, C)),
        "separating": _bits_mask(median_ops.separating_from_set(X, X.vertex(args.x), C), X.n),
    }


def cmd_bridge(args):
    X = _load_complex(args)
    h, k = parse_halfspace(args.h), parse_halfspace(args.k)
    b = median_ops.bridge(X, h, k)
    return {
        "gap": _number(b.gap),
        "strongly_separated": not b.transverse_to_both,
        "transverse_to_both": list(b.transverse_to_both),
        "bridge": sorted(X.bits(v) for v in b.bridge),
        "shore_h": sorted(X.bits(v) for v in b.shore_h),
        "shore_k": sorted(X.bits(v) for v in b.shore_k),
    }


def cmd_crossratio(args):
    X = _load_complex(args)
    if args.restrict:
        U = _index_list(args.restrict, "--restrict")
        value = cross_ratios.cross_ratio_restricted(X, U, *args.vertices)
    else:
        value = cross_ratios.cross_ratio(X, *args.vertices, allow_degenerate=args.allow_degenerate)
    return {"cross_ratio": _number(value)}


def cmd_subdivide(args):
    X = _load_complex(args)
    return _emit_complex(args, constructions.subdivide(X, preserve_metric=args.preserve_metric))


def cmd_squarise(args):
    return _emit_complex(args, constructions.squarise(_load_complex(args)))


def cmd_hedgehog(args):
    X = _load_complex(args)
    return _emit_complex(args, constructions.hedgehog(X, args.attach))


def cmd_quotient(args):
    X = _load_complex(args)
    q = constructions.restriction_quotient(X, _index_list(args.restrict, "--restrict"))
    _emit_complex(args, q.quotient)
    return {
        "hyperplanes": list(q.U),
        "quotient": complex_document(q.quotient),
        "map": {X.bits(v): q.quotient.bits(w) for v, w in q.vertex_map().items()},
    }


def cmd_dualtree(args):
    X = _load_complex(args)
    tree, q = constructions.dual_tree(X, args.w)
    out = {
        "class": list(q.U),
        "tree": complex_document(tree.complex),
        "map": {X.bits(v): tree.complex.bits(w) for v, w in q.vertex_map().items()},
    }
    if args.x is not None and args.y is not None:
        out["delta"] = _number(constructions.delta_pseudo_metric(X, args.w, args.x, args.y))
    return out


def cmd_barycentre(args):
    X = _load_complex(args)
    r = barycentre.median_barycentre(X)
    sub_n = 2 * X.n
    sub_bits = format(r.centre, f"0{sub_n}b")[::-1] if sub_n else ""
    return {
        "barycentre": X.bits(r.vertex) if r.is_vertex else sub_bits,
        "is_vertex": r.is_vertex,
        "subdivision_vertex": sub_bits,
        "coordinates": [_number(t) for t in r.coordinates],
        "balanced": list(r.balanced),
        "heavy": [str(h) for h in r.heavy_halfspaces],
        "depths": [[_number(a), _number(b)] for a, b in r.depths],
    }


def cmd_geodesics(args):
    X = _load_complex(args)
    gs = geodesics.enumerate_geodesics(X, args.u, args.v)
    return {
        "count": len(gs),
        "geodesics": [
            {"vertices": [X.bits(v) for v in g.vertices], "sequence": list(g.sequence)} for g in gs
        ],
    }


def cmd_lean(args):
    X = _load_complex(args)
    if args.sequence is not None:
        if len(args.path) != 1:
            raise ParseError("--sequence takes exactly one base vertex", "path")
        gamma = geodesics.geodesic_from_sequence(X, args.path[0], _index_list(args.sequence, "--sequence"))
    else:
        gamma = geodesics.geodesic_from_path(X, args.path)
    return {
        "constant": geodesics.leanness_constant(X, gamma),
        "vertices": [X.bits(v) for v in gamma.vertices],
        "sequence": list(gamma.sequence),
    }


def cmd_factors(args):
    X = _load_complex(args)
    classes = duality.factor_classes(X)
    return {
        "factors": [
            {"hyperplanes": list(c), "complex": complex_document(duality.restrict(X, c)[0])}
            for c in classes
        ]
    }


def cmd_iso(args):
    X = _load_complex(args, args.a)
    Y = _load_complex(args, args.b)
    r = actions.is_isomorphic(X, Y)
    out = {"isomorphic": r.isomorphic}
    if r.isomorphic:
        out["halfspace_map"] = r.witness.halfspace_map
        out["vertex_map"] = {X.bits(v): Y.bits(w) for v, w in r.witness.vertex_map(X).items()}
    else:
        out["reason"] = r.reason
    return out


def cmd_displacement(args):
    X = _load_complex(args)
    if args.auto:
        g = actions.automorphism_from_halfspace_map(X, parse_automorphism(_read(args.auto)))
    else:
        g = actions.Automorphism.identity(X.n)
    r = actions.displacement(X, g)
    sub_n = 2 * X.n
    return {
        "length": _number(r.length),
        "profile": {
            (format(v, f"0{sub_n}b")[::-1] if sub_n else ""): _number(d)
            for v, d in sorted(r.profile.items())
        },
    }


def cmd_check_essential(args):
    X = _load_complex(args)
    prof = actions.essential_depths(X)
    failing = prof.failing(args.depth)
    hfail = actions.hyperplane_essential_failures(X, args.depth)
    return {
        "depth": args.depth,
        "depths": [[_number(a), _number(b)] for a, b in prof.depths],
        "essential": not failing,
        "failing": list(failing),
        "hyperplane_essential": not hfail,
        "hyperplane_failing": {str(w): list(v) for w, v in sorted(hfail.items())},
    }


# -- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, "arguments")


def build_parser():
    p = _Parser(prog="cubical", description="Finite CAT(0) cube complexes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, func, help, complex_input=True, out=False):
        s = sub.add_parser(name, help=help)
        if complex_input:
            s.add_argument("--in", dest="input", required=True, metavar="FILE")
            s.add_argument("--weights", help="comma-separated edge lengths overriding the document")
        if out:
            s.add_argument("--out", metavar="FILE", help="also write the complex document here")
        s.set_defaults(func=func)
        return s

    cmd("validate", cmd_validate, "check the CAT(0) certificate of a vertex set")

    s = cmd("dual", cmd_dual, "Sageev's construction", complex_input=False, out=True)
    s.add_argument("--in", dest="input", metavar="WALLSPACE")
    s.add_argument("--relations", help="pocset relations such as '0+<=1+,2-<=0-'")
    s.add_argument("--n", type=int, help="hyperplane count for --relations")

    cmd("pocset", cmd_pocset, "covering relations of the halfspace order")

    s = cmd("median", cmd_median, "median of three vertices")
    s.add_argument("vertices", nargs=3)

    s = cmd("interval", cmd_interval, "vertices on geodesics between u and v")
    s.add_argument("u")
    s.add_argument("v")

    s = cmd("gate", cmd_gate, "gate projection onto a convex set")
    s.add_argument("x")
    s.add_argument("--halfspaces", help="intersection of halfspaces, e.g. '0+,2-'")
    s.add_argument("--hull", help="convex hull of comma-separated vertices")

    s = cmd("bridge", cmd_bridge, "bridge and shores of two disjoint halfspaces")
    s.add_argument("h")
    s.add_argument("k")

    s = cmd("crossratio", cmd_crossratio, "cross ratio of four vertices")
    s.add_argument("vertices", nargs=4)
    s.add_argument("--restrict", help="count only these hyperplanes, e.g. '0,2'")
    s.add_argument("--allow-degenerate", action="store_true")

    s = cmd("subdivide", cmd_subdivide, "first cubical subdivision", out=True)
    s.add_argument("--preserve-metric", action="store_true")

    cmd("squarise", cmd_squarise, "double every wall into a crossing pair", out=True)

    s = cmd("hedgehog", cmd_hedgehog, "attach pendant edges", out=True)
    s.add_argument("attach", nargs="+")

    s = cmd("quotient", cmd_quotient, "restriction quotient", out=True)
    s.add_argument("--restrict", required=True)

    s = cmd("dualtree", cmd_dualtree, "dual tree of a hyperplane")
    s.add_argument("w", type=int)
    s.add_argument("x", nargs="?")
    s.add_argument("y", nargs="?")

    cmd("barycentre", cmd_barycentre, "median barycentre")

    s = cmd("geodesics", cmd_geodesics, "all geodesics between two vertices")
    s.add_argument("u")
    s.add_argument("v")

    s = cmd("lean", cmd_lean, "leanness constant of a geodesic")
    s.add_argument("path", nargs="+", help="vertex path, or a base vertex with --sequence")
    s.add_argument("--sequence", help="hyperplane sequence from the base vertex")

    cmd("factors", cmd_factors, "De Rham decomposition")

    s = cmd("iso", cmd_iso, "isomorphism test", complex_input=False)
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--weights", help=argparse.SUPPRESS)

    s = cmd("displacement", cmd_displacement, "displacement over the subdivision")
    s.add_argument("--auto", metavar="FILE", help="automorphism document (default identity)")

    s = cmd("check-essential", cmd_check_essential, "side depths and essentiality")
    s.add_argument("--depth", type=int, default=1)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
        code = 0
        if isinstance(result, tuple):
            result, code = result
        sys.stdout.write(json.dumps(result, indent=2, ensure_ascii=False) + "\n")
        return code
    except (ParseError, ValueError) as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 2
    except CubicalError as e:
        doc = {"error": type(e).__name__, "message": str(e)}
        if e.witness is not None:
            doc["witness"] = _jsonable(e.witness)
        sys.stderr.write(json.dumps(doc, default=str) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
