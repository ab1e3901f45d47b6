"""Command-line front end: exact computations in, JSON artifacts out.

Results go to stdout (or ``--out``) as canonical JSON.  Exit status is 0
on success, 1 when a computation hits a domain error (degeneracy,
stagnation, an unbalanced graph, ...), and 2 for usage errors such as
unknown flags or malformed input files.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import checks, contact, mesh, quadric, sampling, serialize, tropical
from .errors import TroplegError
from .fields import QQ, PrimeField
from .series import TruncatedSeries

NEG_INF = float("-inf")


# ----------------------------------------------------------------------
# flag parsing helpers (argparse `type=` callables raise ValueError)
# ----------------------------------------------------------------------

def _field_arg(text: str):
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        try:
            return PrimeField(int(text[3:]))
        except TroplegError as exc:          # non-prime modulus is a usage error
            raise ValueError(str(exc))
    raise ValueError(f"unknown field {text!r} (use q or fp:<prime>)")


def _trunc_arg(text: str):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError("--trunc wants <lo>:<hi>")
    lo, hi = int(lo), int(hi)
    if lo >= hi:
        raise ValueError("--trunc window is empty")
    return (lo, hi)


def _bbox_arg(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--bbox wants x0:x1,y0:y1,z0:z1")
    box = []
    for part in parts:
        lo, sep, hi = part.partition(":")
        if not sep:
            raise ValueError("--bbox wants x0:x1,y0:y1,z0:z1")
        box.append((Fraction(lo), Fraction(hi)))
    return tuple(box)


def _form_arg(text: str):
    vals = [Fraction(v) for v in text.split(",")]
    if len(vals) != 6:
        raise ValueError("--form wants six values p,q,r,a,b,c")
    return vals


def _window(series: TruncatedSeries, trunc):
    if trunc is None:
        return series
    lo, hi = trunc
    return TruncatedSeries.from_terms(series.field, list(series.items()), lo, hi)


def _input_points(args, count=3):
    pts = serialize.parse_points(args.points, args.field)
    if len(pts) != count:
        raise ValueError(f"expected {count} points, got {len(pts)}")
    trunc = getattr(args, "trunc", None)
    if trunc is not None:
        pts = [tuple(_window(c, trunc) for c in p) for p in pts]
    return pts


def _numeric_triples(text: str):
    out = []
    for chunk in text.split(";"):
        coords = [Fraction(v) for v in chunk.split(",")]
        if len(coords) != 3:
            raise ValueError(f"expected x,y,z in {chunk!r}")
        out.append(tuple(coords))
    return out


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _scalar(value) -> str:
    return str(value)


def _chart(value):
    return None if value == NEG_INF else value


def _trace_json(trace):
    # (iteration, correction monomial, residual degree) triples
    out = []
    for it, d1, _d2, step in trace:
        mono = None if step is None else f"t^{step}"
        out.append([it, mono, _chart(d1)])
    return out


# ----------------------------------------------------------------------
# subcommand bodies
# ----------------------------------------------------------------------

def _make_form(field, vals) -> contact.ContactForm:
    p, q, r, a, b, c = vals
    return contact.ContactForm(field, p=p, q=q, r=r, a=a, b=b, c=c)


def _cmd_contact_check(args):
    form = _make_form(args.field, args.form)
    return {
        "coefficients": {k: _scalar(getattr(form, k)) for k in "pqrabc"},
        "contact_value": _scalar(form.contact_value()),
        "is_contact": form.is_contact(),
    }


def _cmd_contact_transform(args):
    pts = _input_points(args)
    matrix = contact.transformation(*pts, args.field)
    return serialize.matrix_to_json(matrix)


def _cmd_contact_cubic_family(args):
    if args.points:
        curve = sampling.transformed_family(*_input_points(args), args.field)
    else:
        curve = contact.cubic_pencil_curve(args.field)
    out = serialize.curve_to_json(curve)
    out["contact_residual_zero"] = contact.contact_eval(curve).is_zero()
    return out


def _cmd_contact_cubics_through_line(args):
    vals = [Fraction(v) for v in args.line.split(",")]
    if len(vals) != 6:
        raise ValueError("--line wants p1,q1,p2,q2,p3,q3")
    res = contact.cubics_through_line(*vals, field=args.field)
    return {
        "coefficients": [_scalar(c) for c in res.coefficients],
        "count": res.count,
        "solutions": [{"t": _scalar(s.t), "c": _scalar(s.c), "mu": _scalar(s.mu)}
                      for s in res.solutions],
        "flagged": [[_scalar(t), why] for t, why in res.flagged],
        "irreducible_remainder": res.irreducible_remainder,
        "line_is_legendrian": res.line_is_legendrian,
    }


def _cmd_quadric_classify(args):
    form = _make_form(args.field, args.form)
    return serialize.classification_to_json(quadric.classify_quadric_curve(form))


def _cmd_trop_surface(args):
    pts = _input_points(args)
    f = tropical.tropical_surface_pipeline(*pts, args.field)
    return serialize.tropical_poly_to_json(f)


def _cmd_trop_eval(args):
    f = serialize.tropical_poly_from_json(_load_json(args.poly))
    pt = tuple(Fraction(v) for v in args.at.split(","))
    value, argmax = tropical.trop_eval(f, pt)
    return {"value": _scalar(value), "argmax": list(argmax),
            "on_corner_locus": len(argmax) >= 2}


def _cell_json(cell):
    normal, const = cell.equality
    return {
        "indices": list(cell.indices),
        "equality": {"normal": list(normal), "const": _scalar(const)},
        "inequalities": [{"vector": list(v), "const": _scalar(c)}
                         for v, c in cell.inequalities],
        "vertices": [[_scalar(x) for x in p] for p in cell.vertices],
        "dim": cell.dim,
    }


def _cmd_trop_cells(args):
    f = serialize.tropical_poly_from_json(_load_json(args.poly))
    cells = tropical.corner_locus_cells(f, args.bbox)
    return {"cells": [_cell_json(c) for c in cells]}


def _family_component(args):
    fam = sampling.transformed_family(*_input_points(args), args.field)
    m0 = _window(serialize.parse_series(args.m, args.field),
                 getattr(args, "trunc", None))
    return fam, m0


def _cmd_sample_newton(args):
    fam, m0 = _family_component(args)
    curve = fam.subs_m(m0)
    comp = dict(zip(sampling.AXES, curve.components))[args.axis]
    seed = sampling.NewtonSeed(serialize.parse_series(args.seed, args.field),
                               args.steps)
    root, trace = sampling.newton_root_with_trace(comp, seed)
    return {
        "axis": args.axis,
        "root": serialize.series_to_json(root),
        "residual_degree": _chart(sampling.residual_degree(comp, root)),
        "trace": _trace_json(trace),
    }


def _cmd_sample_point(args):
    fam, m0 = _family_component(args)
    s1 = serialize.parse_series(args.s, args.field)
    sp = sampling.sample_point(s1, m0, fam, axis=args.axis)
    return {"axis": sp.axis, "point": [_chart(v) for v in sp.point]}


def _cmd_sample_sweep(args):
    fam, m0 = _family_component(args)
    lo, hi = args.exponents
    exps = list(range(lo, hi + 1))
    coeff = Fraction(args.coeff)
    samples = sampling.sweep(fam, m0, exps, coeff=coeff)
    return {"samples": [{"exponent": e, "point": [_chart(v) for v in sp.point]}
                        for e, sp in zip(exps, samples)]}


def _cmd_check_tangency(args):
    graph = serialize.graph_from_json(_load_json(args.curve))
    verdicts = checks.check_tangency(graph)
    return {
        "balanced": True,
        "all_ok": all(v.ok for v in verdicts),
        "verdicts": [{"item": list(v.item), "region": v.region,
                      "direction": list(v.direction), "ok": v.ok,
                      "rule": v.rule} for v in verdicts],
    }


def _divisibility_json(rep):
    return {
        "edge": rep.edge,
        "pattern": rep.pattern,
        "k": rep.k,
        "l": rep.l,
        "p": rep.p,
        "point": [_scalar(c) for c in rep.point],
        "residual": _scalar(rep.residual),
        "ok": rep.ok,
        "ambiguous": rep.ambiguous,
        "notes": list(rep.notes),
    }


def _cmd_check_divisibility(args):
    graph = serialize.graph_from_json(_load_json(args.curve))
    if args.edge is not None:
        idxs = [args.edge]
    else:
        idxs = [i for i in range(len(graph.edges))
                if checks.classify_edge(graph, ("edge", i)) == checks.CROSSING]
        if not idxs:
            raise ValueError("no crossing edges found; pass --edge to force one")
    reports = [checks.check_divisibility(graph, i) for i in idxs]
    return {"all_ok": all(r.ok for r in reports),
            "reports": [_divisibility_json(r) for r in reports]}


def _cmd_build_line(args):
    graph, lift = checks.build_legendrian_line(args.family, args.a, args.b, args.x)
    out = {"graph": serialize.graph_to_json(graph),
           "lift": serialize.curve_to_json(lift),
           "legendrian": contact.contact_eval(lift).is_zero()}
    return out


def _cmd_export_mesh(args):
    f = serialize.tropical_poly_from_json(_load_json(args.poly))
    cells = tropical.corner_locus_cells(f, args.bbox)
    points = _numeric_triples(args.points) if args.points else ()
    polyline = _numeric_triples(args.polyline) if args.polyline else ()
    prefix = args.out or "mesh"
    m = mesh.export_mesh(cells, args.bbox, points=points, polyline=polyline,
                         out=prefix)
    summary = {
        "files": [prefix + ext for ext in (".obj", ".json", ".png")],
        "vertices": len(m.vertices),
        "faces": len(m.faces),
        "polygons": len(m.polygons),
        "points": len(m.points),
        "polyline": len(m.polyline),
        "empty": m.is_empty(),
    }
    sys.stdout.write(serialize.dumps(summary))
    return None


# ----------------------------------------------------------------------
# parser assembly and dispatch
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropleg",
        description="Exact legendrian-curve computations and their "
                    "max-plus shadows.")
    parser.add_argument("--verbose", action="store_true",
                        help="log internal steps (pivot choices etc.)")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=QQ,
                        help="coefficient field: q or fp:<prime>")
    common.add_argument("--trunc", type=_trunc_arg, default=None,
                        help="truncation window <lo>:<hi> for input series")
    common.add_argument("--out", default=None,
                        help="write the JSON result here instead of stdout")

    pc = sub.add_parser("contact", help="contact forms and normalising maps")
    pcs = pc.add_subparsers(dest="verb", required=True)
    g = pcs.add_parser("check", parents=[common])
    g.add_argument("--form", type=_form_arg, required=True,
                   help="six coefficients p,q,r,a,b,c")
    g.set_defaults(func=_cmd_contact_check)
    g = pcs.add_parser("transform", parents=[common])
    g.add_argument("--points", required=True,
                   help="three series points 'x,y,z[,w];...'")
    g.set_defaults(func=_cmd_contact_transform)
    g = pcs.add_parser("cubic-family", parents=[common])
    g.add_argument("--points", default=None,
                   help="optional three points to carry the family through")
    g.set_defaults(func=_cmd_contact_cubic_family)
    g = pcs.add_parser("cubics-through-line", parents=[common])
    g.add_argument("--line", required=True,
                   help="chart line (T, p1+q1 T, p2+q2 T, p3+q3 T) as p1,q1,p2,q2,p3,q3")
    g.set_defaults(func=_cmd_contact_cubics_through_line)

    pq = sub.add_parser("quadric", help="curves on the invariant quadric")
    pqs = pq.add_subparsers(dest="verb", required=True)
    g = pqs.add_parser("classify", parents=[common])
    g.add_argument("--form", type=_form_arg, required=True)
    g.set_defaults(func=_cmd_quadric_classify)

    pt = sub.add_parser("trop", help="max-plus surfaces and corner loci")
    pts = pt.add_subparsers(dest="verb", required=True)
    g = pts.add_parser("surface", parents=[common])
    g.add_argument("--points", required=True)
    g.set_defaults(func=_cmd_trop_surface)
    g = pts.add_parser("eval", parents=[common])
    g.add_argument("--poly", required=True, help="polynomial JSON file")
    g.add_argument("--at", required=True, help="point X,Y,Z")
    g.set_defaults(func=_cmd_trop_eval)
    g = pts.add_parser("cells", parents=[common])
    g.add_argument("--poly", required=True)
    g.add_argument("--bbox", type=_bbox_arg, required=True)
    g.set_defaults(func=_cmd_trop_cells)

    ps = sub.add_parser("sample", help="Newton roots and curve samples")
    pss = ps.add_subparsers(dest="verb", required=True)
    g = pss.add_parser("newton", parents=[common])
    g.add_argument("--points", required=True)
    g.add_argument("--m", required=True, help="pencil parameter, e.g. t^2")
    g.add_argument("--axis", choices=sampling.AXES, required=True)
    g.add_argument("--seed", required=True, help="starting series, e.g. t^-18")
    g.add_argument("--steps", type=int, default=10)
    g.set_defaults(func=_cmd_sample_newton)
    g = pss.add_parser("point", parents=[common])
    g.add_argument("--points", required=True)
    g.add_argument("--m", required=True)
    g.add_argument("--s", required=True, help="parameter value as a series")
    g.add_argument("--axis", choices=sampling.AXES, default=None)
    g.set_defaults(func=_cmd_sample_point)
    g = pss.add_parser("sweep", parents=[common])
    g.add_argument("--points", required=True)
    g.add_argument("--m", required=True)
    g.add_argument("--exponents", type=_trunc_arg, required=True,
                   help="inclusive exponent range <lo>:<hi> for s = c*t^i")
    g.add_argument("--coeff", default="1")
    g.set_defaults(func=_cmd_sample_sweep)

    pk = sub.add_parser("check", help="necessary conditions on tropical curves")
    pks = pk.add_subparsers(dest="verb", required=True)
    g = pks.add_parser("tangency", parents=[common])
    g.add_argument("--curve", required=True, help="curve graph JSON file")
    g.set_defaults(func=_cmd_check_tangency)
    g = pks.add_parser("divisibility", parents=[common])
    g.add_argument("--curve", required=True)
    g.add_argument("--edge", type=int, default=None,
                   help="edge index (default: every crossing edge)")
    g.set_defaults(func=_cmd_check_divisibility)

    pb = sub.add_parser("build", help="constructive tropical examples")
    pbs = pb.add_subparsers(dest="verb", required=True)
    g = pbs.add_parser("line", parents=[common])
    g.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    g.add_argument("--a", type=int, default=0)
    g.add_argument("--b", type=int, default=0)
    g.add_argument("--x", type=int, default=1, help="edge length >= 0")
    g.set_defaults(func=_cmd_build_line)

    g = sub.add_parser("export-mesh", parents=[common],
                       help="clip corner-locus cells and write OBJ/JSON/PNG")
    g.add_argument("--poly", required=True)
    g.add_argument("--bbox", type=_bbox_arg, required=True)
    g.add_argument("--points", default=None, help="marked points 'x,y,z;...'")
    g.add_argument("--polyline", default=None)
    g.set_defaults(func=_cmd_export_mesh)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG)
    try:
        payload = args.func(args)
    except TroplegError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        trace = getattr(exc, "trace", None)
        if trace:
            err["trace"] = _trace_json(trace)
        sys.stderr.write(serialize.dumps(err))
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"tropleg: {exc}\n")
        return 2
    if payload is not None:
        text = serialize.dumps(payload)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
