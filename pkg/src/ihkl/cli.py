"""Command-line interface.

Exit codes: 0 success, 1 computation or validation failure, 2 usage
error, 3 internal consistency failure (an invariant the code itself
guarantees was observed broken).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import builders, flagfq, hecke, ih
from .complexes import dump_complex, load_complex, validate
from .coxeter import all_elements, bruhat_leq, parse_element
from .errors import (ComputationError, InternalConsistencyError, UsageError)
from .perversity import parse as parse_perversity


def _load(args):
    if getattr(args, "example", None):
        try:
            return builders.build(args.example)
        except ValueError as e:
            raise UsageError(str(e))
    if getattr(args, "input", None):
        return load_complex(args.input)
    raise UsageError("provide --input FILE or --example NAME")


def _perversity_for(s, text):
    try:
        return parse_perversity(text, max(s.dimension, 2))
    except ComputationError as e:
        raise UsageError(str(e))


def _parse_element(text, n):
    try:
        return parse_element(text, n)
    except ComputationError as e:
        raise UsageError(str(e))


def _emit(args, text_fn, json_obj, csv_rows=None):
    if args.format == "json":
        print(json.dumps(json_obj, indent=1, sort_keys=True))
    elif args.format == "csv":
        if csv_rows is None:
            raise UsageError("csv output not supported for this subcommand")
        out = io.StringIO()
        writer = csv.writer(out)
        for row in csv_rows:
            writer.writerow(row)
        sys.stdout.write(out.getvalue())
    else:
        print(text_fn())


def _dims_line(dims, n):
    return " ".join("%d:%d" % (i, dims.get(i, 0)) for i in range(n + 1))


SUPPORTS = {"bm": "borel_moore", "borel_moore": "borel_moore",
            "compact": "compact"}


def run_ih(args):
    s = _load(args)
    supports = SUPPORTS.get(args.supports)
    if supports is None:
        raise UsageError("unknown supports %r" % args.supports)
    rep = validate(s)
    for name in ("purity", "pseudomanifold", "filtration", "no_codim_1"):
        if not rep.checks[name][0]:
            print(rep.render_text(), file=sys.stderr)
            return 1
    p = _perversity_for(s, args.perversity) if s.dimension >= 2 else None
    dims = ih.ih_dims(s, p, supports, subdivide=args.subdivide)
    rows = [("degree", "dim")] + [(i, dims.get(i, 0)) for i in range(s.dimension + 1)]
    _emit(args,
          lambda: _dims_line(dims, s.dimension),
          {"supports": supports, "perversity": args.perversity,
           "dims": {str(i): dims.get(i, 0) for i in range(s.dimension + 1)}},
          rows)
    return 0


def run_stalks(args):
    s = _load(args)
    vs = {v: v for v in s.ambient.vertices if isinstance(v, str)}
    if args.vertex not in vs:
        raise UsageError("unknown vertex %r" % args.vertex)
    p = _perversity_for(s, args.perversity)
    table = ih.local_stalk_table(s, args.vertex, p)
    _emit(args,
          lambda: " ".join("%d:%d" % (d, table[d]) for d in sorted(table)) or "(zero)",
          {"vertex": args.vertex, "perversity": args.perversity,
           "stalks": {str(d): c for d, c in sorted(table.items())}},
          [("degree", "dim")] + [(d, table[d]) for d in sorted(table)])
    return 0


def run_duality(args):
    s = _load(args)
    p = _perversity_for(s, args.p)
    q = _perversity_for(s, args.q)
    rep = ih.duality_report(s, p, q)
    _emit(args, rep.render_text, rep.to_json())
    return 0 if rep.passed else 1


def run_normalize(args):
    s = _load(args)
    out = ih.normalize_isolated(s)
    dump_complex(out, args.output)
    print("wrote %s" % args.output)
    return 0


def run_validate(args):
    s = _load(args)
    rep = validate(s)
    _emit(args, rep.render_text, rep.to_json())
    return 0 if rep.ok else 1


def run_kl(args):
    n = args.rank
    if args.element:
        w = _parse_element(args.element, n)
        alg = {"bs": "bott_samelson", "recursion": "recursion"}.get(
            args.algorithm, "bott_samelson")
        res = hecke.cprime(w, algorithm=alg)
        us = sorted(res.kl_polys, key=lambda u: (u.length(), u.word))

        def text():
            lines = ["P[%s,%s] = %s" % (u, w, res.kl_polys[u].format("q"))
                     for u in us]
            lines.append("C' = %s" % res.cprime.format())
            return "\n".join(lines)

        _emit(args, text,
              {"w": str(w),
               "kl": {str(u): {str(e): c for e, c in res.kl_polys[u].coeffs.items()}
                      for u in us},
               "cprime": res.cprime.format()},
              [("u", "w", "P")] + [(str(u), str(w), res.kl_polys[u].format("q"))
                                   for u in us])
        return 0

    algorithm = {"bs": "bott_samelson", "recursion": "recursion",
                 "both": "both"}.get(args.algorithm)
    if algorithm is None:
        raise UsageError("unknown algorithm %r" % args.algorithm)
    table = hecke.kl_table(n, algorithm)
    if args.interval:
        parts = args.interval.split(",")
        if len(parts) != 2:
            raise UsageError("--interval wants U,W")
        u0, w0 = (_parse_element(t, n) for t in parts)
        if not bruhat_leq(u0, w0):
            raise ComputationError("%s is not below %s in Bruhat order" % (u0, w0))
        table = {(u, w): p for (u, w), p in table.items()
                 if bruhat_leq(u0, u) and bruhat_leq(w, w0)}
    keys = sorted(table, key=lambda k: (k[1].length(), k[1].word,
                                        k[0].length(), k[0].word))

    def text():
        lines = ["P[%s,%s] = %s" % (u, w, table[(u, w)].format("q"))
                 for u, w in keys]
        if algorithm == "both":
            lines.append("AGREE (%d pairs)" % len(table))
        return "\n".join(lines)

    _emit(args, text,
          {"rank": n, "algorithm": algorithm, "pairs": len(table),
           "kl": {"%s,%s" % (u, w): {str(e): c
                                     for e, c in table[(u, w)].coeffs.items()}
                  for u, w in keys}},
          [("u", "w", "P")] + [(str(u), str(w), table[(u, w)].format("q"))
                               for u, w in keys])
    return 0


def run_flagcheck(args):
    if args.q < 2 or any(args.q % d == 0 for d in range(2, args.q)):
        raise UsageError("%d is not prime" % args.q)
    rep = flagfq.verify_hecke_specialization(args.n, args.q, force=args.force)
    _emit(args, rep.render_text, rep.to_json())
    return 0 if rep.passed else 1


def run_bruhat(args):
    parts = args.leq.split(",")
    if len(parts) != 2:
        raise UsageError("--leq wants U,W")
    u, w = (_parse_element(t, args.rank) for t in parts)
    ans = bruhat_leq(u, w)
    _emit(args, lambda: "true" if ans else "false",
          {"u": str(u), "w": str(w), "leq": ans})
    return 0


def _parse_hecke_expr(text, n):
    total = None
    for part in text.split("+"):
        part = part.strip()
        if ":" not in part:
            raise UsageError("cannot parse Hecke term %r (want T:W or Cp:W)" % part)
        kind, elt = part.split(":", 1)
        w = _parse_element(elt, n)
        if kind == "T":
            term = hecke.HeckeElement.t(w)
        elif kind == "Cp":
            term = hecke.cprime(w).cprime
        else:
            raise UsageError("unknown Hecke term kind %r" % kind)
        total = term if total is None else total + term
    if total is None:
        raise UsageError("empty Hecke expression")
    return total


def run_hecke_mul(args):
    a = _parse_hecke_expr(args.left, args.rank)
    b = _parse_hecke_expr(args.right, args.rank)
    prod = hecke.t_mul(a, b)
    _emit(args, prod.format,
          {"left": args.left, "right": args.right,
           "product": {str(w): {str(e): c for e, c in p.coeffs.items()}
                       for w, p in prod.terms.items()}})
    return 0


def run_example_export(args):
    try:
        s = builders.build(args.name)
    except ValueError as e:
        raise UsageError(str(e))
    dump_complex(s, args.output)
    print("wrote %s" % args.output)
    return 0


def run_examples(args):
    for name in sorted(builders.BUILDERS):
        print(name)
    return 0


def _add_complex_source(sp):
    sp.add_argument("--input", help="complex JSON file")
    sp.add_argument("--example", help="built-in example name")


def _add_format(sp):
    sp.add_argument("--format", default="text", choices=("text", "json", "csv"))


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ihkl",
        description="intersection homology and Kazhdan-Lusztig toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ih", help="intersection homology dimensions")
    _add_complex_source(sp)
    sp.add_argument("--perversity", default="middle")
    sp.add_argument("--supports", default="bm")
    sp.add_argument("--subdivide", type=int, default=0)
    _add_format(sp)
    sp.set_defaults(func=run_ih)

    sp = sub.add_parser("stalks", help="local stalk table at a vertex")
    _add_complex_source(sp)
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--perversity", default="middle")
    _add_format(sp)
    sp.set_defaults(func=run_stalks)

    sp = sub.add_parser("duality", help="duality dimension report")
    _add_complex_source(sp)
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    _add_format(sp)
    sp.set_defaults(func=run_duality)

    sp = sub.add_parser("normalize", help="split isolated singular points")
    _add_complex_source(sp)
    sp.add_argument("--output", required=True)
    _add_format(sp)
    sp.set_defaults(func=run_normalize)

    sp = sub.add_parser("validate", help="structural checks on a complex")
    _add_complex_source(sp)
    _add_format(sp)
    sp.set_defaults(func=run_validate)

    sp = sub.add_parser("kl", help="Kazhdan-Lusztig polynomials")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--element")
    sp.add_argument("--interval")
    sp.add_argument("--algorithm", default="both",
                    choices=("bs", "recursion", "both"))
    _add_format(sp)
    sp.set_defaults(func=run_kl)

    sp = sub.add_parser("flagcheck", help="Hecke vs finite-field convolution")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--force", action="store_true")
    _add_format(sp)
    sp.set_defaults(func=run_flagcheck)

    sp = sub.add_parser("bruhat", help="Bruhat order comparison")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--leq", required=True)
    _add_format(sp)
    sp.set_defaults(func=run_bruhat)

    sp = sub.add_parser("hecke-mul", help="multiply Hecke elements")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    _add_format(sp)
    sp.set_defaults(func=run_hecke_mul)

    sp = sub.add_parser("example-export", help="write a built-in example to JSON")
    sp.add_argument("--name", required=True)
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=run_example_export)

    sp = sub.add_parser("examples", help="list built-in example names")
    sp.set_defaults(func=run_examples)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2
    except InternalConsistencyError as e:
        print("internal consistency error: %s" % e, file=sys.stderr)
        return 3
    except ComputationError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
