"""Command-line front door: build, classify, measure, verify.

All outputs are deterministic: JSON is emitted with sorted keys and no
timestamps; csv/dot artifacts carry a one-line static header that
``--no-header`` suppresses.  Exit codes: 0 success, 1 check failure,
2 usage error, 3 resource budget exceeded.
"""

import argparse
import json
import math
import sys

from .autsearch import search_result
from .geometry import classify_type, space_make
from .gf import parse_field
from .graph import BudgetExceeded, build_graph, graph_to_dot, graph_to_json
from .symmetry import PermGroup, aut_order_formula, po_e_generators, vertex_orbits
from .verify import VERSION, run_suite

EXIT_OK = 0
EXIT_CHECK_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _add_space_flags(p):
    p.add_argument("--nu", type=int, required=True, help="Witt index of the ambient space")
    p.add_argument("--delta", type=int, default=0, choices=(0, 1, 2), help="anisotropic defect")
    p.add_argument("--disc", default="one", choices=("one", "z"), help="discriminant class for delta=1")
    p.add_argument("--field", required=True, help="field order: q or p^e, odd characteristic")
    p.add_argument("--modulus", default=None, help="extension modulus, little-endian comma coefficients")
    p.add_argument("--budget", type=int, default=None, help="vertex budget override")


def _add_output_flags(p, formats):
    p.add_argument("--format", choices=formats, default=None, help="artifact format")
    p.add_argument("--out", default=None, metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("--no-header", action="store_true", help="suppress csv/dot header lines")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="oigraph",
        description="orthogonal inner product graphs: construction, census, symmetry, verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a graph and export it")
    _add_space_flags(p)
    _add_output_flags(p, ("json", "dot"))

    p = sub.add_parser("classify", help="census of vertex types")
    _add_space_flags(p)
    p.add_argument("--dim", type=int, default=None, help="restrict to one vertex dimension")
    _add_output_flags(p, ("json", "csv"))

    p = sub.add_parser("orbits", help="vertex orbits of the generated symmetry group")
    _add_space_flags(p)
    _add_output_flags(p, ("json", "csv"))

    p = sub.add_parser("diameter", help="graph diameter")
    _add_space_flags(p)
    _add_output_flags(p, ("json",))

    p = sub.add_parser("aut", help="automorphism group order")
    _add_space_flags(p)
    p.add_argument(
        "--method",
        choices=("generated", "formula", "search"),
        default="generated",
        help="generated: reflection+semilinear stabilizer chain; formula: closed form; search: independent backtracking",
    )
    _add_output_flags(p, ("json",))

    p = sub.add_parser("verify", help="run the claim-verification suite")
    p.add_argument("--suite", default="core", help="core or extended")
    p.add_argument("--budget", type=int, default=None, help="vertex budget override")
    p.add_argument("--threads", type=int, default=1, help="worker threads for independent checks")
    _add_output_flags(p, ("json", "csv"))
    return parser


def _space(args):
    modulus = None
    if args.modulus:
        modulus = tuple(int(c) for c in args.modulus.split(","))
    f = parse_field(args.field, modulus)
    return space_make(args.nu, args.delta, f, args.disc)


def _emit(text, args):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(payload) -> str:
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def cmd_build(args) -> int:
    g = build_graph(_space(args), args.budget)
    counts = (
        f"{g.space.label()}: {g.nv} vertices, {len(g.edges())} edges, "
        f"{g.loops.bit_count()} loops\n"
    )
    fmt = args.format
    if args.out and fmt is None:
        fmt = "json"
    if fmt == "json":
        _emit(graph_to_json(g), args)
    elif fmt == "dot":
        _emit(graph_to_dot(g, header=not args.no_header), args)
    if fmt and not args.out:
        sys.stderr.write(counts)
    else:
        sys.stdout.write(counts)
    return EXIT_OK


def _type_json(t):
    return [t.m, t.r, t.s, t.tag]


def cmd_classify(args) -> int:
    g = build_graph(_space(args), args.budget)
    census = {}
    for P in g.verts:
        t = classify_type(P)
        if args.dim is not None and t.m != args.dim:
            continue
        census[t.as_tuple()] = census.get(t.as_tuple(), 0) + 1
    rows = [
        {"dim": key[0], "type": [key[0], key[1], key[2], key[3] or None], "count": n}
        for key, n in sorted(census.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2], kv[0][3]))
    ]
    if args.format == "csv":
        lines = []
        if not args.no_header:
            lines.append(f"# oigraph classify {g.space.label()} version={VERSION}")
        lines.append("dim,type,count")
        for r in rows:
            lines.append(f"{r['dim']},{json.dumps(r['type'])},{r['count']}".replace(" ", ""))
        _emit("\n".join(lines) + "\n", args)
    else:
        _emit(_json_dump({"space": g.space.label(), "rows": rows}), args)
    return EXIT_OK


def cmd_orbits(args) -> int:
    g = build_graph(_space(args), args.budget)
    orbits = vertex_orbits(g, po_e_generators(g))
    rows = []
    for i, orb in enumerate(orbits):
        rep = min(orb)
        rows.append(
            {
                "orbit": i,
                "size": len(orb),
                "representative": rep,
                "type": _type_json(classify_type(g.verts[rep])),
            }
        )
    if args.format == "csv":
        lines = []
        if not args.no_header:
            lines.append(f"# oigraph orbits {g.space.label()} version={VERSION}")
        lines.append("orbit,size,representative,type")
        for r in rows:
            lines.append(
                f"{r['orbit']},{r['size']},{r['representative']},{json.dumps(r['type'])}".replace(" ", "")
            )
        _emit("\n".join(lines) + "\n", args)
    else:
        _emit(_json_dump({"space": g.space.label(), "orbits": rows}), args)
    return EXIT_OK


def cmd_diameter(args) -> int:
    g = build_graph(_space(args), args.budget)
    d = g.diameter()
    payload = {"space": g.space.label(), "diameter": "infinite" if d == math.inf else d}
    _emit(_json_dump(payload), args)
    return EXIT_OK


def cmd_aut(args) -> int:
    if args.method == "formula":
        order = aut_order_formula(args.nu, args.delta, int(parse_field(args.field).q), args.disc)
        _emit(_json_dump({"order": order}), args)
        return EXIT_OK
    g = build_graph(_space(args), args.budget)
    if args.method == "generated":
        chain = PermGroup(g.nv, po_e_generators(g))
        payload = {
            "order": chain.order(),
            "base": list(chain.base),
            "transversal-sizes": list(chain.transversal_sizes),
        }
    else:
        res = search_result(g, budget=args.budget)
        payload = {
            "order": res.order,
            "generators": [[int(x) for x in gen] for gen in res.generators],
            "node-count": res.node_count,
            "runtime": round(res.seconds, 3),
        }
    _emit(_json_dump(payload), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, budget=args.budget, threads=args.threads)
    if args.format == "json":
        _emit(report.to_json(), args)
    elif args.format == "csv":
        _emit(report.to_csv(header=not args.no_header), args)
    else:
        _emit("\n".join(report.lines()) + "\n", args)
    return EXIT_OK if report.ok else EXIT_CHECK_FAIL


_DISPATCH = {
    "build": cmd_build,
    "classify": cmd_classify,
    "orbits": cmd_orbits,
    "diameter": cmd_diameter,
    "aut": cmd_aut,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"oigraph: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except ValueError as exc:
        sys.stderr.write(f"oigraph: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"oigraph: cannot write output: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
