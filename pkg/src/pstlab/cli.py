"""Command-line workbench.

Exit codes: 0 success / property true, 1 checked property false,
2 input error, 3 numeric or size-guard error.  All outputs are
deterministic; sampled suite checks take a --seed.  Output is plain text
(nothing to disable for NO_COLOR).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from pstlab import cubelike as cl
from pstlab import feder as fd
from pstlab import graphio as io
from pstlab import graphs as gr
from pstlab import partitions as pt
from pstlab import spectral as sp
from pstlab import suites as su
from pstlab import symmetry as sy
from pstlab import walk as wk
from pstlab.errors import GuardError, InputError, NumericError


def _parse_params(pairs: list[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in pairs or []:
        if "=" not in item:
            raise InputError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        if key in out:
            raise InputError(f"duplicate parameter {key!r}")
        out[key] = value
    return out


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        io.write_text(args.out, text, force=args.force)
    else:
        print(text)


def cmd_build(args) -> int:
    params = _parse_params(args.param)
    g = gr.build(args.family, **params)
    if args.name is not None:
        g = g.with_name(args.name)
    if args.family.lower() == "godsil":
        fam_m = int(params["m"])
        n = 15 * 2 ** (2 * (fam_m - 2))
        print(f"apex vertices: 0 {2 * n + 1}", file=sys.stderr)
    _emit(args, io.graph_to_json(g))
    return 0


def cmd_product(args) -> int:
    graphs = [io.read_graph(p) for p in args.graph]
    if len(graphs) < 2:
        raise InputError("product needs at least two --graph inputs")
    out = graphs[0]
    for g in graphs[1:]:
        out = gr.cartesian_product(out, g)
    _emit(args, io.graph_to_json(out))
    return 0


def cmd_join(args) -> int:
    graphs = [io.read_graph(p) for p in args.graph]
    if len(graphs) != 2:
        raise InputError("join needs exactly two --graph inputs")
    _emit(args, io.graph_to_json(gr.join(*graphs)))
    return 0


def cmd_complement(args) -> int:
    _emit(args, io.graph_to_json(gr.complement(io.read_graph(args.graph))))
    return 0


def cmd_scale(args) -> int:
    _emit(args, io.graph_to_json(gr.scale(io.read_graph(args.graph), args.factor)))
    return 0


def _initial_partition(args, g: gr.Graph) -> pt.Partition:
    if args.partition and args.seed_pair:
        raise InputError("give either --partition or --seed-pair, not both")
    if args.partition:
        return io.read_partition(args.partition)
    if args.seed_pair:
        a, b = args.seed_pair
        if a == b:
            raise InputError("--seed-pair vertices must be distinct")
        cell_of = [2] * g.n
        cell_of[g.check_vertex(a)] = 0
        cell_of[g.check_vertex(b)] = 1
        return pt.Partition(tuple(cell_of), 3 if g.n > 2 else 2)
    return pt.Partition.single_cell(g.n)


def cmd_refine(args) -> int:
    g = io.read_graph(args.graph)
    refined = pt.refine(g, _initial_partition(args, g))
    _emit(args, io.partition_to_json(refined))
    return 0


def cmd_quotient(args) -> int:
    g = io.read_graph(args.graph)
    p = io.read_partition(args.partition)
    result = pt.quotient(g, p)
    _emit(args, io.graph_to_json(result.quotient))
    if args.cell_map:
        io.write_text(args.cell_map, io.partition_to_json(result.cell_map),
                      force=args.force)
    return 0


def cmd_fidelity(args) -> int:
    g = io.read_graph(args.graph)
    value = sp.fidelity(g, args.source, args.target, args.time)
    print(f"{value:.17g}")
    return 0


def cmd_scan(args) -> int:
    g = io.read_graph(args.graph)
    series = wk.fidelity_scan(g, args.source, args.target, args.tmax,
                              steps=args.steps)
    if args.csv:
        io.write_text(args.csv, wk.series_to_csv(series), force=args.force)
    if args.peaks:
        io.write_text(args.peaks, wk.peaks_to_json(series), force=args.force)
    top = series.top_peak()
    if top is None:
        print("no interior peak found")
    else:
        print(f"top peak: t={top.time:.17g} fidelity={top.fidelity:.17g}")
    return 0


def cmd_pst_verify(args) -> int:
    g = io.read_graph(args.graph)
    ok = wk.verify_pst(g, args.source, args.target, args.time, tol=args.tol)
    value = sp.fidelity(g, args.source, args.target, args.time)
    print(f"{'true' if ok else 'false'} fidelity={value:.17g}")
    return 0 if ok else 1


def cmd_feder(args) -> int:
    g = io.read_graph(args.graph)
    fg = fd.feder_graph(g, args.bosons)
    _emit(args, io.graph_to_json(fg.graph))
    if args.map:
        rows = [
            f'{{"occupation":[{",".join(str(c) for c in occ)}],"vertex":{i}}}'
            for i, occ in enumerate(fg.occupations)
        ]
        io.write_text(args.map, "[" + ",".join(rows) + "]", force=args.force)
    return 0


def cmd_orbit_quotient(args) -> int:
    g = io.read_graph(args.graph)
    op = fd.orbit_partition(g, args.power)
    result = pt.quotient(gr.cartesian_power(g, args.power), op.partition)
    _emit(args, io.graph_to_json(result.quotient))
    if args.cells:
        io.write_text(args.cells, io.partition_to_json(op.partition),
                      force=args.force)
    return 0


def cmd_compose(args) -> int:
    g = io.read_graph(args.graph)
    p1 = fd.orbit_partition(g, args.m1).partition
    inner = pt.quotient(gr.cartesian_power(g, args.m1), p1).quotient
    p2 = fd.orbit_partition(inner, args.m2).partition
    chk = fd.compose_quotients(g, args.m1, p1, args.m2, p2, tol=args.tol)
    print(f"{'true' if chk.ok else 'false'} residual={chk.residual:.3e}")
    return 0 if chk.ok else 1


def cmd_cubelike(args) -> int:
    spec = cl.CubelikeSpec.from_bit_strings(args.gens)
    w = cl.omega(spec)
    if args.certify:
        cert = cl.certify(spec, tol=args.tol)
        pred, certified, target, fid = (cert.prediction, cert.certified,
                                        cert.target, cert.fidelity)
    else:
        pred = cl.predict_pst(spec)
        certified = False
        target = pred.target if pred else None
        fid = None
    doc = {
        "omega": spec.format_vector(w),
        "time": pred.time if pred else None,
        "certified": bool(certified),
    }
    if target is not None:
        doc["target"] = spec.format_vector(target)
    if fid is not None:
        doc["fidelity"] = fid
    text = json.dumps(doc, sort_keys=True)
    _emit(args, text)
    if pred is None:
        return 1
    return 0 if (certified or not args.certify) else 1


def cmd_aut(args) -> int:
    g = io.read_graph(args.graph)
    if args.swap is not None:
        a, b = args.swap
        witness = sy.find_swap(g, a, b)
        if witness is None:
            print("false")
            return 1
        print("true")
        print("witness: " + " ".join(str(v) for v in witness))
        return 0
    result = sy.automorphisms(g, limit=args.limit)
    if result.exact:
        print(f"order {result.order}")
    else:
        print(f"order >= {len(result.permutations)} (enumeration truncated)")
    return 0


def cmd_iso(args) -> int:
    graphs = [io.read_graph(p) for p in args.graph]
    if len(graphs) != 2:
        raise InputError("iso needs exactly two --graph inputs")
    ok = sy.is_isomorphic(*graphs)
    print("true" if ok else "false")
    return 0 if ok else 1


def cmd_triangles(args) -> int:
    g = io.read_graph(args.graph)
    census = sy.triangle_census(g)
    print(" ".join(str(c) for c in census.tolist()))
    print(f"total {sy.triangle_total(g)}")
    return 0


def cmd_verify(args) -> int:
    report = su.run_suite(args.suite, seed=args.seed)
    sys.stdout.write(report.to_text())
    if args.json:
        io.write_text(args.json, report.to_json(), force=args.force)
    return 0 if report.passed else 1


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing output files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pstlab",
        description="Quotient-graph workbench for quantum-walk state transfer.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a named graph family")
    p.add_argument("--family", required=True,
                   help="complete|path|cycle|hypercube|circulant|cubelike|"
                        "weighted-p4|weighted-p5|christandl|godsil")
    p.add_argument("--param", action="append", default=[],
                   help="family parameter key=value (repeatable)")
    p.add_argument("--name", help="override the graph name")
    _add_out(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("product", help="Cartesian product of graphs")
    p.add_argument("--graph", action="append", required=True)
    _add_out(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("join", help="join of two graphs")
    p.add_argument("--graph", action="append", required=True)
    _add_out(p)
    p.set_defaults(func=cmd_join)

    p = sub.add_parser("complement", help="complement of a graph")
    p.add_argument("--graph", required=True)
    _add_out(p)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("scale", help="scale all weights")
    p.add_argument("--graph", required=True)
    p.add_argument("--factor", type=float, required=True)
    _add_out(p)
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("refine", help="coarsest equitable refinement")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", help="initial partition JSON")
    p.add_argument("--seed-pair", nargs=2, type=int, metavar=("A", "B"),
                   help="start from singleton cells {a},{b}")
    _add_out(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("quotient", help="quotient by an equitable partition")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--cell-map", help="write the cell map JSON here")
    _add_out(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("fidelity", help="transfer fidelity at one time")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    p.add_argument("--time", type=float, required=True)
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("scan", help="fidelity scan with refined peaks")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--steps", type=int, default=wk.DEFAULT_STEPS)
    p.add_argument("--csv", help="write the t,fidelity series here")
    p.add_argument("--peaks", help="write refined peaks JSON here")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("pst-verify", help="check fidelity >= 1 - tol at a time")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--tol", type=float, default=sp.PST_TOL)
    p.set_defaults(func=cmd_pst_verify)

    p = sub.add_parser("feder", help="many-boson secondary graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--bosons", type=int, required=True)
    p.add_argument("--map", help="write occupation-vector index JSON here")
    _add_out(p)
    p.set_defaults(func=cmd_feder)

    p = sub.add_parser("orbit-quotient",
                       help="quotient of a Cartesian power by coordinate orbits")
    p.add_argument("--graph", required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--cells", help="write the orbit partition JSON here")
    _add_out(p)
    p.set_defaults(func=cmd_orbit_quotient)

    p = sub.add_parser("compose", help="check the quotient composition identity")
    p.add_argument("--graph", required=True)
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--tol", type=float, default=fd.IDENTITY_TOL)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("cubelike", help="transfer prediction for a cube-like graph")
    p.add_argument("--gens", required=True,
                   help='comma-separated bit strings, e.g. "100,010,001,011"')
    p.add_argument("--certify", action=argparse.BooleanOptionalAction,
                   default=True, help="numerically cross-check the prediction")
    p.add_argument("--tol", type=float, default=sp.PST_TOL)
    _add_out(p)
    p.set_defaults(func=cmd_cubelike)

    p = sub.add_parser("aut", help="automorphism group order / swap witness")
    p.add_argument("--graph", required=True)
    p.add_argument("--limit", type=int, default=10_000,
                   help="stop enumerating after this many automorphisms")
    p.add_argument("--swap", nargs=2, type=int, metavar=("A", "B"))
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("iso", help="isomorphism test for two graphs")
    p.add_argument("--graph", action="append", required=True)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("triangles", help="per-vertex triangle census")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_triangles)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=sorted(su.SUITES))
    p.add_argument("--seed", type=int, default=su.DEFAULT_SEED)
    p.add_argument("--json", help="write the machine-readable report here")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: --help exits 0, bad flags exit 2
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GuardError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
