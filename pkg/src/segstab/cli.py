"""Command-line interface: ``segstab <command> ...``.

Exit codes: 0 success, 2 infeasible input or failed verification,
3 an exhaustive method's size guard was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .cesd import GuardExceeded, hex_cover_bound
from .geometry import smallest_stabbing_disk
from .graphs import GRAPH_BUILDERS, DegenerateInputError, InvalidGraphError, edge_stats
from .hardness import ReductionError, reduce_cdc, verify_lemma1, verify_reduction
from .io import DISTRIBUTIONS, FormatError, Instance, SolutionFile, generate, integer_points, parse_points
from .pipeline import ALGORITHMS, BenchConfig, bench, float_graph, solve, thread_cap, verify_solution
from .render import render_svg
from .setcover import Uncoverable
from .solvers import InfeasibleSolution

EXIT_OK, EXIT_FAIL, EXIT_GUARD = 0, 2, 3


def _emit(text: str, out: Optional[str]):
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_instance(path: str) -> Instance:
    return Instance.loads(Path(path).read_text())


def cmd_gen(args) -> int:
    inst = generate(args.graph_class, args.n, args.dist, args.seed, r=args.r)
    _emit(inst.dumps(), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    sol = solve(inst, args.algorithm, r=args.r, lam=args.lam, tol=args.tol)
    _emit(sol.dumps(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    sol = SolutionFile.loads(Path(args.solution).read_text())
    res = verify_solution(inst, sol, args.tol)
    line = "pass" if res.ok else f"fail: {res.message} (edge {res.violation})"
    _emit(line + "\n", args.out)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_render(args) -> int:
    inst = _load_instance(args.instance)
    centers = ()
    r = inst.r
    if args.solution:
        sol = SolutionFile.loads(Path(args.solution).read_text())
        centers, r = sol.centers, sol.r
    g = inst.graph
    _emit(render_svg(g.vertices, g.edges, r, centers, title=Path(args.instance).name), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    doc = json.loads(Path(args.config).read_text()) if args.config else {}
    for key in ("classes", "sizes", "seeds", "algorithms"):
        val = getattr(args, key)
        if val:
            doc[key] = [int(v) for v in val.split(",")] if key in ("sizes", "seeds") else val.split(",")
    if args.dist:
        doc["distribution"] = args.dist
    cfg = BenchConfig.from_dict(doc)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            bench(cfg, fh, args.threads)
    else:
        bench(cfg, sys.stdout, args.threads)
    return EXIT_OK


def _read_points(args):
    text = Path(args.points_file).read_text() if args.points_file else args.points
    if not text:
        raise FormatError("give --points or --points-file")
    return integer_points(parse_points(text))


def cmd_reduce(args) -> int:
    D = _read_points(args)
    delta = Fraction(args.delta) if args.delta else None
    inst = reduce_cdc(D, args.r0, args.seed, delta)
    if not args.verify:
        _emit(inst.to_json() + "\n", args.out)
        return EXIT_OK
    rep = verify_reduction(D, args.r0, args.seed, delta, instance=inst)
    doc = {"k_cdc": rep.k_cdc, "k_ipgd": rep.k_ipgd, "verdict": rep.verdict,
           "forward_ok": rep.forward_ok, "undecided": rep.undecided,
           "edges": len(inst.edges), "stats": inst.stats()}
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return EXIT_OK if rep.equal and rep.forward_ok else EXIT_FAIL


def cmd_lemma1(args) -> int:
    rep = verify_lemma1(args.r, dps=args.dps, workers=args.threads or thread_cap())
    u, v, w = rep.argmin
    doc = {"r": rep.r, "min_rho": str(rep.min_rho), "bound": f"{rep.bound.numerator}/{rep.bound.denominator}",
           "argmin": {"u": u, "v": v, "w": w}, "ok": rep.ok, "triples": rep.triples,
           "excluded": rep.excluded}
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_stats(args) -> int:
    inst = _load_instance(args.instance)
    g = float_graph(inst.graph)
    s = edge_stats(g, float(inst.r))
    _, big_r = smallest_stabbing_disk(g.segments)
    r = float(inst.r)
    doc = {"n": len(g.vertices), "m": len(g.edges), "r": r, "d_min": s.d_min, "d_max": s.d_max,
           "mu": s.mu, "R": big_r, "max_aspect": max(s.aspect_ratios),
           "regime": "single-disk" if r >= big_r else ("in-range" if s.d_min <= r <= s.d_max else "outside"),
           "lambda": s.d_max / (2 * r), "p_hat": hex_cover_bound(1 + s.d_max / r).count}
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--tol", type=float, default=None,
                        help="absolute distance slack (default 1e-9 x bounding-box diagonal)")
    p = argparse.ArgumentParser(prog="segstab", description="Stab plane-graph edges with few radius-r disks.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a random instance")
    g.add_argument("--class", dest="graph_class", choices=sorted(GRAPH_BUILDERS), default="delaunay")
    g.add_argument("--n", type=int, default=50)
    g.add_argument("--dist", choices=DISTRIBUTIONS, default="unit-square")
    g.add_argument("--r", type=float, default=None, help="radius (default sqrt(d_min * d_max))")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", parents=[common], help="solve an instance")
    s.add_argument("instance")
    s.add_argument("--algorithm", choices=ALGORITHMS, default="exact")
    s.add_argument("--r", type=float, default=None, help="override the instance radius")
    s.add_argument("--lambda", dest="lam", type=float, default=None)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="check a solution against an instance")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", parents=[common], help="draw an instance (and solution) as SVG")
    r.add_argument("instance")
    r.add_argument("--solution", default=None)
    r.set_defaults(func=cmd_render)

    b = sub.add_parser("bench", parents=[common], help="benchmark solvers, CSV output")
    b.add_argument("--config", default=None, help="JSON file with BenchConfig fields")
    b.add_argument("--classes", default=None, help="comma-separated graph classes")
    b.add_argument("--sizes", default=None, help="comma-separated vertex counts")
    b.add_argument("--seeds", default=None, help="comma-separated seeds")
    b.add_argument("--algorithms", default=None, help="comma-separated algorithms")
    b.add_argument("--dist", choices=DISTRIBUTIONS, default=None)
    b.add_argument("--threads", type=int, default=None, help="worker threads (default SEGSTAB_THREADS or 1)")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("reduce-cdc", parents=[common], help="build (and optionally verify) a reduction instance")
    c.add_argument("--points", default=None, help="integer points as 'x,y;x,y;...'")
    c.add_argument("--points-file", default=None)
    c.add_argument("--r0", type=int, default=1)
    c.add_argument("--delta", default=None, help="override delta, e.g. 1/1000")
    c.add_argument("--verify", action="store_true", help="compare optima instead of printing the instance")
    c.set_defaults(func=cmd_reduce)

    m = sub.add_parser("verify-lemma1", parents=[common], help="exhaustive lattice distance check")
    m.add_argument("--r", type=int, required=True)
    m.add_argument("--dps", type=int, default=60, help="decimal digits of working precision")
    m.add_argument("--threads", type=int, default=None)
    m.set_defaults(func=cmd_lemma1)

    t = sub.add_parser("stats", parents=[common], help="edge statistics and radius regime")
    t.add_argument("instance")
    t.set_defaults(func=cmd_stats)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as err:
        print(f"segstab: guard exceeded: {err}", file=sys.stderr)
        return EXIT_GUARD
    except (InfeasibleSolution, Uncoverable, ReductionError, DegenerateInputError,
            InvalidGraphError, FormatError, ValueError, OSError) as err:
        print(f"segstab: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
