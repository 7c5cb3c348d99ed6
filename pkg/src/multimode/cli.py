"""Command-line front end.

Every command prints one JSON object per line.  ``--human`` switches to a
two-column table.  Exit codes: 0 success, 1 parse or validation error,
2 failed internal check (for example a witness that did not certify).
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from .diameter import approx_diameter
from .directed import (
    dag_2mode_finite_ecc,
    finite_2mode_diameter,
    finite_min_ecc,
    two_mode_dag_diameter_2approx,
)
from .exact import reduce_to_standard_diameter, reduce_to_standard_radius
from .fileio import ParseError, format_graph, format_label, parse_label, parse_vectors, read_graph
from .graph import INF, GraphError, MultimodeGraph, exact_parameters, fmt_dist, kmode_distance, kmode_search
from .instances import FAMILIES, gen_lower_bound_instance, random_ov
from .radius import binary_search_radius

DIAM_ALGOS = ("3approx", "2approx", "2.5approx", "3mode")
DIRECTED_TASKS = ("finite-diam", "dag-diam", "dag-finite-ecc", "min-ecc")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        raise UsageError(message)


def _d(x: int):
    return "inf" if x >= INF else int(x)


def _range(text: str | None) -> tuple[int, int | None]:
    if text is None:
        return 1, None
    try:
        lo_s, hi_s = text.split(":")
        lo = int(lo_s) if lo_s else 1
        hi = int(hi_s) if hi_s else None
    except ValueError:
        raise UsageError(f"--range must look like lo:hi, got {text!r}") from None
    if hi is not None and lo > hi:
        raise UsageError("--range lower end exceeds upper end")
    return lo, hi


def _graph_info(path: str, g: MultimodeGraph) -> dict:
    return {"file": path, "n": g.n, "k": g.k, "m": g.edge_count(), "directed": g.directed}


def _recertify(g: MultimodeGraph, a: int, b: int, claimed: int) -> int:
    d = kmode_distance(g, a, b)
    if d != claimed:
        raise AssertionError(f"witness ({a},{b}) claims {claimed} but measures {fmt_dist(d)}")
    return d


def parse_graph_labels(path: Path) -> list:
    out = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        tokens = raw.split()
        if tokens and tokens[0] == "l":
            out.append(parse_label(tokens[1:], str(path), lineno))
    return out


# ---------------------------------------------------------------- commands

def cmd_exact(args) -> list[dict]:
    gf = read_graph(args.path)
    g = gf.graph
    t0 = time.perf_counter()
    ex = exact_parameters(g)
    rec = {"command": "exact", **_graph_info(args.path, g)}
    rec["diameter"] = _d(ex.diameter)
    rec["radius"] = _d(ex.radius)
    rec["diameter_pair"] = list(ex.diameter_pair) if ex.diameter_pair else None
    rec["center"] = ex.center
    if ex.diameter_pair:
        _recertify(g, *ex.diameter_pair, ex.diameter)
    if args.apsp:
        rec["apsp"] = [[_d(x) for x in kmode_search(g, [u])] for u in range(g.n)]
    labels = list(gf.labels)
    sidecar = Path(args.path + ".label")
    if sidecar.exists():
        labels += parse_graph_labels(sidecar)
    if labels:
        rec["labels"] = [format_label(lb)[2:] for lb in labels]
        rec["labels_hold"] = [
            lb.holds(ex.diameter if lb.kind == "diameter" else ex.radius) for lb in labels
        ]
    rec["ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return [rec]


def cmd_approx_diam(args) -> list[dict]:
    g = read_graph(args.path).graph
    lo, hi = _range(args.range)
    t0 = time.perf_counter()
    est = approx_diameter(g, args.algo, args.seed, args.delta, lo, hi)
    ms = (time.perf_counter() - t0) * 1000
    certified = _recertify(g, est.a, est.b, est.estimate) if g.n else 0
    return [{
        "command": "approx-diam", **_graph_info(args.path, g),
        "algo": args.algo, "seed": args.seed, "delta": args.delta, "range": args.range,
        "estimate": _d(est.estimate), "witness": [est.a, est.b], "certified": _d(certified),
        "threshold": est.threshold, "flagged": est.flagged, "calls": est.calls,
        "ms": round(ms, 3),
    }]


def cmd_approx_radius(args) -> list[dict]:
    g = read_graph(args.path).graph
    lo, hi = _range(args.range)
    lo = 0 if args.range is None else lo
    t0 = time.perf_counter()
    est = binary_search_radius(g, lo, hi)
    ms = (time.perf_counter() - t0) * 1000
    if est.center is not None:
        ecc = max(kmode_search(g, [est.center]))
        if ecc != est.estimate:
            raise AssertionError("center eccentricity does not match the estimate")
    return [{
        "command": "approx-radius", **_graph_info(args.path, g),
        "seed": args.seed, "range": args.range,
        "estimate": _d(est.estimate), "center": est.center, "threshold": est.threshold,
        "verdict": est.verdict, "nodes": est.stats.nodes, "searches": est.stats.searches,
        "ms": round(ms, 3),
    }]


def cmd_directed(args) -> list[dict]:
    g = read_graph(args.path).graph
    rec = {"command": "directed", **_graph_info(args.path, g), "task": args.task}
    t0 = time.perf_counter()
    if args.task == "finite-diam":
        v = finite_2mode_diameter(g)
        rec.update(finite=v.finite, witness=list(v.witness) if v.witness else None,
                   reason=v.reason, depth=v.depth, nodes=v.nodes)
        if v.witness is not None and kmode_distance(g, *v.witness) < INF:
            raise AssertionError("unreachable witness is reachable")
    elif args.task == "dag-diam":
        rec["estimate"] = _d(two_mode_dag_diameter_2approx(g))
    elif args.task == "dag-finite-ecc":
        rec["finite_ecc"] = sorted(dag_2mode_finite_ecc(g))
    else:
        rec["mode"] = args.mode
        rec["finite_min_ecc"] = sorted(finite_min_ecc(g, args.mode))
    rec["ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return [rec]


def cmd_gen(args) -> list[dict]:
    if (args.ov_file is None) == (args.random is None):
        raise UsageError("gen needs exactly one of --ov-file or --random")
    if args.ov_file is not None:
        A, B = parse_vectors(Path(args.ov_file).read_text(), args.ov_file)
        source = args.ov_file
    else:
        vals = args.random
        n = int(vals[0])
        if n < 1:
            raise UsageError("--random needs n >= 1")
        d = int(vals[1]) if len(vals) > 1 else max(1, round(2 * math.log2(max(n, 2))))
        p = float(vals[2]) if len(vals) > 2 else 0.3
        if d < 1 or not 0.0 <= p <= 1.0:
            raise UsageError("--random needs d >= 1 and 0 <= p <= 1")
        ov = random_ov(n, n, d, p, np.random.default_rng(args.seed))
        A, B = ov.A, ov.B
        source = f"random n={n} d={d} p={p}"
    li = gen_lower_bound_instance(args.family, A, B)
    comments = [f"family {li.family}", f"{li.problem} answer {int(li.answer)}", f"source {source}"]
    text = format_graph(li.graph, comments)
    label_line = format_label(li.label) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        Path(args.out + ".label").write_text(label_line)
    else:
        sys.stdout.write(text + label_line)
    return [{
        "command": "gen", "family": li.family, "seed": args.seed, "out": args.out,
        "n": li.graph.n, "k": li.graph.k, "m": li.graph.edge_count(),
        "problem": li.problem, "answer": li.answer, "label": str(li.label),
    }] if args.out else []


def cmd_reduce(args) -> list[dict]:
    g = read_graph(args.path).graph
    red = reduce_to_standard_diameter(g) if args.target == "diameter" else reduce_to_standard_radius(g)
    comments = [f"offset 2W={red.offset}", f"target {args.target}", f"W={red.W}"]
    text = format_graph(red.graph, comments)
    if args.out:
        Path(args.out).write_text(text)
        return [{
            "command": "reduce", "file": args.path, "target": args.target, "out": args.out,
            "W": red.W, "offset": red.offset, "n": red.graph.n, "m": red.graph.edge_count(),
        }]
    sys.stdout.write(text)
    return []


def _bench_once(g: MultimodeGraph, algo: str, seed: int | None):
    if algo == "exact":
        ex = exact_parameters(g)
        return ex.diameter
    if algo in DIAM_ALGOS:
        return approx_diameter(g, algo, seed).estimate
    if algo == "radius":
        return binary_search_radius(g).estimate
    if algo in DIRECTED_TASKS:
        if algo == "finite-diam":
            return int(finite_2mode_diameter(g, with_witness=False).finite)
        if algo == "dag-diam":
            return two_mode_dag_diameter_2approx(g)
        if algo == "dag-finite-ecc":
            return len(dag_2mode_finite_ecc(g))
        return len(finite_min_ecc(g))
    raise UsageError(f"unknown bench algorithm {algo!r}")


def cmd_bench(args) -> list[dict]:
    if args.repeat < 1:
        raise UsageError("--repeat must be at least 1")
    rows = ["file,algo,n,m,repeat,median_ms,result"]
    for path in args.paths:
        g = read_graph(path).graph
        times = []
        result = None
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            result = _bench_once(g, args.algo, args.seed)
            times.append((time.perf_counter() - t0) * 1000)
        rows.append(f"{path},{args.algo},{g.n},{g.edge_count()},{args.repeat},"
                    f"{statistics.median(times):.3f},{fmt_dist(result)}")
    sys.stdout.write("\n".join(rows) + "\n")
    return []


# ---------------------------------------------------------------- plumbing

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multimode", description="Distances in multimode graphs.")
    p.add_argument("--human", action="store_true", help="print a table instead of JSON lines")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    # SUPPRESS keeps a flag given before the command from being reset here
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS)

    s = sub.add_parser("exact", parents=[common], help="exact eccentricities, diameter and radius")
    s.add_argument("path")
    s.add_argument("--apsp", action="store_true", help="include the full distance matrix")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("approx-diam", parents=[common], help="approximate k-mode diameter")
    s.add_argument("path")
    s.add_argument("--algo", choices=DIAM_ALGOS, default="2approx")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--delta", type=float, default=None)
    s.add_argument("--range", default=None, metavar="LO:HI")
    s.set_defaults(func=cmd_approx_diam)

    s = sub.add_parser("approx-radius", parents=[common], help="3-approximate k-mode radius")
    s.add_argument("path")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--range", default=None, metavar="LO:HI")
    s.set_defaults(func=cmd_approx_radius)

    s = sub.add_parser("directed", parents=[common], help="reachability questions on directed 2-mode graphs")
    s.add_argument("path")
    s.add_argument("--task", choices=DIRECTED_TASKS, required=True)
    s.add_argument("--mode", type=int, default=0, help="mode for min-ecc")
    s.set_defaults(func=cmd_directed)

    s = sub.add_parser("gen", parents=[common], help="generate a labeled lower-bound instance")
    s.add_argument("--family", choices=sorted(FAMILIES), required=True)
    s.add_argument("--ov-file", default=None)
    s.add_argument("--random", nargs="+", default=None, metavar="N [D [P]]")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("reduce", parents=[common], help="reduce to a standard single-mode graph")
    s.add_argument("path")
    s.add_argument("--target", choices=("diameter", "radius"), required=True)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("bench", parents=[common], help="median wall-clock time per file, as CSV")
    s.add_argument("paths", nargs="+")
    s.add_argument("--algo", default="2approx",
                   choices=("exact", "radius") + DIAM_ALGOS + DIRECTED_TASKS)
    s.add_argument("--repeat", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def _emit(records: list[dict], human: bool, out) -> None:
    for rec in records:
        if human:
            width = max(len(k) for k in rec)
            for key, val in rec.items():
                if key == "apsp":
                    out.write(f"{key:<{width}}\n")
                    for row in val:
                        out.write("  " + " ".join(str(x) for x in row) + "\n")
                else:
                    out.write(f"{key:<{width}}  {val}\n")
        else:
            out.write(json.dumps(rec) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        records = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 2
    _emit(records, args.human, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
