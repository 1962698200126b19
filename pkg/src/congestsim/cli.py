"""Command-line interface.

Exit codes: 0 on success, 1 on usage errors (bad flags or arguments),
2 on runtime errors inside an operation.
"""
from __future__ import annotations

import argparse
import sys

from . import oracle
from .c4 import detect_c4
from .errors import CongestError, InvalidParams
from .experiment import ExperimentConfig, run_experiment
from .graph import (
    dump_graph,
    gen_gnm,
    gen_planted,
    load_graph,
    pattern_free_host,
    scramble_ids,
)
from .patterns import (
    HPattern,
    RootedPattern,
    c4_hpattern,
    gen_far_instance,
    k2k_hpattern,
    k4_hpattern,
    load_pattern,
    path_pattern,
    star_pattern,
)
from .simulator import BandwidthBudget
from .tester import test_h_freeness
from .treedetect import deterministic_tree_detection, randomized_tree_detection


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UsageError(message)


def parse_pattern_arg(spec: str):
    """Builtin pattern shorthands or a pattern file path.

    path:K[:ROOT], star:LEAVES, c4, k4, k2k:K; anything else is a file.
    """
    parts = spec.split(":")
    try:
        if parts[0] == "path" and len(parts) in (2, 3):
            root = int(parts[2]) if len(parts) == 3 else None
            return path_pattern(int(parts[1]), root=root)
        if parts[0] == "star" and len(parts) == 2:
            return star_pattern(int(parts[1]))
        if spec == "c4":
            return c4_hpattern()
        if spec == "k4":
            return k4_hpattern()
        if parts[0] == "k2k" and len(parts) == 2:
            return k2k_hpattern(int(parts[1]))
    except (ValueError, InvalidParams) as exc:
        raise UsageError(f"bad pattern spec {spec!r}: {exc}") from None
    try:
        return load_pattern(spec)
    except OSError as exc:
        raise UsageError(f"cannot read pattern {spec!r}: {exc}") from None


def parse_seeds(spec: str) -> tuple[int, ...]:
    """Seed lists: '7', '0,3,9', or inclusive ranges '0-99'."""
    out = []
    for part in spec.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def parse_sizes(spec: str) -> tuple[int, ...]:
    return tuple(int(p) for p in spec.split(","))


def emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> Parser:
    top = Parser(prog="congestsim", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--budget-mult", type=int, default=4)
        p.add_argument("--report", default=None)
        p.add_argument("--format", choices=("text", "csv"), default="text")

    p = sub.add_parser("detect-tree", help="detect a tree subgraph")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--mode", choices=("det", "rand"), default="det")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1, help="independent runs (rand mode)")
    common(p)

    p = sub.add_parser("test-h", help="property-test tree-plus-edge freeness")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("detect-c4", help="detect a 4-cycle")
    p.add_argument("--graph", required=True)
    common(p)

    p = sub.add_parser("oracle", help="sequential reference answers")
    p.add_argument("op", choices=("contains", "mindel", "packing"))
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--anchor", nargs=2, type=int, default=None)

    p = sub.add_parser("gen-graph", help="write a generated graph")
    p.add_argument("--kind", choices=("gnm", "planted", "far", "tfree"), required=True)
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--m", type=int, default=32)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--copies", type=int, default=3)
    p.add_argument("--pattern", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scramble-ids", action="store_true")
    p.add_argument("--out", default=None)

    p = sub.add_parser("bench", help="sweep an algorithm over sizes and seeds")
    p.add_argument("--algo", choices=("det-tree", "rand-tree", "detect-c4", "test-h"), required=True)
    p.add_argument("--pattern", default=None)
    p.add_argument("--sizes", default="16,32,64,128,256")
    p.add_argument("--seeds", default="0")
    p.add_argument("--host", default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--scramble-ids", action="store_true")
    p.add_argument("--timing", action="store_true")
    common(p)
    return top


def _load_graph_arg(path: str):
    try:
        return load_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read graph {path!r}: {exc}") from None


def cmd_detect_tree(args) -> int:
    g = _load_graph_arg(args.graph)
    t = parse_pattern_arg(args.pattern)
    if not isinstance(t, RootedPattern):
        raise UsageError("detect-tree needs a rooted tree pattern")
    budget = BandwidthBudget.for_graph(g, args.budget_mult)
    lines = []
    if args.mode == "det":
        rep = deterministic_tree_detection(g, t, budget=budget)
        decision = rep.decision
        lines.append(
            f"det-tree,{g.n},{rep.decision},{rep.rounds_used},{rep.max_edge_bits}"
        )
    else:
        rejects = 0
        rounds = 0
        for i in range(max(1, args.trials)):
            s = randomized_tree_detection(g, t, seed=args.seed + i, budget=budget)
            rejects += s.decision == "reject"
            rounds += s.rounds_total
            lines.append(
                f"rand-tree,{g.n},{s.decision},{s.rounds_total},{s.max_edge_bits}"
            )
        decision = "reject" if rejects else "accept"
    if args.format == "csv":
        body = "algo,n,decision,rounds,max_edge_bits\n" + "\n".join(lines) + "\n"
    else:
        body = "\n".join(lines) + "\n"
    emit(body, args.report)
    print(f"decision: {decision}")
    return 0


def cmd_test_h(args) -> int:
    g = _load_graph_arg(args.graph)
    h = parse_pattern_arg(args.pattern)
    if not isinstance(h, HPattern):
        raise UsageError("test-h needs a tree-plus-edge pattern")
    budget = BandwidthBudget.for_graph(g, args.budget_mult)
    res = test_h_freeness(g, h, args.eps, seed=args.seed, budget=budget)
    lines = ["trial,candidate,rank,decision,rounds"]
    for r in res.records:
        cand = "-" if r.candidate is None else f"{r.candidate[0]}-{r.candidate[1]}"
        lines.append(f"{r.trial},{cand},{r.rank},{r.decision},{r.rounds}")
    emit("\n".join(lines) + "\n", args.report)
    print(
        f"decision: {res.decision} after {res.trials_run}/{res.trials_planned} trials,"
        f" {res.rounds_total} rounds"
    )
    return 0


def cmd_detect_c4(args) -> int:
    g = _load_graph_arg(args.graph)
    budget = BandwidthBudget.for_graph(g, args.budget_mult)
    rep = detect_c4(g, budget=budget)
    emit(rep.to_text(), args.report)
    print(f"decision: {rep.decision}")
    return 0


def cmd_oracle(args) -> int:
    g = _load_graph_arg(args.graph)
    h = parse_pattern_arg(args.pattern)
    if args.op == "contains":
        if args.anchor is not None:
            if not isinstance(h, HPattern):
                raise UsageError("anchored containment needs a tree-plus-edge pattern")
            print(oracle.contains_h_at(g, h, tuple(args.anchor)))
        else:
            print(oracle.contains_subgraph(g, h))
    elif args.op == "mindel":
        print(oracle.min_edges_to_h_free(g, h))
    else:
        res = oracle.count_edge_disjoint_copies(g, h)
        print(f"{res.count} {'exact' if res.exact else 'lower-bound'}")
    return 0


def cmd_gen_graph(args) -> int:
    if args.kind == "gnm":
        g = gen_gnm(args.n, args.m, args.seed)
    elif args.kind == "planted":
        if not args.pattern:
            raise UsageError("planted graphs need --pattern")
        p = parse_pattern_arg(args.pattern)
        pg = p.compile()[0] if isinstance(p, HPattern) else p.to_graph()
        g = gen_planted(args.n, args.m, pg, args.seed)
    elif args.kind == "far":
        if not args.pattern:
            raise UsageError("far instances need --pattern")
        h = parse_pattern_arg(args.pattern)
        if not isinstance(h, HPattern):
            raise UsageError("far instances need a tree-plus-edge pattern")
        g = gen_far_instance(h, args.copies)
    else:
        g = pattern_free_host(args.n, args.k)
    if args.scramble_ids:
        g = scramble_ids(g, args.seed)
    emit(dump_graph(g), args.out)
    return 0


def cmd_bench(args) -> int:
    pattern = parse_pattern_arg(args.pattern) if args.pattern else None
    host = args.host
    if host is None:
        host = "tfree" if args.algo in ("det-tree", "rand-tree") else "gnm:avg_deg=4"
    cfg = ExperimentConfig(
        algo=args.algo,
        pattern=pattern,
        pattern_name=args.pattern or "-",
        sizes=parse_sizes(args.sizes),
        seeds=parse_seeds(args.seeds),
        host=host,
        eps=args.eps,
        budget_multiplier=args.budget_mult,
        scramble=args.scramble_ids,
        timing=args.timing,
    )
    report = run_experiment(cfg)
    emit(report.to_csv(), args.report)
    if args.report:
        print(f"wrote {len(report.rows)} rows to {args.report}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "detect-tree": cmd_detect_tree,
            "test-h": cmd_test_h,
            "detect-c4": cmd_detect_c4,
            "oracle": cmd_oracle,
            "gen-graph": cmd_gen_graph,
            "bench": cmd_bench,
        }[args.cmd]
        return handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except CongestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
