"""Sweep experiments over graph sizes and seeds, with deterministic reports.

A sweep runs one algorithm over a grid of (n, seed) cells on generated
hosts and collects per-cell cost rows.  Report text is byte-stable for
a fixed config: rows are sorted, floats are formatted with fixed
precision, and wall-clock timing is excluded unless explicitly enabled
(it is the one intentionally non-reproducible column).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .c4 import detect_c4
from .errors import InvalidParams
from .graph import (
    Graph,
    gen_gnm,
    load_graph,
    pattern_free_host,
    scramble_ids,
)
from .patterns import HPattern, RootedPattern, gen_far_instance
from .simulator import BandwidthBudget, log2_ceil
from .tester import test_h_freeness, trial_count
from .treedetect import deterministic_tree_detection, randomized_tree_detection

REPORT_VERSION = "congestsim-sweep v1"

ALGOS = ("det-tree", "rand-tree", "detect-c4", "test-h")


@dataclass(frozen=True)
class SweepRow:
    algo: str
    pattern: str
    n: int
    seed: int
    decision: str
    rounds: int
    max_edge_bits: int
    bits_ratio: float
    wall_ms: float | None = None


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]
    timing: bool

    def to_csv(self) -> str:
        header = "algo,pattern,n,seed,decision,rounds,max_edge_bits,bits_ratio"
        if self.timing:
            header += ",wall_ms"
        lines = [f"# {REPORT_VERSION}", header]
        for r in sorted(self.rows, key=lambda r: (r.algo, r.pattern, r.n, r.seed)):
            line = (
                f"{r.algo},{r.pattern},{r.n},{r.seed},{r.decision},"
                f"{r.rounds},{r.max_edge_bits},{r.bits_ratio:.4f}"
            )
            if self.timing:
                line += f",{0.0 if r.wall_ms is None else r.wall_ms:.3f}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        return self.to_csv()


@dataclass
class ExperimentConfig:
    algo: str
    pattern: RootedPattern | HPattern | None = None
    pattern_name: str = "-"
    sizes: tuple[int, ...] = (16, 32, 64, 128, 256)
    seeds: tuple[int, ...] = (0,)
    host: str = "tfree"
    graph: Graph | None = None
    eps: float | None = None
    budget_multiplier: int = 4
    scramble: bool = False
    timing: bool = False
    extra: dict = field(default_factory=dict)


def _validate(cfg: ExperimentConfig) -> None:
    if cfg.algo not in ALGOS:
        raise InvalidParams(f"unknown algorithm {cfg.algo!r}, expected one of {ALGOS}")
    if cfg.algo in ("det-tree", "rand-tree"):
        if not isinstance(cfg.pattern, RootedPattern):
            raise InvalidParams(f"{cfg.algo} needs a rooted tree pattern")
    if cfg.algo == "test-h":
        if not isinstance(cfg.pattern, HPattern):
            raise InvalidParams("test-h needs a tree-plus-edge pattern")
        if cfg.eps is None:
            raise InvalidParams("test-h needs eps")
        trial_count(cfg.pattern, cfg.eps)  # validates eps range before any cell runs
    if cfg.budget_multiplier < 1:
        raise InvalidParams("budget multiplier must be at least 1")


def _tree_k(cfg: ExperimentConfig) -> int:
    if isinstance(cfg.pattern, RootedPattern):
        return cfg.pattern.k
    if isinstance(cfg.pattern, HPattern):
        return cfg.pattern.k
    return 2


def build_host(cfg: ExperimentConfig, n: int, seed: int) -> Graph:
    """Materialize the host graph for one sweep cell."""
    if cfg.graph is not None:
        g = cfg.graph
    elif cfg.host == "tfree":
        g = pattern_free_host(n, _tree_k(cfg))
    elif cfg.host.startswith("gnm:avg_deg="):
        avg = float(cfg.host.split("=", 1)[1])
        if avg < 0:
            raise InvalidParams("average degree must be non-negative")
        m = min(round(avg * n / 2), n * (n - 1) // 2)
        g = gen_gnm(n, m, seed)
    elif cfg.host.startswith("far:copies="):
        copies = int(cfg.host.split("=", 1)[1])
        if not isinstance(cfg.pattern, HPattern):
            raise InvalidParams("far hosts need a tree-plus-edge pattern")
        g = gen_far_instance(cfg.pattern, copies)
    elif cfg.host.startswith("file:"):
        g = load_graph(cfg.host.split(":", 1)[1])
    else:
        raise InvalidParams(f"unknown host spec {cfg.host!r}")
    if cfg.scramble:
        g = scramble_ids(g, seed)
    return g


def run_cell(cfg: ExperimentConfig, g: Graph, seed: int):
    """Run the configured algorithm once; returns (decision, rounds, max_bits)."""
    budget = BandwidthBudget.for_graph(g, cfg.budget_multiplier)
    if cfg.algo == "det-tree":
        rep = deterministic_tree_detection(g, cfg.pattern, budget=budget)
        return rep.decision, rep.rounds_used, rep.max_edge_bits
    if cfg.algo == "rand-tree":
        s = randomized_tree_detection(g, cfg.pattern, seed=seed, budget=budget)
        return s.decision, s.rounds_total, s.max_edge_bits
    if cfg.algo == "detect-c4":
        rep = detect_c4(g, budget=budget)
        return rep.decision, rep.rounds_used, rep.max_edge_bits
    if cfg.algo == "test-h":
        res = test_h_freeness(g, cfg.pattern, cfg.eps, seed=seed, budget=budget)
        return res.decision, res.rounds_total, res.max_edge_bits
    raise InvalidParams(f"unknown algorithm {cfg.algo!r}")


def run_experiment(cfg: ExperimentConfig) -> SweepReport:
    _validate(cfg)
    sizes = cfg.sizes if cfg.graph is None else (cfg.graph.n,)
    rows = []
    for n in sizes:
        for seed in cfg.seeds:
            g = build_host(cfg, n, seed)
            started = time.perf_counter()
            decision, rounds, max_bits = run_cell(cfg, g, seed)
            wall = (time.perf_counter() - started) * 1000.0
            rows.append(
                SweepRow(
                    algo=cfg.algo,
                    pattern=cfg.pattern_name,
                    n=g.n,
                    seed=seed,
                    decision=decision,
                    rounds=rounds,
                    max_edge_bits=max_bits,
                    bits_ratio=max_bits / log2_ceil(max(1, g.n)),
                    wall_ms=wall if cfg.timing else None,
                )
            )
    return SweepReport(rows=tuple(rows), timing=cfg.timing)
