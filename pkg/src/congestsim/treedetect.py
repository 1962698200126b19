"""Distributed detection of a fixed tree subgraph.

Two algorithms, both deciding "does the network graph contain the tree
T" with the usual convention that the graph rejects iff at least one
node rejects:

  * randomized color coding: every node draws a color in [1, k]; a copy
    of T whose nodes happen to draw their own labels is found by k
    one-bit activation waves.  One-sided: a T-free graph never rejects.
    Repeating ceil(k^k ln 3) phases pushes the miss probability on a
    T-containing graph below 1/3.
  * deterministic shape tables: nodes exchange witness tables for the
    rooted subtrees of T, one tree depth per logical round, pruning each
    table to a representative subfamily so message sizes depend only on
    k.  Exact: rejects iff T is a subgraph.

Both send identical field-aligned messages to every neighbor, so the
physical round count of a run depends only on T and the bandwidth
multiplier, never on n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParams, IterationBudgetExceeded, ProtocolError
from .graph import Graph
from .patterns import RootedPattern
from .rng import Stream, derive_stream_seed
from .simulator import (
    ACCEPT,
    REJECT,
    BandwidthBudget,
    RunReport,
    run,
)
from .wire import FieldReader, encode_fields
from .witnesses import (
    DEFAULT_ENUM_LIMIT,
    extend_witnesses,
    prune_witnesses,
    shape_layouts,
)

DEFAULT_PHASE_CAP = 50_000


@dataclass(frozen=True)
class DetectionSummary:
    """Aggregate of a multi-run detection: decision plus total cost."""

    decision: str
    runs: int
    rounds_total: int
    max_edge_bits: int


def phase_count(k: int) -> int:
    """Independent color-coding phases needed for miss probability <= 1/3."""
    return math.ceil((k ** k) * math.log(3))


class ColorCodingPhase:
    """One phase of randomized detection as a node program.

    Requires the pattern labels to decrease away from the root (so the
    root is labeled k); activation wave c then only ever needs waves
    below c, which is what makes the k one-bit rounds sufficient.
    Round layout: ids, colors, then k activation waves.

    `fixed_colors` (node -> color) replaces the random draw, for traces.
    """

    def __init__(self, t: RootedPattern, fixed_colors: dict[int, int] | None = None):
        if not t.labels_decrease_from_root():
            raise InvalidParams("pattern labels must decrease away from the root")
        self.t = t
        self.k = t.k
        self.fixed_colors = fixed_colors
        self.logical_rounds = t.k + 2

    def init(self, node: int, neighbors, ctx) -> dict:
        if self.fixed_colors is not None:
            color = self.fixed_colors[node]
            if not 1 <= color <= self.k:
                raise InvalidParams(f"fixed color {color} outside [1, {self.k}]")
        else:
            stream = Stream(derive_stream_seed(ctx["seed"], node, ctx["trial"]))
            color = 1 + stream.below(self.k)
        return {
            "node": node,
            "neighbors": tuple(neighbors),
            "idw": ctx["id_width"],
            "color": color,
            "nbr_ids": None,
            "nbr_color": {},
            "active": False,
        }

    def step(self, st: dict, rnd: int, inbox: dict):
        idw = st["idw"]
        if rnd == 1:
            return st, encode_fields([st["node"]], idw), None
        if rnd == 2:
            st["nbr_ids"] = {v: FieldReader(msg, idw).read() for v, msg in inbox.items()}
            return st, encode_fields([st["color"] - 1], idw), None
        if rnd == 3:
            st["nbr_color"] = {
                v: FieldReader(msg, idw).read() + 1 for v, msg in inbox.items()
            }
            return st, "0", None
        wave = rnd - 3
        if st["color"] == wave:
            active = {v for v, msg in inbox.items() if msg == "1"}
            colors = st["nbr_color"]
            if all(
                any(colors.get(v) == c and v in active for v in st["neighbors"])
                for c in self.t.children[wave]
            ):
                st["active"] = True
        if rnd == self.k + 3:
            verdict = REJECT if (st["color"] == self.k and st["active"]) else ACCEPT
            return st, None, verdict
        return st, "1" if st["active"] else "0", None


def randomized_phase(
    g: Graph,
    t: RootedPattern,
    seed: int,
    trial: int = 0,
    budget: BandwidthBudget | None = None,
    fixed_colors: dict[int, int] | None = None,
) -> RunReport:
    """Run a single color-coding phase; rejects only if a copy was hit."""
    program = ColorCodingPhase(t, fixed_colors=fixed_colors)
    return run(g, program, budget=budget, max_rounds=t.k + 3, seed=seed, trial=trial)


def randomized_tree_detection(
    g: Graph,
    t: RootedPattern,
    seed: int,
    budget: BandwidthBudget | None = None,
    phase_cap: int = DEFAULT_PHASE_CAP,
) -> DetectionSummary:
    """Repeat color-coding phases until one rejects or the budget is spent.

    Never rejects a T-free graph.  If the graph contains T, the phase
    count keeps the probability of accepting anyway below 1/3.
    """
    if t.k > g.n:
        return DetectionSummary(decision=ACCEPT, runs=0, rounds_total=0, max_edge_bits=0)
    phases = phase_count(t.k)
    if phases > phase_cap:
        raise IterationBudgetExceeded(
            f"k={t.k} needs {phases} phases, cap is {phase_cap}"
        )
    canon = t.relabel_bfs_decreasing()
    program = ColorCodingPhase(canon)
    rounds = 0
    max_bits = 0
    for i in range(phases):
        rep = run(g, program, budget=budget, max_rounds=t.k + 3, seed=seed, trial=i)
        rounds += rep.rounds_used
        max_bits = max(max_bits, rep.max_edge_bits)
        if rep.decision == REJECT:
            return DetectionSummary(REJECT, runs=i + 1, rounds_total=rounds, max_edge_bits=max_bits)
    return DetectionSummary(ACCEPT, runs=phases, rounds_total=rounds, max_edge_bits=max_bits)


class ShapeExchangeProgram:
    """Deterministic detection: batched bottom-up witness-table exchange.

    Logical round t handles every shape of depth t.  The tables for
    depth t are computed once all depth < t tables have arrived, then
    broadcast over ceil(U_t / fields_per_chunk) physical rounds, where
    U_t is the worst-case field count of the depth-t batch.  U_t is a
    function of the pattern alone, so the schedule is known to every
    node up front and the total round count is independent of n.

    With `anchor=(x, y)` the search is constrained: a node is admitted
    as the image of label L only if it is adjacent to the anchor ends
    that `cross` requires for L, and the anchor nodes themselves are
    admitted nowhere.  `participants` restricts who takes part at all.
    """

    def __init__(
        self,
        t: RootedPattern,
        id_width: int,
        budget_bits: int,
        anchor: tuple[int, int] | None = None,
        cross: dict[int, tuple[str, ...]] | None = None,
        participants: frozenset[int] | None = None,
        enum_limit: int = DEFAULT_ENUM_LIMIT,
        prune_method: str = "auto",
        prune_observer=None,
        extra_prefix_fields: int = 0,
    ):
        self.t = t
        self.k = t.k
        self.layouts = shape_layouts(t)
        self.fw = id_width
        self.fields_per_chunk = budget_bits // id_width
        if self.fields_per_chunk < 1:
            raise InvalidParams(
                "budget below one id field per round; raise the bandwidth multiplier"
            )
        self.anchor = anchor
        self.cross = cross or {}
        self.participants = participants
        self.enum_limit = enum_limit
        self.prune_method = prune_method
        self.prune_observer = prune_observer

        by_depth: dict[int, list[int]] = {}
        for label, d in t.shapes():
            by_depth.setdefault(d, []).append(label)
        self.count_fields = {
            label: max(1, -(-self.layouts[label].bound.bit_length() // self.fw))
            for label in t.labels
        }
        self.blocks: list[tuple[int, ...]] = []
        self.starts: list[int] = []
        self.chunk_counts: list[int] = []
        start = 1
        for d in sorted(by_depth):
            labels = tuple(sorted(by_depth[d]))
            fields = extra_prefix_fields + sum(
                self.count_fields[l] + self.layouts[l].bound * self.layouts[l].size
                for l in labels
            )
            chunks = -(-fields // self.fields_per_chunk)
            self.blocks.append(labels)
            self.starts.append(start)
            self.chunk_counts.append(chunks)
            start += chunks
        self.final_round = start
        self.logical_rounds = len(self.blocks)
        self.block_at = {}
        for i, s in enumerate(self.starts):
            for r in range(s, s + self.chunk_counts[i]):
                self.block_at[r] = i

    # -- per-node behavior ---------------------------------------------------

    def init(self, node: int, neighbors, ctx) -> dict:
        participating = self.participants is None or node in self.participants
        return {
            "node": node,
            "nbrs": tuple(neighbors),
            "nbr_set": frozenset(neighbors),
            "own": {},
            "tables": {v: {} for v in neighbors},
            "buf": {v: [] for v in neighbors},
            "queue": [],
            "participating": participating,
        }

    def admitted(self, st: dict, label: int) -> bool:
        if self.anchor is None:
            return True
        node = st["node"]
        if node == self.anchor[0] or node == self.anchor[1]:
            return False
        for end in self.cross.get(label, ()):
            end_id = self.anchor[0] if end == "x" else self.anchor[1]
            if end_id not in st["nbr_set"]:
                return False
        return True

    def compute_block(self, st: dict, idx: int) -> None:
        node = st["node"]
        for label in self.blocks[idx]:
            layout = self.layouts[label]
            if not st["participating"] or not self.admitted(st, label):
                st["own"][label] = []
                continue
            if layout.size == 1:
                st["own"][label] = [(node,)]
                continue
            cands = {
                c: [
                    pair
                    for v in st["nbrs"]
                    for pair in st["tables"][v].get(c, ())
                ]
                for c in layout.children
            }
            raw = extend_witnesses(node, layout, cands, limit=self.enum_limit)
            table = prune_witnesses(raw, layout.size, self.k, method=self.prune_method)
            if len(table) > layout.bound:
                raise AssertionError(
                    f"table for shape {label} has {len(table)} > {layout.bound} entries"
                )
            if self.prune_observer is not None:
                self.prune_observer(node, label, raw, table, layout.size, self.k)
            st["own"][label] = table

    def block_prefix_fields(self, st: dict) -> list[int]:
        return []

    def payload_chunks(self, st: dict, idx: int) -> list[str]:
        fields = list(self.block_prefix_fields(st))
        force = bool(fields)
        content = False
        for label in self.blocks[idx]:
            table = st["own"].get(label, [])
            count = len(table)
            cf = self.count_fields[label]
            split = [(count >> (self.fw * (cf - 1 - i))) & ((1 << self.fw) - 1) for i in range(cf)]
            fields.extend(split)
            for a in table:
                fields.extend(a)
                content = True
        if not content and not force:
            return []
        payload = encode_fields(fields, self.fw)
        cap = self.fields_per_chunk * self.fw
        return [payload[i : i + cap] for i in range(0, len(payload), cap)]

    def parse_block(self, st: dict, idx: int) -> None:
        for v in st["nbrs"]:
            bits = "".join(st["buf"][v])
            st["buf"][v] = []
            if not bits:
                continue
            reader = FieldReader(bits, self.fw)
            if not self.consume_prefix(st, v, reader):
                continue
            for label in self.blocks[idx]:
                layout = self.layouts[label]
                cf = self.count_fields[label]
                count = 0
                for _ in range(cf):
                    count = (count << self.fw) | reader.read()
                if count > layout.bound:
                    raise ProtocolError(
                        f"neighbor {v} claims {count} witnesses for shape {label}"
                    )
                rows = []
                for _ in range(count):
                    a = tuple(reader.read_many(layout.size))
                    if a[0] != v:
                        raise ProtocolError(
                            f"witness from {v} rooted at {a[0]}"
                        )
                    rows.append((a, frozenset(a)))
                st["tables"][v][label] = rows

    def consume_prefix(self, st: dict, sender: int, reader: FieldReader) -> bool:
        """Hook for tagged variants; True means the block content is wanted."""
        return True

    def step(self, st: dict, rnd: int, inbox: dict):
        for v, msg in inbox.items():
            st["buf"][v].append(msg)
        idx = self.block_at.get(rnd)
        if idx is not None and rnd == self.starts[idx]:
            if idx > 0:
                self.parse_block(st, idx - 1)
            self.compute_block(st, idx)
            st["queue"] = self.payload_chunks(st, idx) if st["participating"] else []
        if rnd == self.final_round:
            self.parse_block(st, len(self.blocks) - 1)
            rejects = st["participating"] and bool(st["own"].get(self.t.root))
            return st, None, REJECT if rejects else ACCEPT
        out = st["queue"].pop(0) if st["queue"] else None
        return st, out, None


def deterministic_tree_detection(
    g: Graph,
    t: RootedPattern,
    budget: BandwidthBudget | None = None,
    reroot: bool = True,
    enum_limit: int = DEFAULT_ENUM_LIMIT,
    prune_method: str = "auto",
    prune_observer=None,
    inspector=None,
) -> RunReport:
    """Exact distributed tree detection; rejects iff T is a subgraph of g.

    The pattern is rerooted at its center by default, which minimizes
    the number of logical rounds (one per tree depth).
    """
    if budget is None:
        budget = BandwidthBudget.for_graph(g)
    tt = t.rerooted_at_center() if reroot else t
    if g.n == 0:
        return run(g, ShapeExchangeProgram(tt, 1, budget.bits_per_edge_per_round))
    program = ShapeExchangeProgram(
        tt,
        id_width=g.id_width,
        budget_bits=budget.bits_per_edge_per_round,
        enum_limit=enum_limit,
        prune_method=prune_method,
        prune_observer=prune_observer,
    )
    return run(
        g,
        program,
        budget=budget,
        max_rounds=program.final_round,
        inspector=inspector,
    )
