"""Property testing of tree-plus-edge pattern freeness.

The pattern H consists of an anchor edge {x, y}, a rooted tree on k
labels, and cross edges joining anchors to tree labels.  One trial:

  * every edge is owned by its smaller endpoint, which draws it a rank
    uniform in [1, n^4] plus an orientation bit;
  * the minimum-rank candidate is flooded 2 (height + 1) hops; two
    distinct edges drawing the same rank discard each other (a
    tombstone floods instead);
  * nodes that know the winning candidate run the anchored tree search:
    a node may stand for tree label L only if it is adjacent to the
    anchor ends required by L's cross edges, and the anchor nodes
    themselves stand for nothing.  Search messages carry the candidate
    as a tag; hearing a tag with a smaller rank (or an equal-rank
    different edge) makes a node abort its own search.

A trial can only reject when an anchored copy of H exists, so H-free
graphs are never rejected.  On graphs eps-far from H-freeness, at
least eps * m / |E(H)| edge-disjoint copies exist, so the trial count
ceil(2 e^2 |E(H)| ln 3 / eps) brings the detection probability to 2/3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AnchorNotAnEdge, InvalidParams, TrialBudgetExceeded
from .graph import Graph
from .patterns import HPattern, X
from .rng import Stream, derive_stream_seed
from .simulator import ACCEPT, REJECT, BandwidthBudget, RunReport, run
from .treedetect import ShapeExchangeProgram
from .wire import FieldReader, encode_fields
from .witnesses import DEFAULT_ENUM_LIMIT

TAG_FIELDS = 7  # rank (4 fields) + edge endpoints (2) + flag bits (1)
DEFAULT_TRIAL_CAP = 5_000


def rank_bound(n: int) -> int:
    return n ** 4


def trial_count(h: HPattern, eps: float) -> int:
    """Trials for a 2/3 detection guarantee on eps-far graphs."""
    if not 0.0 < eps < 1.0:
        raise InvalidParams(f"eps must lie in (0, 1), got {eps}")
    return math.ceil(2 * math.e ** 2 * h.edge_count * math.log(3) / eps)


def hop_budget(tree_height: int) -> int:
    """Flood radius: far enough that every node of an anchored copy knows."""
    return 2 * (tree_height + 1)


def edge_lottery(g: Graph, seed: int, trial: int = 0) -> dict:
    """(rank, orientation) per edge, exactly as the owning nodes draw them."""
    draws = {}
    for u in g.nodes:
        owned = [v for v in g.neighbors(u) if v > u]
        if not owned:
            continue
        stream = Stream(derive_stream_seed(seed, u, trial))
        for v in owned:
            rank = 1 + stream.below(rank_bound(g.n))
            orient = stream.bit()
            draws[(u, v)] = (rank, orient)
    return draws


@dataclass(frozen=True)
class Candidate:
    edge: tuple[int, int]
    rank: int
    orient: int

    @property
    def xy(self) -> tuple[int, int]:
        u, v = self.edge
        return (u, v) if self.orient == 0 else (v, u)


def select_candidate(g: Graph, seed: int, trial: int = 0) -> Candidate:
    """Sequential mirror of the distributed lottery: the minimum-rank edge.

    On a rank tie the simulation discards both edges; this mirror
    returns the lexicographically least for reporting purposes.
    """
    from .errors import EmptyGraph

    draws = edge_lottery(g, seed, trial)
    if not draws:
        raise EmptyGraph("candidate selection needs at least one edge")
    edge = min(draws, key=lambda e: (draws[e][0], e))
    rank, orient = draws[edge]
    return Candidate(edge=edge, rank=rank, orient=orient)


def _cross_map(h: HPattern) -> dict[int, tuple[str, ...]]:
    out: dict[int, tuple[str, ...]] = {}
    for end, label in h.cross:
        out.setdefault(label, ())
        out[label] = out[label] + (end,)
    return out


def constrained_tree_detection(
    g: Graph,
    h: HPattern,
    anchor: tuple[int, int],
    budget: BandwidthBudget | None = None,
    reroot: bool = True,
    enum_limit: int = DEFAULT_ENUM_LIMIT,
) -> RunReport:
    """One anchored search with a fixed, globally known anchor.

    Rejects iff g contains a copy of h whose anchor pair lands exactly
    on `anchor` (in that orientation).  Only nodes within the flood
    radius of the anchor take part, mirroring the state a trial of the
    full tester reaches after its broadcast phase.
    """
    a, b = anchor
    if not (g.has_node(a) and g.has_node(b)) or not g.has_edge(a, b):
        raise AnchorNotAnEdge(f"anchor {anchor} is not an edge of the graph")
    if budget is None:
        budget = BandwidthBudget.for_graph(g)
    tt = h.tree.rerooted_at_center() if reroot else h.tree
    ball = g.distances_from([a, b])
    radius = hop_budget(tt.height)
    participants = frozenset(u for u, d in ball.items() if d <= radius)
    program = ShapeExchangeProgram(
        tt,
        id_width=g.id_width,
        budget_bits=budget.bits_per_edge_per_round,
        anchor=(a, b),
        cross=_cross_map(h),
        participants=participants,
        enum_limit=enum_limit,
    )
    return run(g, program, budget=budget, max_rounds=program.final_round)


class HTestTrialProgram(ShapeExchangeProgram):
    """One full tester trial: lottery, flood, tagged anchored search."""

    def __init__(
        self,
        h: HPattern,
        n: int,
        id_width: int,
        budget_bits: int,
        enum_limit: int = DEFAULT_ENUM_LIMIT,
    ):
        tt = h.tree.rerooted_at_center()
        super().__init__(
            tt,
            id_width=id_width,
            budget_bits=budget_bits,
            anchor=None,
            cross=_cross_map(h),
            enum_limit=enum_limit,
            extra_prefix_fields=TAG_FIELDS,
        )
        if self.fw < 2:
            raise InvalidParams("tester needs at least 2-bit fields")
        self.n = n
        self.rank_bound = rank_bound(n)
        self.hops = hop_budget(tt.height)
        self.bcast_chunks = -(-TAG_FIELDS // self.fields_per_chunk)
        offset = self.hops * self.bcast_chunks
        self.starts = [s + offset for s in self.starts]
        self.final_round += offset
        self.block_at = {}
        for i, s in enumerate(self.starts):
            for r in range(s, s + self.chunk_counts[i]):
                self.block_at[r] = i
        self.logical_rounds = self.hops + len(self.blocks)

    # -- candidate handling ----------------------------------------------

    def init(self, node: int, neighbors, ctx) -> dict:
        st = super().init(node, neighbors, ctx)
        st["bbuf"] = {v: [] for v in neighbors}
        st["bqueue"] = []
        st["item"] = None
        st["active"] = False
        st["anchor_xy"] = None
        st["anchor_edge"] = None
        st["rank"] = None
        st["seed"] = ctx["seed"]
        st["trial"] = ctx["trial"]
        return st

    @staticmethod
    def _merge_items(items):
        items = [it for it in items if it is not None]
        if not items:
            return None
        best = min(it[1] for it in items)
        front = [it for it in items if it[1] == best]
        edges = {(it[2], it[3]) for it in front if it[0] == "cand"}
        if any(it[0] == "tomb" for it in front) or len(edges) > 1:
            return ("tomb", best, 0, 0, 0)
        return next(it for it in front if it[0] == "cand")

    def _draw(self, st: dict) -> None:
        node = st["node"]
        owned = [v for v in st["nbrs"] if v > node]
        items = []
        if owned:
            stream = Stream(derive_stream_seed(st["seed"], node, st["trial"]))
            for v in owned:
                rank = 1 + stream.below(self.rank_bound)
                orient = stream.bit()
                items.append(("cand", rank, node, v, orient))
        st["item"] = self._merge_items(items)

    def _tag_fields(self, item) -> list[int]:
        kind, rank, u, v, orient = item
        mask = (1 << self.fw) - 1
        r = rank - 1
        fields = [(r >> (self.fw * (3 - i))) & mask for i in range(4)]
        flags = (2 if kind == "tomb" else 0) | orient
        fields += [u, v, flags]
        return fields

    def _parse_tag(self, reader):
        rank = 0
        for _ in range(4):
            rank = (rank << self.fw) | reader.read()
        rank += 1
        u = reader.read()
        v = reader.read()
        flags = reader.read()
        kind = "tomb" if flags & 2 else "cand"
        return (kind, rank, u, v, flags & 1)

    def _bcast_payload(self, st: dict) -> list[str]:
        if st["item"] is None:
            return []
        payload = encode_fields(self._tag_fields(st["item"]), self.fw)
        cap = self.fields_per_chunk * self.fw
        return [payload[i : i + cap] for i in range(0, len(payload), cap)]

    def _merge_broadcast(self, st: dict) -> None:
        items = [st["item"]]
        for v in st["nbrs"]:
            bits = "".join(st["bbuf"][v])
            st["bbuf"][v] = []
            if bits:
                items.append(self._parse_tag(FieldReader(bits, self.fw)))
        st["item"] = self._merge_items(items)

    def _adopt_candidate(self, st: dict) -> None:
        item = st["item"]
        if item is None or item[0] == "tomb":
            st["active"] = False
            return
        _, rank, u, v, orient = item
        st["active"] = True
        st["rank"] = rank
        st["anchor_edge"] = (u, v)
        st["anchor_xy"] = (u, v) if orient == 0 else (v, u)

    # -- hooks into the shape exchange -------------------------------------

    def admitted(self, st: dict, label: int) -> bool:
        if not st["active"]:
            return False
        x, y = st["anchor_xy"]
        node = st["node"]
        if node == x or node == y:
            return False
        for end in self.cross.get(label, ()):
            end_id = x if end == X else y
            if end_id not in st["nbr_set"]:
                return False
        return True

    def block_prefix_fields(self, st: dict) -> list[int]:
        if not st["active"]:
            return []
        u, v = st["anchor_edge"]
        orient = 0 if st["anchor_xy"] == st["anchor_edge"] else 1
        return self._tag_fields(("cand", st["rank"], u, v, orient))

    def consume_prefix(self, st: dict, sender: int, reader) -> bool:
        kind, rank, u, v, _ = self._parse_tag(reader)
        if not st["active"]:
            return False
        if kind == "tomb":
            return False
        if (u, v) == st["anchor_edge"] and rank == st["rank"]:
            return True
        if rank < st["rank"] or (rank == st["rank"] and (u, v) != st["anchor_edge"]):
            st["active"] = False
            st["own"] = {label: [] for label in self.t.labels}
        return False

    def step(self, st: dict, rnd: int, inbox: dict):
        offset = self.starts[0] - 1
        if rnd <= offset:
            for v, msg in inbox.items():
                st["bbuf"][v].append(msg)
            if rnd == 1:
                self._draw(st)
            hop_start = (rnd - 1) % self.bcast_chunks == 0
            if hop_start and rnd > 1:
                self._merge_broadcast(st)
            if hop_start:
                st["bqueue"] = self._bcast_payload(st)
            out = st["bqueue"].pop(0) if st["bqueue"] else None
            return st, out, None
        if rnd == self.starts[0]:
            for v, msg in inbox.items():
                st["bbuf"][v].append(msg)
            self._merge_broadcast(st)
            self._adopt_candidate(st)
            inbox = {}
        return super().step(st, rnd, inbox)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    candidate: tuple[int, int] | None
    rank: int | None
    decision: str
    rounds: int


@dataclass(frozen=True)
class TestResult:
    """Outcome of the full tester: decision plus per-trial instrumentation."""

    decision: str
    trials_run: int
    trials_planned: int
    rounds_total: int
    max_edge_bits: int
    records: tuple[TrialRecord, ...]


def test_h_freeness(
    g: Graph,
    h: HPattern,
    eps: float,
    seed: int,
    budget: BandwidthBudget | None = None,
    trial_cap: int = DEFAULT_TRIAL_CAP,
    enum_limit: int = DEFAULT_ENUM_LIMIT,
) -> TestResult:
    """Distributed one-sided tester for freeness of a tree-plus-edge pattern.

    Accepts every h-free graph on every seed.  Rejects graphs that are
    eps-far from h-free (more than eps * m edge deletions needed) with
    probability at least 2/3.  Trials stop early at the first reject.
    """
    trials = trial_count(h, eps)
    if trials > trial_cap:
        raise TrialBudgetExceeded(f"needs {trials} trials, cap is {trial_cap}")
    if g.n < h.node_count or g.m == 0:
        return TestResult(
            decision=ACCEPT,
            trials_run=0,
            trials_planned=trials,
            rounds_total=0,
            max_edge_bits=0,
            records=(),
        )
    if budget is None:
        budget = BandwidthBudget.for_graph(g)
    program = HTestTrialProgram(
        h,
        n=g.n,
        id_width=g.id_width,
        budget_bits=budget.bits_per_edge_per_round,
        enum_limit=enum_limit,
    )
    records = []
    rounds = 0
    max_bits = 0
    for i in range(trials):
        rep = run(
            g,
            program,
            budget=budget,
            max_rounds=program.final_round,
            seed=seed,
            trial=i,
        )
        cand = select_candidate(g, seed, i)
        records.append(
            TrialRecord(
                trial=i,
                candidate=cand.edge,
                rank=cand.rank,
                decision=rep.decision,
                rounds=rep.rounds_used,
            )
        )
        rounds += rep.rounds_used
        max_bits = max(max_bits, rep.max_edge_bits)
        if rep.decision == REJECT:
            return TestResult(
                decision=REJECT,
                trials_run=i + 1,
                trials_planned=trials,
                rounds_total=rounds,
                max_edge_bits=max_bits,
                records=tuple(records),
            )
    return TestResult(
        decision=ACCEPT,
        trials_run=trials,
        trials_planned=trials,
        rounds_total=rounds,
        max_edge_bits=max_bits,
        records=tuple(records),
    )
