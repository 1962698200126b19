"""Round-synchronous message passing with a per-edge bit budget.

A node program is an object with two methods:

    init(node, neighbors, ctx) -> state
    step(state, rnd, inbox) -> (state, outbox, output)

Rounds are numbered from 1.  `inbox` maps sender id -> bit string for
messages sent in the previous round; `outbox` maps neighbor id -> bit
string (or is a single string, meaning the same message to every
neighbor, or None).  A node finishes by returning a non-None output
("accept" or "reject"); from that point it sends nothing and its step
function is not called again.  Steps must be pure functions of
(state, rnd, inbox): node evaluation order within a round is
unspecified.

`ctx` carries the run-level constants every node may know: n, max_id,
id_width, budget_bits, seed, trial, plus driver extras.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    InvalidParams,
    ProtocolError,
    RoundLimitExceeded,
)
from .graph import Graph

ACCEPT = "accept"
REJECT = "reject"

DEFAULT_MULTIPLIER = 4
DEFAULT_MAX_ROUNDS = 100_000


def log2_ceil(n: int) -> int:
    """ceil(log2 n) for n >= 1, with the n = 1 case pinned to 1 bit."""
    if n < 1:
        raise InvalidParams("need a positive argument")
    return max(1, (n - 1).bit_length())


@dataclass(frozen=True)
class BandwidthBudget:
    bits_per_edge_per_round: int

    def __post_init__(self):
        if self.bits_per_edge_per_round < 1:
            raise InvalidParams("budget must allow at least one bit per round")

    @classmethod
    def for_n(cls, n: int, multiplier: int = DEFAULT_MULTIPLIER) -> "BandwidthBudget":
        if multiplier < 1:
            raise InvalidParams("multiplier must be at least 1")
        return cls(bits_per_edge_per_round=multiplier * log2_ceil(max(1, n)))

    @classmethod
    def for_graph(cls, g: Graph, multiplier: int = DEFAULT_MULTIPLIER) -> "BandwidthBudget":
        return cls.for_n(g.n, multiplier)


@dataclass(frozen=True)
class RunReport:
    """What one simulation did: the decision plus cost instrumentation."""

    decision: str
    rounds_used: int
    max_edge_bits: int
    per_round_max_bits: tuple[int, ...]
    fragmentation_factor: float
    outputs: dict[int, str]
    seed: int
    trial: int

    def to_text(self, include_outputs: bool = False) -> str:
        lines = [
            f"decision: {self.decision}",
            f"rounds_used: {self.rounds_used}",
            f"max_edge_bits: {self.max_edge_bits}",
            f"fragmentation_factor: {self.fragmentation_factor:.4f}",
            f"seed: {self.seed}",
            f"trial: {self.trial}",
        ]
        if include_outputs:
            lines.append(
                "outputs: "
                + " ".join(f"{u}={self.outputs[u]}" for u in sorted(self.outputs))
            )
        return "\n".join(lines) + "\n"


def run(
    g: Graph,
    program,
    budget: BandwidthBudget | None = None,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    seed: int = 0,
    trial: int = 0,
    extras: dict | None = None,
    inspector=None,
    order=None,
) -> RunReport:
    """Run `program` on every node of g until all nodes have output.

    The graph decision is "reject" iff at least one node rejected.
    `inspector(rnd, states, outputs)` is called after each round's
    delivery, for white-box tests.  `order` overrides the node
    evaluation order (a permutation of the nodes); results must not
    depend on it.
    """
    if budget is None:
        budget = BandwidthBudget.for_graph(g)
    cap = budget.bits_per_edge_per_round
    if g.n and cap < log2_ceil(g.n):
        raise InvalidParams("budget below ceil(log2 n) bits per edge per round")
    nodes = list(g.nodes)
    if order is None:
        order = nodes
    else:
        order = list(order)
        if sorted(order) != nodes:
            raise InvalidParams("order must be a permutation of the node set")
    ctx = {
        "n": g.n,
        "max_id": g.max_id if g.n else 0,
        "id_width": g.id_width if g.n else 1,
        "budget_bits": cap,
        "seed": seed,
        "trial": trial,
    }
    if extras:
        ctx.update(extras)
    states = {u: program.init(u, g.neighbors(u), ctx) for u in nodes}
    outputs: dict[int, str] = {}
    inboxes: dict[int, dict[int, str]] = {u: {} for u in nodes}
    per_round_max: list[int] = []
    neighbor_sets = {u: g.neighbor_set(u) for u in nodes}

    def finish(rounds_used: int) -> RunReport:
        decision = REJECT if REJECT in outputs.values() else ACCEPT
        logical = getattr(program, "logical_rounds", None)
        frag = rounds_used / logical if logical else 1.0
        return RunReport(
            decision=decision,
            rounds_used=rounds_used,
            max_edge_bits=max(per_round_max, default=0),
            per_round_max_bits=tuple(per_round_max),
            fragmentation_factor=frag,
            outputs=dict(outputs),
            seed=seed,
            trial=trial,
        )

    if not nodes:
        return finish(0)
    for rnd in range(1, max_rounds + 1):
        fresh: dict[int, dict[int, str]] = {u: {} for u in nodes}
        rmax = 0
        for u in order:
            if u in outputs:
                continue
            state, outbox, verdict = program.step(states[u], rnd, inboxes[u])
            states[u] = state
            if verdict is not None:
                if verdict not in (ACCEPT, REJECT):
                    raise ProtocolError(f"node {u} output {verdict!r}")
                outputs[u] = verdict
                continue
            if not outbox:
                continue
            if isinstance(outbox, str):
                outbox = {v: outbox for v in g.neighbors(u)}
            for v, msg in outbox.items():
                if not msg:
                    continue
                if v not in neighbor_sets[u]:
                    raise ProtocolError(f"node {u} sent to non-neighbor {v}")
                if len(msg) > cap:
                    raise BudgetExceeded(
                        f"node {u} sent {len(msg)} bits to {v}, budget is {cap}"
                    )
                if rmax < len(msg):
                    rmax = len(msg)
                fresh[v][u] = msg
        per_round_max.append(rmax)
        inboxes = fresh
        if inspector is not None:
            inspector(rnd, states, outputs)
        if len(outputs) == len(nodes):
            return finish(rnd)
    raise RoundLimitExceeded(f"no decision after {max_rounds} rounds")
