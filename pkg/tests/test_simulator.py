"""Tests for the synchronous message-passing simulator."""
import random

import pytest

from congestsim.errors import BudgetExceeded, InvalidParams, ProtocolError, RoundLimitExceeded
from congestsim.graph import Graph, cycle_graph, gen_gnm, path_graph
from congestsim.simulator import ACCEPT, REJECT, BandwidthBudget, log2_ceil, run
from congestsim.wire import encode_fields


class FloodIds:
    """Round 1: broadcast own id.  Round 2: record inbox and accept."""

    logical_rounds = 2

    def init(self, node, neighbors, ctx):
        return {"node": node, "w": ctx["id_width"], "heard": None}

    def step(self, st, rnd, inbox):
        if rnd == 1:
            return st, encode_fields([st["node"]], st["w"]), None
        st["heard"] = {v: int(bits, 2) for v, bits in inbox.items()}
        return st, None, ACCEPT


class Silent:
    def init(self, node, neighbors, ctx):
        return {}

    def step(self, st, rnd, inbox):
        return st, None, None


def test_flood_delivers_to_all_neighbors():
    g = cycle_graph(5)
    seen = {}

    def inspect(rnd, states, outputs):
        if rnd == 2:
            seen.update({u: s["heard"] for u, s in states.items()})

    rep = run(g, FloodIds(), inspector=inspect)
    assert rep.decision == ACCEPT
    assert rep.rounds_used == 2
    assert rep.max_edge_bits == g.id_width
    assert rep.fragmentation_factor == 1.0
    for u in g.nodes:
        assert seen[u] == {v: v for v in g.neighbors(u)}


def test_empty_graph_accepts_immediately():
    rep = run(Graph.from_edges([]), FloodIds())
    assert rep.decision == ACCEPT and rep.rounds_used == 0


def test_one_reject_decides_the_run():
    class RejectOne:
        def init(self, node, neighbors, ctx):
            return {"node": node}

        def step(self, st, rnd, inbox):
            return st, None, REJECT if st["node"] == 2 else ACCEPT

    rep = run(path_graph(4), RejectOne())
    assert rep.decision == REJECT
    assert rep.outputs[2] == REJECT and rep.outputs[0] == ACCEPT


def test_budget_is_enforced():
    class TooChatty:
        def init(self, node, neighbors, ctx):
            return {"cap": ctx["budget_bits"]}

        def step(self, st, rnd, inbox):
            return st, "1" * (st["cap"] + 1), None

    with pytest.raises(BudgetExceeded):
        run(path_graph(3), TooChatty())


def test_sending_to_non_neighbor_is_an_error():
    class Wild:
        def init(self, node, neighbors, ctx):
            return {}

        def step(self, st, rnd, inbox):
            return st, {99: "1"}, None

    with pytest.raises(ProtocolError):
        run(path_graph(3), Wild())


def test_unknown_verdict_is_an_error():
    class Mumbles:
        def init(self, node, neighbors, ctx):
            return {}

        def step(self, st, rnd, inbox):
            return st, None, "maybe"

    with pytest.raises(ProtocolError):
        run(path_graph(3), Mumbles())


def test_round_limit():
    with pytest.raises(RoundLimitExceeded):
        run(path_graph(3), Silent(), max_rounds=10)


def test_budget_must_cover_one_id():
    with pytest.raises(InvalidParams):
        run(gen_gnm(16, 20, seed=0), FloodIds(), budget=BandwidthBudget(2))


def test_finished_nodes_stop_stepping():
    calls = []

    class OneShot:
        def init(self, node, neighbors, ctx):
            return {"node": node}

        def step(self, st, rnd, inbox):
            calls.append((st["node"], rnd))
            if st["node"] == 0:
                return st, None, ACCEPT
            return st, None, ACCEPT if rnd == 3 else None

    run(path_graph(3), OneShot())
    assert (0, 1) in calls and (0, 2) not in calls


def test_order_does_not_change_the_report():
    from congestsim.c4 import C4Program

    g = gen_gnm(14, 24, seed=11)
    base = run(g, C4Program(g.n))
    rng = random.Random(0)
    for _ in range(3):
        order = list(g.nodes)
        rng.shuffle(order)
        assert run(g, C4Program(g.n), order=order) == base


def test_order_must_be_a_permutation():
    g = path_graph(3)
    with pytest.raises(InvalidParams):
        run(g, FloodIds(), order=[0, 1])


def test_budget_for_n():
    assert BandwidthBudget.for_n(16).bits_per_edge_per_round == 16
    assert BandwidthBudget.for_n(17).bits_per_edge_per_round == 20
    assert BandwidthBudget.for_n(16, multiplier=2).bits_per_edge_per_round == 8


def test_log2_ceil_values():
    assert [log2_ceil(n) for n in (1, 2, 3, 4, 16, 17, 256)] == [1, 1, 2, 2, 4, 5, 8]


def test_report_to_text_mentions_decision():
    rep = run(cycle_graph(4), FloodIds())
    text = rep.to_text()
    assert "accept" in text and "rounds" in text
