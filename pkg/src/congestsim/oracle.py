"""Brute-force sequential oracles for subgraph containment and farness.

These are the reference answers the distributed algorithms are tested
against, so they favor obvious correctness over speed: backtracking
search for containment, iterative-deepening edge deletion for distance
to freeness, and exact set packing over edge bitmasks when the host is
small enough.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import AnchorNotAnEdge, InvalidParams, PatternTooLarge, TooLarge
from .graph import Graph
from .patterns import HPattern, RootedPattern

DEFAULT_PATTERN_CAP = 10
_EMBED_CAP = 500_000


def _as_graph(h) -> Graph:
    if isinstance(h, Graph):
        return h
    if isinstance(h, RootedPattern):
        return h.to_graph()
    if isinstance(h, HPattern):
        return h.compile()[0]
    raise InvalidParams(f"not a pattern: {h!r}")


def _check_cap(hg: Graph, cap: int) -> None:
    if hg.n > cap:
        raise PatternTooLarge(f"pattern has {hg.n} nodes, oracle cap is {cap}")


def _pattern_order(hg: Graph) -> list[int]:
    """Order pattern nodes so each one touches as many placed nodes as possible."""
    remaining = set(hg.nodes)
    order: list[int] = []
    placed: set[int] = set()
    while remaining:
        nxt = max(
            remaining,
            key=lambda u: (sum(1 for v in hg.neighbors(u) if v in placed), hg.degree(u), -u),
        )
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)
    return order


def _iter_embeddings(g: Graph, hg: Graph, pinned=None, deleted=None, budget=_EMBED_CAP):
    """Yield injective edge-preserving maps pattern node -> host node.

    `pinned` fixes some pattern nodes up front; `deleted` is a set of host
    edges (as (min, max) pairs) treated as absent.  Containment here is
    plain subgraph containment, not induced.
    """
    pinned = pinned or {}
    deleted = deleted or frozenset()
    order = _pattern_order(hg)
    nodes = g.nodes
    assign: dict[int, int] = {}
    used: set[int] = set()
    visited = 0

    def alive(a: int, b: int) -> bool:
        return g.has_edge(a, b) and (min(a, b), max(a, b)) not in deleted

    def degree_ok(v: int, p: int) -> bool:
        if deleted:
            live = sum(1 for w in g.neighbors(v) if (min(v, w), max(v, w)) not in deleted)
            return live >= hg.degree(p)
        return g.degree(v) >= hg.degree(p)

    def rec(i: int):
        nonlocal visited
        if i == len(order):
            yield dict(assign)
            return
        p = order[i]
        earlier = [q for q in hg.neighbors(p) if q in assign]
        if p in pinned:
            pool = [pinned[p]]
        elif earlier:
            pool = g.neighbors(assign[earlier[0]])
        else:
            pool = nodes
        for v in pool:
            visited += 1
            if visited > budget:
                raise TooLarge("embedding enumeration exceeded the search cap")
            if v in used or not degree_ok(v, p):
                continue
            if any(not alive(v, assign[q]) for q in earlier):
                continue
            assign[p] = v
            used.add(v)
            yield from rec(i + 1)
            del assign[p]
            used.remove(v)

    yield from rec(0)


def _find_copy_edges(g: Graph, hg: Graph, deleted=None):
    """Edge set (as (min, max) pairs) of one embedding, or None."""
    for assign in _iter_embeddings(g, hg, deleted=deleted):
        return frozenset(
            (min(assign[a], assign[b]), max(assign[a], assign[b])) for a, b in hg.edges()
        )
    return None


def contains_subgraph(g: Graph, h, cap: int = DEFAULT_PATTERN_CAP) -> bool:
    """True iff a copy of the pattern appears in g (subgraph, not induced)."""
    hg = _as_graph(h)
    _check_cap(hg, cap)
    if hg.n > g.n:
        return False
    for _ in _iter_embeddings(g, hg):
        return True
    return False


def contains_h_at(g: Graph, h: HPattern, anchor, cap: int = DEFAULT_PATTERN_CAP) -> bool:
    """True iff a copy of h exists whose anchor pair (x, y) lands on `anchor`.

    The anchor is ordered: anchor[0] plays x and anchor[1] plays y.
    """
    a, b = anchor
    if not (g.has_node(a) and g.has_node(b)) or not g.has_edge(a, b):
        raise AnchorNotAnEdge(f"anchor {anchor} is not an edge of the graph")
    compiled, x_id, y_id = h.compile()
    _check_cap(compiled, cap)
    for _ in _iter_embeddings(g, compiled, pinned={x_id: a, y_id: b}):
        return True
    return False


def min_edges_to_h_free(
    g: Graph, h, cap: int = DEFAULT_PATTERN_CAP, max_m: int = 64
) -> int:
    """Minimum number of edge deletions after which g has no copy of h.

    Iterative deepening: at budget d, some edge of the first copy found
    must go, so branching over that copy's edges is exhaustive.
    """
    hg = _as_graph(h)
    _check_cap(hg, cap)
    if hg.m == 0:
        if contains_subgraph(g, hg, cap):
            raise InvalidParams("an edgeless pattern cannot be removed by edge deletions")
        return 0
    if g.m > max_m:
        raise TooLarge(f"host has {g.m} edges, exact deletion cap is {max_m}")

    def deletable(deleted: frozenset, budget: int, memo: dict) -> bool:
        key = (deleted, budget)
        if key in memo:
            return memo[key]
        copy = _find_copy_edges(g, hg, deleted)
        if copy is None:
            out = True
        elif budget == 0:
            out = False
        else:
            out = any(
                deletable(deleted | {e}, budget - 1, memo) for e in sorted(copy)
            )
        memo[key] = out
        return out

    for budget in range(g.m + 1):
        if deletable(frozenset(), budget, {}):
            return budget
    raise AssertionError("unreachable: deleting all edges removes every pattern with edges")


def h_free_deletion_set(g: Graph, h, cap: int = DEFAULT_PATTERN_CAP, max_m: int = 64):
    """A concrete minimum-size edge set whose removal makes g h-free."""
    hg = _as_graph(h)
    best = min_edges_to_h_free(g, hg, cap=cap, max_m=max_m)
    deleted: set = set()
    memo: dict = {}

    def deletable(dset: frozenset, budget: int) -> bool:
        key = (dset, budget)
        if key in memo:
            return memo[key]
        copy = _find_copy_edges(g, hg, dset)
        if copy is None:
            out = True
        elif budget == 0:
            out = False
        else:
            out = any(deletable(dset | {e}, budget - 1) for e in sorted(copy))
        memo[key] = out
        return out

    remaining = best
    while remaining:
        copy = _find_copy_edges(g, hg, frozenset(deleted))
        for e in sorted(copy):
            if deletable(frozenset(deleted | {e}), remaining - 1):
                deleted.add(e)
                remaining -= 1
                break
        else:
            raise AssertionError("deletion certificate construction lost its budget")
    return tuple(sorted(deleted))


@dataclass(frozen=True)
class PackingResult:
    """Edge-disjoint copy count; `exact` is False when it is only a lower bound."""

    count: int
    exact: bool


def count_edge_disjoint_copies(
    g: Graph, h, cap: int = DEFAULT_PATTERN_CAP, exact_m: int = 16
) -> PackingResult:
    """Maximum number of pairwise edge-disjoint copies of h in g.

    Exact (bitmask dynamic program over edge subsets) when g has at most
    `exact_m` edges; greedy extraction, reported as a lower bound, above
    that.
    """
    hg = _as_graph(h)
    _check_cap(hg, cap)
    if hg.m == 0:
        raise InvalidParams("edge-disjoint packing needs a pattern with edges")
    if g.m <= exact_m:
        edges = g.edges()
        idx = {e: i for i, e in enumerate(edges)}
        masks = set()
        for assign in _iter_embeddings(g, hg):
            mask = 0
            for a, b in hg.edges():
                e = (min(assign[a], assign[b]), max(assign[a], assign[b]))
                mask |= 1 << idx[e]
            masks.add(mask)
        masks = sorted(masks)
        memo: dict[int, int] = {}

        def best(avail: int) -> int:
            if avail in memo:
                return memo[avail]
            out = 0
            for cm in masks:
                if cm & ~avail == 0:
                    out = max(out, 1 + best(avail & ~cm))
            memo[avail] = out
            return out

        return PackingResult(count=best((1 << len(edges)) - 1), exact=True)
    deleted: set = set()
    count = 0
    while True:
        copy = _find_copy_edges(g, hg, frozenset(deleted))
        if copy is None:
            return PackingResult(count=count, exact=False)
        deleted |= copy
        count += 1
