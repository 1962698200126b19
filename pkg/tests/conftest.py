"""Shared fixtures and enumeration helpers for the test suite."""
from __future__ import annotations

import itertools

from congestsim.graph import Graph
from congestsim.patterns import RootedPattern, tree_pattern


def all_graphs(n: int):
    """Every simple graph on nodes 0..n-1 (2^C(n,2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for r in range(len(pairs) + 1):
        for edges in itertools.combinations(pairs, r):
            yield Graph.from_edges(edges, extra_nodes=range(n))


def all_rooted_trees(kmax: int) -> list[RootedPattern]:
    """All rooted trees with at most kmax nodes, up to rooted isomorphism.

    Enumerates increasing parent maps (parent[i] < i, root 1), which hit
    every rooted shape, then dedupes by a canonical children form.
    """
    found: dict = {}

    def canon(t: RootedPattern, label: int):
        return tuple(sorted(canon(t, c) for c in t.children[label]))

    def keep(t: RootedPattern) -> None:
        found.setdefault((t.k, canon(t, t.root)), t)

    keep(tree_pattern(1, {}))
    for k in range(2, kmax + 1):
        for parents in itertools.product(*(range(1, i) for i in range(2, k + 1))):
            keep(tree_pattern(1, {i + 2: p for i, p in enumerate(parents)}))
    return list(found.values())


def spider5() -> RootedPattern:
    """Five-node tree with mixed depths: a leaf and a cherry under the root."""
    return tree_pattern(1, {2: 1, 3: 1, 4: 3, 5: 3})
