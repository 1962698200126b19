"""Witness tables for rooted-shape search.

For a rooted tree pattern, the shape at label L is the subtree hanging
below L.  A witness for shape L at node u is an injective assignment of
the shape's labels to graph nodes, written in preorder with u first,
where consecutive labels map to adjacent nodes.  Tables are built
bottom-up: a node glues one witness per child shape, drawn from its
neighbors' tables, around itself, then prunes the table down to a
representative subfamily so table sizes stay bounded by the pattern
size alone.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import EnumerationLimitExceeded, InvalidParams
from .graph import Graph
from .patterns import RootedPattern
from .repfamily import compact_representation, family, size_bound

DEFAULT_ENUM_LIMIT = 1_000_000


@dataclass(frozen=True)
class ShapeLayout:
    """Static facts about one shape: traversal order and table bound."""

    label: int
    depth: int
    size: int
    children: tuple[int, ...]
    preorder: tuple[int, ...]
    parent_pos: tuple[int, ...]
    bound: int


def table_bound(k: int, size: int) -> int:
    """Max table size after pruning: 1 for leaves, the family bound otherwise."""
    if size == 1:
        return 1
    return size_bound(size, k - size)


def shape_layouts(t: RootedPattern) -> dict[int, ShapeLayout]:
    layouts = {}
    for label in t.labels:
        pre = t.preorders[label]
        pos = {l: i for i, l in enumerate(pre)}
        parent_pos = tuple(pos[t.parent[l]] for l in pre[1:])
        layouts[label] = ShapeLayout(
            label=label,
            depth=t.depth[label],
            size=len(pre),
            children=t.children[label],
            preorder=pre,
            parent_pos=parent_pos,
            bound=table_bound(t.k, len(pre)),
        )
    return layouts


def assignment_ok(layout: ShapeLayout, assignment: tuple[int, ...], g: Graph) -> bool:
    """Injectivity plus adjacency along every shape edge."""
    if len(assignment) != layout.size or len(set(assignment)) != layout.size:
        return False
    return all(
        g.has_edge(assignment[i + 1], assignment[layout.parent_pos[i]])
        for i in range(layout.size - 1)
    )


def extend_witnesses(
    u: int,
    layout: ShapeLayout,
    candidates: dict[int, list],
    limit: int = DEFAULT_ENUM_LIMIT,
) -> list[tuple[int, ...]]:
    """Glue one candidate witness per child shape around u.

    `candidates[c]` holds (assignment, vertex_set) pairs pooled over all
    neighbors.  Glued witnesses must be pairwise disjoint and avoid u;
    duplicates by vertex set keep the lexicographically least assignment.
    The product of candidate list sizes is capped by `limit`.
    """
    total = 1
    for c in layout.children:
        total *= len(candidates.get(c, ()))
    if total > limit:
        raise EnumerationLimitExceeded(
            f"gluing at node {u} would enumerate {total} tuples (cap {limit})"
        )
    if total == 0:
        return []
    children = layout.children
    best: dict[frozenset[int], tuple[int, ...]] = {}

    def rec(i: int, parts: list, taken: frozenset[int]) -> None:
        if i == len(children):
            assignment = (u,) + tuple(x for part in parts for x in part)
            prev = best.get(taken)
            if prev is None or assignment < prev:
                best[taken] = assignment
            return
        for a, fs in candidates[children[i]]:
            if fs & taken:
                continue
            parts.append(a)
            rec(i + 1, parts, taken | fs)
            parts.pop()

    rec(0, [], frozenset((u,)))
    return sorted(best.values())


def prune_witnesses(
    assignments, p: int, k: int, method: str = "auto"
) -> list[tuple[int, ...]]:
    """Keep a (k - p)-representative subfamily of the witness vertex sets.

    Witnesses whose vertex set survives are kept (lexicographically least
    assignment per set); everything else is dropped.
    """
    if p < 1 or k < p:
        raise InvalidParams(f"bad sizes p={p} k={k}")
    by_set: dict[frozenset[int], tuple[int, ...]] = {}
    for a in sorted(assignments):
        by_set.setdefault(frozenset(a), a)
    if len(by_set) <= 1:
        return sorted(by_set.values())
    fam = family(by_set.keys())
    wit = compact_representation(fam, p, k - p, method=method)
    keep = set(wit.sets)
    return sorted(a for s, a in by_set.items() if s in keep)
