"""Simple undirected graphs: validation, text I/O, and instance generators.

Graph text format (exact):
  * one edge per line, two whitespace-separated non-negative integers "u v"
  * '#' starts a comment that runs to the end of the line
  * blank lines are ignored
  * an optional header line "n m" may appear as the first data line; the
    first data line is read as a header when (and only when) treating it
    as "n m" is consistent: n > 0, exactly m edge lines follow, and every
    id on them is below n.  Otherwise it is read as an edge.

Every graph is simple: no self loops, no parallel edges, ids are distinct
non-negative integers (not necessarily contiguous).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import InvalidGraph, InvalidParams, ParseError


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    `adjacency` maps every node to its sorted neighbor tuple and must be
    symmetric; constructing via `from_edges` is usually easier.
    """

    nodes: tuple[int, ...]
    adjacency: dict[int, tuple[int, ...]] = field(hash=False)
    _adj: dict[int, frozenset[int]] = field(init=False, repr=False, compare=False)
    _m: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        for u in self.nodes:
            if not isinstance(u, int) or u < 0:
                raise InvalidGraph(f"node id {u!r} is not a non-negative integer")
            if u in seen:
                raise InvalidGraph(f"duplicate node id {u}")
            seen.add(u)
        if set(self.adjacency) != seen:
            raise InvalidGraph("adjacency keys do not match the node set")
        adj = {}
        m2 = 0
        for u, nbrs in self.adjacency.items():
            s = frozenset(nbrs)
            if len(s) != len(nbrs):
                raise InvalidGraph(f"parallel edge at node {u}")
            if u in s:
                raise InvalidGraph(f"self loop at node {u}")
            if not s <= seen:
                raise InvalidGraph(f"node {u} has a neighbor outside the node set")
            adj[u] = s
            m2 += len(s)
        for u, s in adj.items():
            for v in s:
                if u not in adj[v]:
                    raise InvalidGraph(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        object.__setattr__(
            self, "adjacency", {u: tuple(sorted(self.adjacency[u])) for u in self.nodes}
        )
        object.__setattr__(self, "_adj", adj)
        object.__setattr__(self, "_m", m2 // 2)

    @classmethod
    def from_edges(cls, edges, extra_nodes=()) -> "Graph":
        adj: dict[int, set[int]] = {int(u): set() for u in extra_nodes}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidGraph(f"self loop at node {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls(
            nodes=tuple(adj),
            adjacency={u: tuple(sorted(vs)) for u, vs in adj.items()},
        )

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return self._m

    @property
    def max_id(self) -> int:
        if not self.nodes:
            raise InvalidGraph("empty graph has no ids")
        return self.nodes[-1]

    @property
    def id_width(self) -> int:
        """Bits needed to write any node id of this graph."""
        return max(1, self.max_id.bit_length())

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def neighbor_set(self, u: int) -> frozenset[int]:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_node(self, u: int) -> bool:
        return u in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, frozenset())

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges as (min, max) pairs."""
        return [(u, v) for u in self.nodes for v in self.adjacency[u] if u < v]

    def without_nodes(self, drop) -> "Graph":
        drop = set(drop)
        keep = [u for u in self.nodes if u not in drop]
        return Graph(
            nodes=tuple(keep),
            adjacency={u: tuple(v for v in self.adjacency[u] if v not in drop) for u in keep},
        )

    def without_edges(self, edges) -> "Graph":
        forbidden = {(min(u, v), max(u, v)) for u, v in edges}
        kept = [e for e in self.edges() if e not in forbidden]
        return Graph.from_edges(kept, extra_nodes=self.nodes)

    def relabeled(self, mapping: dict[int, int]) -> "Graph":
        if set(mapping) != set(self.nodes):
            raise InvalidParams("relabel mapping must cover exactly the node set")
        if len(set(mapping.values())) != len(mapping):
            raise InvalidParams("relabel mapping must be injective")
        return Graph(
            nodes=tuple(mapping[u] for u in self.nodes),
            adjacency={
                mapping[u]: tuple(sorted(mapping[v] for v in self.adjacency[u]))
                for u in self.nodes
            },
        )

    def distances_from(self, sources) -> dict[int, int]:
        """BFS hop counts from a set of source nodes; unreachable nodes absent."""
        dist = {s: 0 for s in sources}
        frontier = list(dist)
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in self.adjacency[u]:
                    if v not in dist:
                        dist[v] = d
                        nxt.append(v)
            frontier = nxt
        return dist


# ---------------------------------------------------------------------------
# small builders


def path_graph(k: int) -> Graph:
    if k < 1:
        raise InvalidParams("path needs at least one node")
    return Graph.from_edges([(i, i + 1) for i in range(k - 1)], extra_nodes=range(k))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise InvalidParams("cycle needs at least three nodes")
    return Graph.from_edges([(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    if k < 1:
        raise InvalidParams("complete graph needs at least one node")
    return Graph.from_edges(itertools.combinations(range(k), 2), extra_nodes=range(k))


def star_graph(leaves: int) -> Graph:
    if leaves < 0:
        raise InvalidParams("negative leaf count")
    return Graph.from_edges([(0, i + 1) for i in range(leaves)], extra_nodes=[0])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise InvalidParams("negative side size")
    return Graph.from_edges(
        [(i, a + j) for i in range(a) for j in range(b)], extra_nodes=range(a + b)
    )


def matching_graph(pairs: int) -> Graph:
    if pairs < 0:
        raise InvalidParams("negative pair count")
    return Graph.from_edges([(2 * i, 2 * i + 1) for i in range(pairs)])


def disjoint_union(graphs) -> Graph:
    """Relabel the inputs onto 0..N-1 and take their disjoint union."""
    edges = []
    nodes = []
    offset = 0
    for g in graphs:
        order = {u: offset + i for i, u in enumerate(g.nodes)}
        nodes.extend(order.values())
        edges.extend((order[u], order[v]) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(edges, extra_nodes=nodes)


# ---------------------------------------------------------------------------
# text I/O


def parse_graph(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}") from None
        if a < 0 or b < 0:
            raise ParseError(f"line {lineno}: negative id")
        rows.append((a, b))
    if not rows:
        return Graph.from_edges([])
    head_n, head_m = rows[0]
    body = rows[1:]
    header_ok = (
        head_n > 0
        and len(body) == head_m
        and all(u < head_n and v < head_n for u, v in body)
    )
    if header_ok:
        return Graph.from_edges(body, extra_nodes=range(head_n))
    return Graph.from_edges(rows)


def dump_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}" if g.n else "# empty graph"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(g))


# ---------------------------------------------------------------------------
# generators (host graphs and planted instances)


def gen_gnm(n: int, m: int, seed: int) -> Graph:
    """Uniform simple graph with n nodes (ids 0..n-1) and exactly m edges."""
    if n < 0:
        raise InvalidParams("negative node count")
    cap = n * (n - 1) // 2
    if m < 0 or m > cap:
        raise InvalidParams(f"edge count {m} outside [0, {cap}]")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    return Graph.from_edges(rng.sample(pairs, m), extra_nodes=range(n))


def gen_planted(n: int, m: int, pattern: Graph, seed: int) -> Graph:
    """Random n-node m-edge host that contains `pattern` as a subgraph.

    A uniform host is drawn, the pattern is injected on a random node
    subset, and for every pattern edge that was missing one non-pattern
    edge is removed so the edge count stays exactly m.
    """
    if pattern.n > n:
        raise InvalidParams("pattern has more nodes than the host")
    if pattern.m > m:
        raise InvalidParams("pattern has more edges than the host")
    cap = n * (n - 1) // 2
    if m > cap:
        raise InvalidParams(f"edge count {m} outside [0, {cap}]")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    host = set(rng.sample(pairs, m))
    spots = rng.sample(range(n), pattern.n)
    where = {p: spots[i] for i, p in enumerate(pattern.nodes)}
    copy = {
        (min(where[u], where[v]), max(where[u], where[v])) for u, v in pattern.edges()
    }
    missing = copy - host
    spare = sorted(host - copy)
    removed = set(rng.sample(spare, len(missing)))
    edges = (host - removed) | copy
    return Graph.from_edges(edges, extra_nodes=range(n))


def pattern_free_host(n: int, k: int) -> Graph:
    """n-node graph with no k-node tree subgraph: disjoint cliques of size k-1.

    Every connected component has fewer than k nodes, so no connected
    k-node pattern fits.  Leftover nodes (n mod (k-1)) stay isolated.
    """
    if k < 2:
        raise InvalidParams("no nonempty host avoids the one-node tree")
    if n < 0:
        raise InvalidParams("negative node count")
    size = k - 1
    edges = []
    for start in range(0, n - size + 1, size):
        edges.extend(itertools.combinations(range(start, start + size), 2))
    return Graph.from_edges(edges, extra_nodes=range(n))


def scramble_ids(g: Graph, seed: int) -> Graph:
    """Relabel onto random distinct ids drawn from [0, n^4).

    Stress-tests that nothing depends on ids being contiguous; the id
    width grows to about 4x the packed width, so callers may need a
    larger bandwidth multiplier.
    """
    if g.n == 0:
        return g
    rng = random.Random(seed)
    fresh = rng.sample(range(g.n ** 4), g.n)
    return g.relabeled({u: fresh[i] for i, u in enumerate(g.nodes)})
