"""Rooted tree patterns and tree-plus-edge patterns.

A rooted tree pattern on k nodes uses labels 1..k.  A tree-plus-edge
pattern adds two anchor vertices named "x" and "y", the anchor edge
between them, and cross edges that each join one anchor to one tree
label.

Pattern text format (exact):
  * '#' starts a comment, blank lines are ignored
  * "root: L" gives the root label
  * "tree:" opens the edge section; each following line is "child parent"
    (k-1 lines for a k-node tree, zero lines for the one-node tree)
  * optional "anchor: x y" (literal tokens) turns the file into a
    tree-plus-edge pattern
  * optional "cross:" opens a section of lines "x L" or "y L"
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidParams, ParseError
from .graph import Graph, disjoint_union

X = "x"
Y = "y"


@dataclass(frozen=True)
class RootedPattern:
    """A rooted tree on labels 1..k with the child->parent map as identity."""

    root: int
    parent_edges: tuple[tuple[int, int], ...]
    parent: dict[int, int] = field(init=False, repr=False, compare=False)
    children: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)
    depth: dict[int, int] = field(init=False, repr=False, compare=False)
    preorders: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = len(self.parent_edges) + 1
        labels = set(range(1, k + 1))
        parent = {}
        for child, par in self.parent_edges:
            if child in parent:
                raise InvalidParams(f"label {child} has two parents")
            parent[child] = par
        if self.root in parent:
            raise InvalidParams("root cannot have a parent")
        used = set(parent) | set(parent.values()) | {self.root}
        if used != labels or len(parent) != k - 1:
            raise InvalidParams(f"labels must be exactly 1..{k}")
        for label in labels:
            hops, cur = 0, label
            while cur != self.root:
                cur = parent.get(cur)
                hops += 1
                if cur is None or hops > k:
                    raise InvalidParams("parent map does not form a tree on the root")
        children: dict[int, list[int]] = {label: [] for label in labels}
        for child, par in parent.items():
            children[par].append(child)
        children_t = {label: tuple(sorted(vs)) for label, vs in children.items()}
        depth: dict[int, int] = {}
        preorders: dict[int, tuple[int, ...]] = {}

        def build(label: int) -> None:
            order = [label]
            d = 0
            for c in children_t[label]:
                build(c)
                order.extend(preorders[c])
                d = max(d, depth[c] + 1)
            depth[label] = d
            preorders[label] = tuple(order)

        build(self.root)
        object.__setattr__(self, "parent_edges", tuple(sorted(self.parent_edges)))
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "children", children_t)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "preorders", preorders)

    @property
    def k(self) -> int:
        return len(self.parent_edges) + 1

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(range(1, self.k + 1))

    @property
    def height(self) -> int:
        return self.depth[self.root]

    def is_leaf(self, label: int) -> bool:
        return not self.children[label]

    def subtree_size(self, label: int) -> int:
        return len(self.preorders[label])

    def shapes(self) -> list[tuple[int, int]]:
        """(label, depth) for every rooted subtree, sorted by depth then label."""
        return sorted(((l, self.depth[l]) for l in self.labels), key=lambda s: (s[1], s[0]))

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.parent_edges, extra_nodes=self.labels)

    def reroot(self, new_root: int) -> "RootedPattern":
        if new_root not in self.parent:
            if new_root != self.root:
                raise InvalidParams(f"unknown label {new_root}")
            return self
        adj: dict[int, list[int]] = {l: [] for l in self.labels}
        for child, par in self.parent_edges:
            adj[child].append(par)
            adj[par].append(child)
        parent_edges = []
        stack = [new_root]
        seen = {new_root}
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    parent_edges.append((nxt, cur))
                    stack.append(nxt)
        return RootedPattern(root=new_root, parent_edges=tuple(sorted(parent_edges)))

    def center(self) -> int:
        """A label of minimum eccentricity in the tree, smallest on ties."""
        adj: dict[int, list[int]] = {l: [] for l in self.labels}
        for child, par in self.parent_edges:
            adj[child].append(par)
            adj[par].append(child)
        best_label, best_ecc = self.root, None
        for label in self.labels:
            dist = {label: 0}
            frontier = [label]
            while frontier:
                nxt = []
                for u in frontier:
                    for v in adj[u]:
                        if v not in dist:
                            dist[v] = dist[u] + 1
                            nxt.append(v)
                frontier = nxt
            ecc = max(dist.values())
            if best_ecc is None or ecc < best_ecc or (ecc == best_ecc and label < best_label):
                best_label, best_ecc = label, ecc
        return best_label

    def rerooted_at_center(self) -> "RootedPattern":
        return self.reroot(self.center())

    def relabel_bfs_decreasing(self) -> "RootedPattern":
        """Relabel so the root gets k and labels strictly decrease away from it."""
        order = [self.root]
        queue = [self.root]
        while queue:
            nxt = []
            for label in queue:
                nxt.extend(self.children[label])
            order.extend(sorted(nxt))
            queue = sorted(nxt)
        fresh = {label: self.k - i for i, label in enumerate(order)}
        edges = tuple(sorted((fresh[c], fresh[p]) for c, p in self.parent_edges))
        return RootedPattern(root=self.k, parent_edges=edges)

    def labels_decrease_from_root(self) -> bool:
        return all(par > child for child, par in self.parent.items())


def tree_pattern(root: int, parent: dict[int, int]) -> RootedPattern:
    return RootedPattern(root=root, parent_edges=tuple(sorted(parent.items())))


def path_pattern(k: int, root: int | None = None) -> RootedPattern:
    """Path 1-2-..-k rooted at `root` (default: an end)."""
    if k < 1:
        raise InvalidParams("need at least one node")
    p = tree_pattern(1, {i: i - 1 for i in range(2, k + 1)})
    return p if root in (None, 1) else p.reroot(root)


def star_pattern(leaves: int) -> RootedPattern:
    """Star with the hub rooted; labels 1..leaves are the leaves."""
    if leaves < 0:
        raise InvalidParams("negative leaf count")
    hub = leaves + 1
    return tree_pattern(hub, {i: hub for i in range(1, leaves + 1)})


@dataclass(frozen=True)
class HPattern:
    """Anchor edge {x, y} plus a rooted tree plus anchor-to-tree cross edges."""

    tree: RootedPattern
    cross: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for end, label in self.cross:
            if end not in (X, Y):
                raise InvalidParams(f"cross endpoint must be '{X}' or '{Y}', got {end!r}")
            if label not in self.tree.parent and label != self.tree.root:
                raise InvalidParams(f"cross edge to unknown label {label}")
            if (end, label) in seen:
                raise InvalidParams(f"duplicate cross edge {end}-{label}")
            seen.add((end, label))
        object.__setattr__(self, "cross", tuple(sorted(self.cross)))

    @property
    def k(self) -> int:
        return self.tree.k

    @property
    def node_count(self) -> int:
        return self.tree.k + 2

    @property
    def edge_count(self) -> int:
        return 1 + (self.tree.k - 1) + len(self.cross)

    def cross_for(self, label: int) -> tuple[str, ...]:
        return tuple(end for end, l in self.cross if l == label)

    def compile(self) -> tuple[Graph, int, int]:
        """Materialize as a graph; returns (graph, x_id, y_id)."""
        x_id, y_id = self.k + 1, self.k + 2
        edges = [(x_id, y_id)]
        edges.extend(self.tree.parent_edges)
        for end, label in self.cross:
            edges.append((x_id if end == X else y_id, label))
        return Graph.from_edges(edges, extra_nodes=self.tree.labels), x_id, y_id

    def with_tree(self, tree: RootedPattern) -> "HPattern":
        return HPattern(tree=tree, cross=self.cross)


def c4_hpattern() -> HPattern:
    """The 4-cycle: anchor edge, two-node tree, one cross edge per anchor."""
    return HPattern(tree=path_pattern(2), cross=((X, 1), (Y, 2)))


def k4_hpattern() -> HPattern:
    """The 4-clique: anchor edge, two-node tree, all four cross edges."""
    return HPattern(tree=path_pattern(2), cross=((X, 1), (X, 2), (Y, 1), (Y, 2)))


def k2k_hpattern(k: int) -> HPattern:
    """Complete bipartite K_{2,k} written as anchor edge + star + cross edges."""
    if k < 2:
        raise InvalidParams("need k >= 2")
    tree = star_pattern(k - 1)
    cross = tuple((X, i) for i in range(1, k)) + ((Y, k),)
    return HPattern(tree=tree, cross=cross)


def gen_far_instance(h: HPattern, copies: int) -> Graph:
    """Disjoint union of `copies` copies of the compiled pattern, ids 0..N-1.

    Deleting fewer than `copies` edges leaves some copy intact, so the
    result is eps-far from h-freeness for every eps <= copies / m.
    """
    if copies < 1:
        raise InvalidParams("need at least one copy")
    compiled, _, _ = h.compile()
    return disjoint_union([compiled] * copies)


# ---------------------------------------------------------------------------
# text I/O


def parse_pattern(text: str) -> RootedPattern | HPattern:
    root = None
    tree_lines: list[tuple[int, int]] = []
    cross_lines: list[tuple[str, int]] = []
    anchored = False
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("root:"):
            try:
                root = int(line.split(":", 1)[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad root label") from None
            section = None
        elif low == "tree:":
            section = "tree"
        elif low.startswith("anchor:"):
            if line.split(":", 1)[1].split() != [X, Y]:
                raise ParseError(f"line {lineno}: anchor line must read 'anchor: x y'")
            anchored = True
            section = None
        elif low == "cross:":
            anchored = True
            section = "cross"
        elif section == "tree":
            parts = line.split()
            try:
                child, par = int(parts[0]), int(parts[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: expected 'child parent'") from None
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'child parent'")
            tree_lines.append((child, par))
        elif section == "cross":
            parts = line.split()
            if len(parts) != 2 or parts[0] not in (X, Y):
                raise ParseError(f"line {lineno}: expected 'x L' or 'y L'")
            try:
                cross_lines.append((parts[0], int(parts[1])))
            except ValueError:
                raise ParseError(f"line {lineno}: bad label") from None
        else:
            raise ParseError(f"line {lineno}: unexpected content {raw!r}")
    if root is None:
        raise ParseError("missing 'root:' line")
    try:
        tree = RootedPattern(root=root, parent_edges=tuple(sorted(tree_lines)))
        if anchored:
            return HPattern(tree=tree, cross=tuple(cross_lines))
        return tree
    except InvalidParams as exc:
        raise ParseError(str(exc)) from None


def dump_pattern(p: RootedPattern | HPattern) -> str:
    if isinstance(p, HPattern):
        lines = [f"root: {p.tree.root}", "tree:"]
        lines += [f"{c} {par}" for c, par in p.tree.parent_edges]
        lines += ["anchor: x y"]
        if p.cross:
            lines.append("cross:")
            lines += [f"{end} {label}" for end, label in p.cross]
        return "\n".join(lines) + "\n"
    lines = [f"root: {p.root}", "tree:"]
    lines += [f"{c} {par}" for c, par in p.parent_edges]
    return "\n".join(lines) + "\n"


def load_pattern(path) -> RootedPattern | HPattern:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pattern(fh.read())
