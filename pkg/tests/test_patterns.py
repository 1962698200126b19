"""Tests for rooted tree patterns and tree-plus-edge patterns."""
import pytest

from congestsim.errors import InvalidParams, ParseError
from congestsim.patterns import (
    HPattern,
    RootedPattern,
    c4_hpattern,
    dump_pattern,
    gen_far_instance,
    k2k_hpattern,
    k4_hpattern,
    parse_pattern,
    path_pattern,
    star_pattern,
    tree_pattern,
)


def test_path_pattern_shape():
    t = path_pattern(4)
    assert t.k == 4
    assert t.height == 3
    assert t.root == 1
    assert t.is_leaf(4)


def test_star_pattern_shape():
    t = star_pattern(3)
    assert t.k == 4
    assert t.root == 4
    assert t.height == 1
    assert sorted(t.children[4]) == [1, 2, 3]


def test_tree_pattern_rejects_cycles_and_orphans():
    with pytest.raises(InvalidParams):
        tree_pattern(1, {2: 3, 3: 2})
    with pytest.raises(InvalidParams):
        tree_pattern(1, {3: 1})  # label 2 missing: labels must be 1..k


def test_subtree_size_and_shapes():
    t = tree_pattern(1, {2: 1, 3: 1, 4: 3})
    assert t.subtree_size(1) == 4
    assert t.subtree_size(3) == 2
    # (label, subtree height) pairs, shallowest first
    assert t.shapes() == [(2, 0), (4, 0), (3, 1), (1, 2)]


def test_reroot_keeps_edge_set():
    t = path_pattern(5)
    r = t.reroot(3)
    assert r.root == 3
    assert set(r.to_graph().edges()) == set(t.to_graph().edges())


def test_center_minimizes_height():
    t = path_pattern(5)
    assert t.center() == 3
    c = t.rerooted_at_center()
    assert c.height == 2
    assert all(c.height <= t.reroot(v).height for v in t.labels)


def test_relabel_bfs_decreasing():
    t = path_pattern(4).rerooted_at_center()
    r = t.relabel_bfs_decreasing()
    assert r.root == r.k
    assert r.labels_decrease_from_root()


def test_hpattern_c4_compiles_to_cycle():
    h = c4_hpattern()
    g, x, y = h.compile()
    assert h.node_count == 4 and h.edge_count == 4
    assert g.has_edge(x, y)
    assert sorted(g.degree(u) for u in g.nodes) == [2, 2, 2, 2]


def test_hpattern_k4():
    h = k4_hpattern()
    g, _, _ = h.compile()
    assert g.n == 4 and g.m == 6


def test_hpattern_k2k():
    h = k2k_hpattern(3)
    g, x, y = h.compile()
    assert g.n == 5 and g.m == 6
    assert g.has_edge(x, y)
    assert sorted(g.degree(u) for u in g.nodes) == [2, 2, 2, 3, 3]


def test_hpattern_rejects_bad_cross_label():
    with pytest.raises(InvalidParams):
        HPattern(tree=path_pattern(2), cross=(("x", 9),))


def test_gen_far_instance_disjoint_copies():
    g = gen_far_instance(c4_hpattern(), 3)
    assert g.n == 12 and g.m == 12


def test_pattern_round_trip_tree():
    t = tree_pattern(1, {2: 1, 3: 1, 4: 3, 5: 3})
    assert parse_pattern(dump_pattern(t)) == t


def test_pattern_round_trip_hpattern():
    h = c4_hpattern()
    assert parse_pattern(dump_pattern(h)) == h


def test_parse_pattern_rejects_garbage():
    with pytest.raises(ParseError):
        parse_pattern("what\n")
