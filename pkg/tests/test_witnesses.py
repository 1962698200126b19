"""Tests for witness-table construction, gluing, and pruning."""
import pytest

from congestsim.errors import EnumerationLimitExceeded, InvalidParams
from congestsim.graph import path_graph, star_graph
from congestsim.patterns import path_pattern, star_pattern, tree_pattern
from congestsim.repfamily import family, size_bound, verify_witness
from congestsim.witnesses import (
    assignment_ok,
    extend_witnesses,
    prune_witnesses,
    shape_layouts,
    table_bound,
)


def test_table_bound_values():
    assert table_bound(4, 1) == 1
    assert table_bound(4, 2) == size_bound(2, 2)
    assert table_bound(3, 3) == 1  # q = 0 at the root


def test_shape_layouts_path3():
    t = path_pattern(3).rerooted_at_center()
    layouts = shape_layouts(t)
    root = layouts[t.root]
    assert root.size == 3 and root.depth == 1
    assert root.preorder[0] == t.root
    assert root.parent_pos == (0, 0)
    leaves = [l for l in layouts.values() if l.size == 1]
    assert len(leaves) == 2 and all(l.bound == 1 for l in leaves)


def test_assignment_ok_checks_adjacency_and_injectivity():
    t = path_pattern(3)  # chain 1-2-3 rooted at 1
    layout = shape_layouts(t)[1]
    g = path_graph(4)
    assert assignment_ok(layout, (0, 1, 2), g)
    assert not assignment_ok(layout, (0, 1, 1), g)
    assert not assignment_ok(layout, (0, 2, 3), g)  # 0-2 is not an edge


def test_extend_glues_disjoint_children():
    t = star_pattern(2)  # hub 3, leaves 1 and 2
    layout = shape_layouts(t)[3]
    g = star_graph(3)  # hub 0, leaves 1..3
    pairs = [((v,), frozenset({v})) for v in (1, 2, 3)]
    out = extend_witnesses(0, layout, {1: pairs, 2: pairs})
    # ordered leaf pairs collapse to 3 unordered vertex sets, lex-least kept
    assert out == [(0, 1, 2), (0, 1, 3), (0, 2, 3)]
    assert all(assignment_ok(layout, a, g) for a in out)


def test_extend_avoids_the_center_node():
    t = star_pattern(1)
    layout = shape_layouts(t)[2]
    pairs = [((0,), frozenset({0})), ((1,), frozenset({1}))]
    assert extend_witnesses(0, layout, {1: pairs}) == [(0, 1)]


def test_extend_respects_enum_limit():
    t = star_pattern(2)
    layout = shape_layouts(t)[3]
    pairs = [((v,), frozenset({v})) for v in range(1, 40)]
    with pytest.raises(EnumerationLimitExceeded):
        extend_witnesses(0, layout, {1: pairs, 2: pairs}, limit=1000)


def test_extend_with_empty_child_table_is_empty():
    t = star_pattern(2)
    layout = shape_layouts(t)[3]
    pairs = [((1,), frozenset({1}))]
    assert extend_witnesses(0, layout, {1: pairs, 2: []}) == []


def test_prune_keeps_a_representative_subfamily():
    # 6 shape-size-2 witnesses sharing node 0, inside a k=3 pattern
    assignments = [(0, i) for i in range(1, 7)]
    kept = prune_witnesses(assignments, p=2, k=3)
    assert len(kept) <= 3
    fam = family(frozenset(a) for a in assignments)
    assert verify_witness(fam, [frozenset(a) for a in kept], 1)


def test_prune_single_witness_passthrough():
    assert prune_witnesses([(4, 5)], p=2, k=4) == [(4, 5)]


def test_prune_dedupes_by_vertex_set():
    kept = prune_witnesses([(5, 3), (3, 5)], p=2, k=2)
    assert kept == [(3, 5)]


def test_prune_rejects_bad_sizes():
    with pytest.raises(InvalidParams):
        prune_witnesses([(1, 2)], p=2, k=1)


def test_pruned_table_meets_bound_on_dense_input():
    t = tree_pattern(1, {2: 1, 3: 1, 4: 1})  # S3: size 4
    k = t.k
    assignments = [
        (0, a, b, c)
        for a in range(1, 8)
        for b in range(1, 8)
        for c in range(1, 8)
        if len({a, b, c}) == 3
    ]
    kept = prune_witnesses(assignments, p=4, k=k)
    assert len(kept) <= table_bound(k, 4) == 1
