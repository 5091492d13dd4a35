from __future__ import annotations

import random
from fractions import Fraction

import pytest

from oddpath.errors import (ConservativenessViolationError,
                            InvalidEndpointError, InvalidInputError)
from oddpath.forest import (enumerate_leaps, negative_forest,
                            redistribute_weights, tree_path)
from oddpath.generators import random_single_tree_graph
from oddpath.graph import WeightedGraph
from oddpath.instances import demo_single_tree, demo_single_tree_negative_edge_pairs

from conftest import WIDE_PALETTE, path_graph


def test_all_positive_weights_give_empty_forest():
    g = WeightedGraph(3, [(0, 1, Fraction(2)), (1, 2, Fraction(1))])
    assert negative_forest(g).trees == ()


def test_negative_star_is_one_tree():
    edges = [(0, i, Fraction(-1)) for i in range(1, 5)]
    edges.append((1, 2, Fraction(5)))
    g = WeightedGraph(5, edges)
    forest = negative_forest(g)
    assert len(forest.trees) == 1
    assert forest.trees[0].edge_ids == frozenset(range(4))


def test_demo_tree_edges():
    g, _s, _t = demo_single_tree()
    forest = negative_forest(g)
    assert len(forest.trees) == 1
    got = {tuple(sorted((g.edges[e].u, g.edges[e].v)))
           for e in forest.trees[0].edge_ids}
    assert got == {tuple(sorted(p)) for p in demo_single_tree_negative_edge_pairs()}


def test_negative_cycle_rejected_with_witness():
    g = WeightedGraph(3, [(0, 1, Fraction(-1)), (1, 2, Fraction(-1)),
                          (0, 2, Fraction(-1))])
    with pytest.raises(ConservativenessViolationError) as err:
        negative_forest(g)
    cycle = err.value.cycle
    assert cycle is not None and len(cycle) == 3


def test_tree_path_basics():
    g = path_graph([-1, -1])
    forest = negative_forest(g)
    assert tree_path(forest, 0, 0, 2) == [0, 1]
    assert tree_path(forest, 0, 0, 1) == [0]
    assert tree_path(forest, 0, 2, 0) == list(reversed(tree_path(forest, 0, 0, 2)))
    with pytest.raises(InvalidEndpointError):
        tree_path(forest, 0, 0, 0)


def test_demo_tree_path_query():
    g, _s, _t = demo_single_tree()
    forest = negative_forest(g)
    v2, v3, v5, v6 = 3, 4, 6, 7
    edges = tree_path(forest, 0, v2, v6)
    pairs = [tuple(sorted((g.edges[e].u, g.edges[e].v))) for e in edges]
    assert pairs == [(v2, v3), (v3, v5), (v5, v6)]


def test_tree_path_reversal_property(rng):
    for _ in range(80):
        g = random_single_tree_graph(rng, rng.randint(3, 9), WIDE_PALETTE)
        if g is None:
            continue
        forest = negative_forest(g)
        tv = sorted(forest.trees[0].vertices)
        if len(tv) < 2:
            continue
        a, b = rng.sample(tv, 2)
        assert tree_path(forest, 0, a, b) == tree_path(forest, 0, b, a)[::-1]


def test_leap_enumeration_on_demo():
    g, s, _t = demo_single_tree()
    forest = negative_forest(g)
    v2, v4, v6, v7, t = 3, 5, 7, 8, 1
    # walking v2, v7, v6 jumps the tree between v2 and v6
    leaps = enumerate_leaps(g, forest, (v2, v7, v6))
    assert len(leaps) == 1
    leap = leaps[0]
    assert (leap.a, leap.b) == (v2, v6)
    assert leap.cycle_length == 5 and leap.parity_changing
    # the direct tree walk has no leap
    assert enumerate_leaps(g, forest, (v2, 4, v4)) == []
    # a path never touching the tree has no leap
    assert enumerate_leaps(g, forest, (s, v7)) == []
    # shadow: the optimal path's leap over v2..v6 shadows nothing because
    # the path leaves the tree region; build one that does cast a shadow
    leaps = enumerate_leaps(g, forest, (4, v2, v7, v6, t))
    inner = [lp for lp in leaps if (lp.a, lp.b) == (v2, v6)]
    assert len(inner) == 1
    shadow_pairs = {tuple(sorted((g.edges[e].u, g.edges[e].v)))
                    for e in inner[0].shadow}
    assert shadow_pairs == {(3, 4)}  # the v2-v3 hop lies on the tree path


def test_redistribute_no_leap_is_identity():
    g = path_graph([-1, 1, 1])
    q = [0, 1]  # path 0-1-2 starting on the tree edge
    out = redistribute_weights(g, q)
    assert out == [e.w for e in g.edges]


def test_redistribute_single_leap_example():
    # tree: 0-1 (-1); leap 0-2-3-1 of three unit edges shadows the tree edge
    g = WeightedGraph(4, [(0, 1, Fraction(-1)), (0, 2, Fraction(1)),
                          (2, 3, Fraction(1)), (3, 1, Fraction(1))])
    q = [0, 1, 2, 3]
    out = redistribute_weights(g, q)
    assert out[0] == 0
    assert out[1] == out[2] == out[3] == Fraction(2, 3)
    assert sum(out[e] for e in q) == g.edges[0].w + 3


def test_redistribute_rejects_bad_decompositions():
    g = path_graph([-1, 1, 1])
    with pytest.raises(InvalidInputError):
        redistribute_weights(g, [1, 2])  # endpoint 3 is off the tree
    g2 = WeightedGraph(3, [(0, 1, Fraction(-1)), (1, 2, Fraction(1)),
                           (0, 2, Fraction(1))])
    with pytest.raises(InvalidInputError):
        redistribute_weights(g2, [0, 1, 2])  # a cycle, not disjoint paths


def _random_tree_anchored_paths(rng, g, forest):
    """Random union of vertex-disjoint paths with both endpoints on the tree."""
    tree = forest.trees[0]
    used: set[int] = set()
    chosen: list[int] = []
    for _attempt in range(6):
        start = rng.choice(sorted(tree.vertices))
        if start in used:
            continue
        path = [start]
        edges = []
        while True:
            options = [(e, y) for e, y in g.adj[path[-1]]
                       if y not in used and y not in path]
            if not options:
                break
            e, y = rng.choice(options)
            path.append(y)
            edges.append(e)
            if y in tree.vertices and len(edges) >= 1 and rng.random() < 0.6:
                break
        while path and path[-1] not in tree.vertices:
            path.pop()
            edges.pop()
        if len(edges) >= 1:
            used.update(path)
            chosen.extend(edges)
    return chosen


def test_redistribute_properties_on_random_instances(rng):
    """Totals preserved, shadows zeroed, leaps non-negative."""
    checked = 0
    for _ in range(1000):
        g = random_single_tree_graph(rng, rng.randint(4, 9), WIDE_PALETTE, 0.5)
        if g is None:
            continue
        forest = negative_forest(g)
        q = _random_tree_anchored_paths(rng, g, forest)
        if not q:
            continue
        try:
            out = redistribute_weights(g, q, forest=forest)
        except InvalidInputError:
            continue
        total_before = sum((g.edges[e].w for e in q), Fraction(0))
        total_after = sum((out[e] for e in q), Fraction(0))
        assert total_after == total_before
        # recover the path decomposition to enumerate its leaps
        deg: dict[int, list[tuple[int, int]]] = {}
        for e in q:
            u, v, _w = g.edges[e]
            deg.setdefault(u, []).append((e, v))
            deg.setdefault(v, []).append((e, u))
        ends = sorted(v for v, nb in deg.items() if len(nb) == 1)
        seen_edges: set[int] = set()
        for start in ends:
            if all(e in seen_edges for e, _y in deg[start]):
                continue
            verts = [start]
            prev = None
            while True:
                nxt = [(e, y) for e, y in deg[verts[-1]] if e != prev]
                if not nxt:
                    break
                prev, y = nxt[0]
                seen_edges.add(prev)
                verts.append(y)
            for leap in enumerate_leaps(g, forest, verts):
                for f in leap.shadow:
                    assert out[f] == 0, "shadow edges must be zeroed"
                leap_total = sum((out[e] for e in leap.edge_ids(g)), Fraction(0))
                assert leap_total >= 0, "leaps must keep non-negative weight"
        checked += 1
    assert checked >= 200
