"""Seeded instance generators for sweeps, property tests and benchmarks.

The conservative generator follows a rejection recipe: draw non-negative
weights, reweight a subset of a random spanning subtree to negative values,
then keep the instance only if the polynomial conservativeness check
accepts it.  Everything is deterministic in the provided seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, Sequence

from .conservative import validate_conservative
from .graph import WeightedGraph

__all__ = [
    "random_connected_pairs", "random_conservative_graph",
    "random_single_tree_graph", "conservative_instances",
    "leapfree_single_tree_graph", "partial_ktree_graph",
]


def random_connected_pairs(rng: random.Random, n: int,
                           edge_probability: float) -> list[tuple[int, int]]:
    """Random simple connected graph as an edge pair list."""
    pairs: set[tuple[int, int]] = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        j = rng.randrange(i)
        u, v = order[i], order[j]
        pairs.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_probability:
                pairs.add((u, v))
    return sorted(pairs)


def _spanning_subtree(rng: random.Random, n: int,
                      pairs: Sequence[tuple[int, int]]) -> list[int]:
    """Edge indices of a random spanning tree (per component)."""
    idx = list(range(len(pairs)))
    rng.shuffle(idx)
    root = list(range(n))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    chosen = []
    for e in idx:
        u, v = pairs[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            root[ru] = rv
            chosen.append(e)
    return chosen


def _connected_subtree(rng: random.Random, pairs: Sequence[tuple[int, int]],
                       tree_edges: Sequence[int], k: int) -> list[int]:
    """Connected k-edge subset of a spanning tree (a smaller tree)."""
    if k <= 0 or not tree_edges:
        return []
    incident: dict[int, list[int]] = {}
    for e in tree_edges:
        u, v = pairs[e]
        incident.setdefault(u, []).append(e)
        incident.setdefault(v, []).append(e)
    start = rng.choice(list(tree_edges))
    chosen = {start}
    frontier = list(pairs[start])
    while len(chosen) < k:
        grow = [e for x in frontier for e in incident[x] if e not in chosen]
        if not grow:
            break
        e = rng.choice(grow)
        chosen.add(e)
        frontier.extend(pairs[e])
    return sorted(chosen)


def random_conservative_graph(rng: random.Random, n: int,
                              palette: Sequence[Fraction],
                              edge_probability: float = 0.55,
                              single_tree: bool = False,
                              max_neg_edges: int | None = None,
                              max_attempts: int = 200) -> WeightedGraph | None:
    """Conservative instance with weights from the palette, or None.

    With ``single_tree`` the negative edges form exactly one tree.
    """
    nonneg = [w for w in palette if w >= 0]
    neg = [w for w in palette if w < 0]
    for _attempt in range(max_attempts):
        pairs = random_connected_pairs(rng, n, edge_probability)
        if not pairs:
            return None
        weights = [rng.choice(nonneg) for _ in pairs] if nonneg else None
        if weights is None:
            return None
        if neg:
            span = _spanning_subtree(rng, n, pairs)
            cap = max_neg_edges if max_neg_edges is not None else len(span)
            if single_tree:
                k = rng.randint(1, max(1, min(cap, len(span))))
                chosen = _connected_subtree(rng, pairs, span, k)
            else:
                k = rng.randint(0, max(0, min(cap, len(span))))
                chosen = rng.sample(span, k) if k else []
            for e in chosen:
                weights[e] = rng.choice(neg)
            if single_tree and not chosen:
                continue
        g = WeightedGraph(n, [(u, v, w) for (u, v), w in zip(pairs, weights)])
        if not neg or validate_conservative(g).conservative:
            return g
    return None


def random_single_tree_graph(rng: random.Random, n: int,
                             palette: Sequence[Fraction],
                             edge_probability: float = 0.55,
                             max_tree_edges: int = 4) -> WeightedGraph | None:
    return random_conservative_graph(rng, n, palette, edge_probability,
                                     single_tree=True,
                                     max_neg_edges=max_tree_edges)


def conservative_instances(spec) -> Iterator[tuple[WeightedGraph, int, int]]:
    """Instances for :func:`oddpath.oracle.sweep` (graph, s, t)."""
    from .oracle import NONNEG, SINGLE_NEG_TREE

    rng = random.Random(spec.seed)
    produced = 0
    while produced < spec.count:
        n = rng.randint(2, spec.max_n)
        if spec.instance_filter == NONNEG:
            palette = tuple(w for w in spec.weight_palette if w >= 0)
            g = random_conservative_graph(rng, n, palette, spec.edge_probability)
        elif spec.instance_filter == SINGLE_NEG_TREE:
            g = random_single_tree_graph(rng, n, spec.weight_palette,
                                         spec.edge_probability)
        else:
            g = random_conservative_graph(rng, n, spec.weight_palette,
                                          spec.edge_probability)
        if g is None or g.n < 2:
            continue
        s = rng.randrange(g.n)
        t = rng.randrange(g.n)
        if s == t:
            continue
        produced += 1
        yield g, s, t


def leapfree_single_tree_graph(rng: random.Random, n: int, extra_edges: int,
                               tree_edges: int,
                               max_attempts: int = 60) -> WeightedGraph:
    """Large bipartite single-tree instance with no parity-changing leaps.

    All edges respect one global two-coloring, so every cycle is even and
    no leap can change parity; the single-tree solver then never needs its
    disjoint-paths subroutine, which makes these suitable for scaling runs.
    """
    for _attempt in range(max_attempts):
        side = [v % 2 for v in range(n)]
        pairs: set[tuple[int, int]] = set()
        for v in range(1, n):
            u = rng.randrange(v)
            if side[u] == side[v]:
                u = max(0, u - 1) if side[max(0, u - 1)] != side[v] else u + 1
            if u == v or u >= n or side[u] == side[v]:
                continue
            pairs.add((min(u, v), max(u, v)))
        while len(pairs) < min(extra_edges + n - 1, n * (n - 1) // 4):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v and side[u] != side[v]:
                pairs.add((min(u, v), max(u, v)))
        plist = sorted(pairs)
        weights = [Fraction(rng.randint(1, 6)) for _ in plist]
        span = _spanning_subtree(rng, n, plist)
        chosen = _connected_subtree(rng, plist, span, tree_edges)
        for e in chosen:
            weights[e] = Fraction(-1)
        g = WeightedGraph(n, [(u, v, w) for (u, v), w in zip(plist, weights)])
        if chosen and validate_conservative(g).conservative:
            return g
    raise RuntimeError("could not generate a conservative bipartite instance")


def partial_ktree_graph(rng: random.Random, n: int, k: int,
                        keep_probability: float = 0.82,
                        negative_tree_edges: int = 0,
                        max_attempts: int = 60) -> WeightedGraph:
    """Partial k-tree (treewidth <= k) with a window-local bag structure."""
    for _attempt in range(max_attempts):
        pairs: list[tuple[int, int]] = []
        for u in range(min(k + 1, n)):
            for v in range(u + 1, min(k + 1, n)):
                pairs.append((u, v))
        for v in range(k + 1, n):
            for u in range(v - k, v):
                if rng.random() < keep_probability:
                    pairs.append((u, v))
        weights = [Fraction(rng.randint(0, 9)) for _ in pairs]
        if negative_tree_edges:
            span = _spanning_subtree(rng, n, pairs)
            for e in _connected_subtree(rng, pairs, span, negative_tree_edges):
                weights[e] = Fraction(-1)
        g = WeightedGraph(n, [(u, v, w) for (u, v), w in zip(pairs, weights)])
        if not negative_tree_edges or validate_conservative(g).conservative:
            return g
    raise RuntimeError("could not generate a conservative partial k-tree")
