"""Hand-built instances used in regression tests and benchmarks.

The builders return plain graphs plus the relevant terminals; expected
values are derived in the test suite by the enumeration oracles before
being frozen as regression assertions.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import WeightedGraph
from .parity import ParityConstraints

# Vertex layout of the nine-vertex single-tree demo:
#
#   v1 --- v2 --- v3 --- v4          negative path-and-branch tree on
#           |      |      \          v1..v6 (all weights -1), positive
#           |      v5      \         edges elsewhere, terminals s and t.
#           |      |        \
#   s ---- v7 --- v6 ------- t
#
S, T, V1, V2, V3, V4, V5, V6, V7 = range(9)


def demo_single_tree() -> tuple[WeightedGraph, int, int]:
    """Nine-vertex instance whose negative edges form one five-edge tree."""
    minus = Fraction(-1)
    edges = [
        (V1, V2, minus), (V2, V3, minus), (V3, V4, minus),
        (V3, V5, minus), (V5, V6, minus),
        (V1, V7, Fraction(2)), (S, V7, Fraction(1)), (V7, V6, Fraction(2)),
        (V6, T, Fraction(3)), (V4, V5, Fraction(3)), (V4, T, Fraction(0)),
        (V2, V7, Fraction(1)),
    ]
    return WeightedGraph(9, edges, source=S, terminal=T), S, T


def demo_single_tree_negative_edge_pairs() -> set[tuple[int, int]]:
    return {(V1, V2), (V2, V3), (V3, V4), (V3, V5), (V5, V6)}


def demo_parity_constraints(weights: dict[tuple[int, int], Fraction] | None = None
                            ) -> tuple[WeightedGraph, int, int, ParityConstraints]:
    """Seven-vertex instance with two position-parity constraint classes.

    Exactly three constrained odd (s,t)-paths exist; see the regression
    tests for the frozen feasible set.
    """
    s, v1, v2, v3, v4, v5, t = range(7)
    odd_pairs = [(s, v1), (v2, v3), (v4, t)]       # pinned to odd positions
    even_pairs = [(v1, v2), (v3, v4)]              # pinned to even positions
    free_pairs = [(s, v2), (s, v3), (v1, v4), (v4, v5)]
    table = weights or {}
    edges = []
    for u, v in odd_pairs + even_pairs + free_pairs:
        edges.append((u, v, table.get((u, v), Fraction(1))))
    g = WeightedGraph(7, edges, source=s, terminal=t)
    f_odd = {g.edge_between(u, v) for u, v in odd_pairs}
    f_even = {g.edge_between(u, v) for u, v in even_pairs}
    c = ParityConstraints.of({e for e in f_even if e is not None},
                             {e for e in f_odd if e is not None})
    return g, s, t, c


def demo_parity_feasible_paths() -> list[tuple[int, ...]]:
    """The full feasible set of the constrained demo, as vertex tuples."""
    s, v1, v2, v3, v4, v5, t = range(7)
    return sorted([
        (s, v1, v2, v3, v4, t),
        (s, v3, v4, t),
        (s, v1, v4, t),
    ])


def interlaced_leap_instance(rungs: int) -> tuple[WeightedGraph, int, int]:
    """Family with a unique odd (s,t)-path that must zigzag over all leaps.

    The negative tree is a long path (plus one pendant for larger sizes);
    the non-tree arcs interlace so the only odd (s,t)-path repeatedly jumps
    ahead over a tree segment and walks a later segment backwards, using
    every arc exactly once; precisely one arc closes an odd cycle.  Arc
    weights equal the tree span they jump, so all induced cycles weigh
    zero and the instance stays conservative.
    """
    if rungs not in (1, 2, 3, 4):
        raise ValueError("the interlaced family is built for 1..4 rungs")
    minus = Fraction(-1)
    if rungs == 1:
        # s - c0 - c1 - c2 - t with one parity-changing arc c0-c2.
        s, c0, c1, c2, t = range(5)
        edges = [
            (c0, c1, minus), (c1, c2, minus),
            (s, c0, Fraction(1)), (c2, t, Fraction(1)),
            (c0, c2, Fraction(2)),
        ]
        return WeightedGraph(5, edges, source=s, terminal=t), s, t
    chain_len = {2: 8, 3: 10, 4: 12}[rungs]
    pendant_at = {2: 4, 3: 6, 4: 8}[rungs]
    arcs = {
        2: [(0, 5), ("p", 6), (5, 7)],
        3: [(0, 5), (4, 7), ("p", 8), (7, 9)],
        4: [(0, 5), (4, 7), (6, 9), ("p", 10), (9, 11)],
    }[rungs]
    s, v_in, t = 0, 1, 2
    c = [3 + i for i in range(chain_len)]
    pend = 3 + chain_len
    n = pend + 1
    edges = [(c[i], c[i + 1], minus) for i in range(chain_len - 1)]
    edges.append((c[pendant_at], pend, minus))
    edges += [(s, v_in, Fraction(1)), (v_in, c[1], Fraction(1)),
              (t, c[2], Fraction(1))]

    for xa, xb in arcs:
        a = pend if xa == "p" else c[xa]
        b = pend if xb == "p" else c[xb]
        # arc weight = tree span it jumps, so the induced cycle weighs zero
        pa = pendant_at if xa == "p" else xa
        pb = pendant_at if xb == "p" else xb
        hops = abs(pa - pb) + (1 if xa == "p" else 0) + (1 if xb == "p" else 0)
        edges.append((a, b, Fraction(hops)))
    return WeightedGraph(n, edges, source=s, terminal=t), s, t


def interlaced_arc_edges(g: WeightedGraph) -> list[int]:
    """Edge ids of the non-tree, non-terminal arcs of the interlaced family."""
    out = []
    for e, (u, v, w) in enumerate(g.edges):
        if w < 0:
            continue
        if g.source in (u, v) or g.terminal in (u, v):
            continue
        if w == 1 and 1 in (u, v):  # the s-side attachment edge v_in-c1
            continue
        out.append(e)
    return out
