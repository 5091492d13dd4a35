"""Conservativeness validation via the T-join reduction.

A weight function is conservative when no cycle has negative total weight.
Equivalently: let T' be the vertices with odd degree in the negative edge
set E-.  Every T'-join J satisfies, writing |w| for absolute weights,
``w(J symdiff E-) = |w|(J) - |w|(E-)``, and edge sets with all degrees even
decompose into cycles.  So w is conservative exactly when the minimum
|w|-weight T'-join costs |w|(E-), i.e. E- itself is one of the cheapest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import WeightedGraph
from .matching import FOUND, min_weight_t_join


@dataclass(frozen=True)
class ConservativenessReport:
    conservative: bool
    witness_cycle: tuple[int, ...] | None = None
    witness_weight: Fraction | None = None


def validate_conservative(g: WeightedGraph) -> ConservativenessReport:
    """Decide conservativeness; on failure return a negative witness cycle."""
    neg = g.negative_edge_ids()
    if not neg:
        return ConservativenessReport(True)
    degree = [0] * g.n
    for e in neg:
        degree[g.edges[e].u] += 1
        degree[g.edges[e].v] += 1
    odd = [v for v in range(g.n) if degree[v] % 2 == 1]
    abs_graph = WeightedGraph(g.n, [(u, v, abs(w)) for u, v, w in g.edges])
    target = sum((abs(g.edges[e].w) for e in neg), Fraction(0))
    join = min_weight_t_join(abs_graph, odd)
    assert join.status == FOUND, "E- itself is always a T'-join"
    assert join.weight <= target
    if join.weight == target:
        return ConservativenessReport(True)
    # The symmetric difference is an even-degree edge set of negative total
    # weight; peel cycles off it until a negative one appears.
    diff = set(join.edge_ids) ^ set(neg)
    for cycle_vertices, cycle_weight in _peel_cycles(g, diff):
        if cycle_weight < 0:
            return ConservativenessReport(False, cycle_vertices, cycle_weight)
    raise AssertionError("negative even-degree edge set must contain a negative cycle")


def _peel_cycles(g: WeightedGraph, edge_set: set[int]):
    """Decompose an even-degree edge set into simple cycles."""
    incident: dict[int, set[int]] = {}
    for e in edge_set:
        incident.setdefault(g.edges[e].u, set()).add(e)
        incident.setdefault(g.edges[e].v, set()).add(e)
    remaining = set(edge_set)
    while remaining:
        start_edge = min(remaining)
        u0 = g.edges[start_edge].u
        # Walk until a vertex repeats, then cut out the simple cycle found.
        walk_v = [u0]
        walk_e: list[int] = []
        pos = {u0: 0}
        x = u0
        while True:
            e = min(ei for ei in incident[x] if ei in remaining)
            u, v, _w = g.edges[e]
            y = v if u == x else u
            walk_e.append(e)
            remaining.discard(e)
            if y in pos:
                i = pos[y]
                cyc_v = tuple(walk_v[i:])
                cyc_e = walk_e[i:]
                # Return unused walk prefix edges to the pool.
                for back in walk_e[:i]:
                    remaining.add(back)
                weight = sum((g.edges[ei].w for ei in cyc_e), Fraction(0))
                yield cyc_v, weight
                break
            pos[y] = len(walk_v)
            walk_v.append(y)
            x = y
