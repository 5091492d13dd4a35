"""Shortest odd paths with parity constraints on edge positions.

The core solver reduces a parity-constrained odd path instance to one
minimum-weight perfect matching: take the graph and a full copy of it, join
every vertex to its copy by a zero-weight edge, drop the position-even
constraint set from the original layer and the position-odd set from the
copy layer, and delete the copies of the two terminals.  Matched original
edges sit at odd positions, matched copy edges at even positions, and the
matching restricted to the terminal component spells out the path.

Requires conservative weights and that every negative edge carries a
constraint; both are what make discarded matching components non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .conservative import validate_conservative
from .errors import (ConservativenessViolationError, ConstraintCoverageError,
                     InvalidInputError)
from .forest import Leap, NegativeForest
from .graph import WeightedGraph
from .matching import FOUND, INFEASIBLE, min_weight_perfect_matching_edges

ODD = "odd"
EVEN = "even"


@dataclass(frozen=True)
class ParityConstraints:
    """Disjoint edge-id sets pinned to even and odd path positions."""

    f_even: frozenset[int]
    f_odd: frozenset[int]

    def __post_init__(self):
        if self.f_even & self.f_odd:
            raise InvalidInputError("constraint sets must be disjoint")

    @staticmethod
    def of(f_even: Iterable[int] = (), f_odd: Iterable[int] = ()) -> "ParityConstraints":
        return ParityConstraints(frozenset(f_even), frozenset(f_odd))


EMPTY_CONSTRAINTS = ParityConstraints.of()


@dataclass(frozen=True)
class OddPathSolution:
    status: str
    vertices: tuple[int, ...] | None = None
    weight: Fraction | None = None
    parity: str = ODD

    @property
    def found(self) -> bool:
        return self.status == FOUND

    @property
    def length(self) -> int:
        assert self.vertices is not None
        return len(self.vertices) - 1


def infeasible() -> OddPathSolution:
    return OddPathSolution(INFEASIBLE)


def verify_odd_path_solution(g: WeightedGraph, sol: OddPathSolution,
                             s: int, t: int,
                             constraints: ParityConstraints = EMPTY_CONSTRAINTS,
                             parity: str = ODD) -> None:
    """Independent recount of every path invariant; raises on violation.

    Checks adjacency, simplicity, endpoint identity, length parity, exact
    weight, the position parity of each constrained edge, and the structural
    fact that same-parity positions form a matching.
    """
    if not sol.found:
        return
    assert sol.vertices is not None and sol.weight is not None
    verts = sol.vertices
    if verts[0] != s or verts[-1] != t:
        raise AssertionError("path endpoints differ from the query")
    if len(set(verts)) != len(verts):
        raise AssertionError("path repeats a vertex")
    edge_ids = g.path_edge_ids(verts)  # raises if a hop is not an edge
    want_odd = parity == ODD
    if (len(edge_ids) % 2 == 1) != want_odd:
        raise AssertionError(f"path length {len(edge_ids)} has wrong parity")
    total = sum((g.edges[e].w for e in edge_ids), Fraction(0))
    if total != sol.weight:
        raise AssertionError(f"reported weight {sol.weight} != recomputed {total}")
    for pos, e in enumerate(edge_ids, start=1):
        if e in constraints.f_even and pos % 2 != 0:
            raise AssertionError(f"edge {e} must sit at an even position, found {pos}")
        if e in constraints.f_odd and pos % 2 != 1:
            raise AssertionError(f"edge {e} must sit at an odd position, found {pos}")
    for offset in (0, 1):
        touched: set[int] = set()
        for e in edge_ids[offset::2]:
            u, v, _w = g.edges[e]
            if u in touched or v in touched:
                raise AssertionError("same-parity positions must form a matching")
            touched.update((u, v))


def build_parity_graph(g: WeightedGraph, s: int, t: int,
                       constraints: ParityConstraints
                       ) -> tuple[int, list[tuple[int, int, Fraction]], list[tuple[str, int]]]:
    """Construct the doubled matching graph.

    Vertex numbering: original vertices keep their ids ``0..n-1``; copies
    occupy ``n..2n-3`` in increasing original-vertex order with the two
    terminal copies skipped, i.e. ``copy(v) = n + v - |{x in {s,t}: x < v}|``.
    Returns (vertex count, edge list, tags) where ``tags[i]`` labels edge i
    as ("orig", edge_id), ("copy", edge_id) or ("link", vertex).
    """
    n = g.n
    copy_id: dict[int, int] = {}
    nxt = n
    for v in range(n):
        if v != s and v != t:
            copy_id[v] = nxt
            nxt += 1
    edges: list[tuple[int, int, Fraction]] = []
    tags: list[tuple[str, int]] = []
    for e, (u, v, w) in enumerate(g.edges):
        if e not in constraints.f_even:
            edges.append((u, v, w))
            tags.append(("orig", e))
        if e not in constraints.f_odd and u in copy_id and v in copy_id:
            edges.append((copy_id[u], copy_id[v], w))
            tags.append(("copy", e))
    for v, cv in copy_id.items():
        edges.append((v, cv, Fraction(0)))
        tags.append(("link", v))
    return nxt, edges, tags


def _extract_path(g: WeightedGraph, s: int, t: int,
                  matched_orig: list[int], matched_copy: list[int]
                  ) -> tuple[tuple[int, ...], Fraction]:
    """Walk the terminal component of the two matched edge layers."""
    multi: dict[int, list[int]] = {}
    doubled = set(matched_orig) & set(matched_copy)
    for e in matched_orig + matched_copy:
        if e in doubled:
            continue
        u, v, _w = g.edges[e]
        multi.setdefault(u, []).append(e)
        multi.setdefault(v, []).append(e)
    # Doubled edges pair two vertices with each other twice; they form their
    # own components and never sit on the terminal path.
    verts = [s]
    prev_edge = -1
    while verts[-1] != t:
        here = verts[-1]
        step = [e for e in multi.get(here, ()) if e != prev_edge]
        assert len(step) == 1, "terminal component must be a path"
        prev_edge = step[0]
        u, v, _w = g.edges[prev_edge]
        verts.append(v if here == u else u)
    weight = sum((g.edges[e].w for e in g.path_edge_ids(verts)), Fraction(0))
    return tuple(verts), weight


def solve_spcop(g: WeightedGraph, s: int, t: int,
                constraints: ParityConstraints = EMPTY_CONSTRAINTS,
                *, assume_conservative: bool = False,
                validate_matching: bool = False) -> OddPathSolution:
    """Minimum-weight parity-constrained odd (s,t)-path, or infeasible."""
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise InvalidInputError("terminals must be vertices of the graph")
    if s == t:
        raise InvalidInputError("terminals must be distinct (an odd path has two ends)")
    neg = set(g.negative_edge_ids())
    if not neg <= (constraints.f_even | constraints.f_odd):
        raise ConstraintCoverageError(
            "every negative edge needs a parity constraint")
    if not assume_conservative and neg:
        report = validate_conservative(g)
        if not report.conservative:
            raise ConservativenessViolationError(
                "weights admit a negative cycle", report.witness_cycle)
    hn, hedges, tags = build_parity_graph(g, s, t, constraints)
    res = min_weight_perfect_matching_edges(hn, hedges, validate=validate_matching)
    if not res.found:
        return infeasible()
    matched_orig: list[int] = []
    matched_copy: list[int] = []
    for he in res.edge_ids:
        kind, ref = tags[he]
        if kind == "orig":
            matched_orig.append(ref)
        elif kind == "copy":
            matched_copy.append(ref)
    verts, weight = _extract_path(g, s, t, matched_orig, matched_copy)
    # Discarded components (even cycles, doubled unconstrained edges) are
    # non-negative, so at a matching optimum they carry exactly zero weight.
    assert weight == res.weight, "path weight must equal the matching weight"
    sol = OddPathSolution(FOUND, verts, weight)
    verify_odd_path_solution(g, sol, s, t, constraints)
    return sol


def shortest_odd_path_nonneg(g: WeightedGraph, s: int, t: int) -> OddPathSolution:
    """Minimum-weight odd (s,t)-path for non-negative weights."""
    if g.has_negative_weights():
        raise InvalidInputError("this routine requires non-negative weights")
    return solve_spcop(g, s, t, EMPTY_CONSTRAINTS, assume_conservative=True)


def shortest_even_path_nonneg(g: WeightedGraph, s: int, t: int) -> OddPathSolution:
    """Minimum-weight even (s,t)-path, via one extra zero-weight edge.

    Append a fresh vertex t' and the edge t-t' of weight zero; odd paths
    from s to t' strip to even paths from s to t.
    """
    if g.has_negative_weights():
        raise InvalidInputError("this routine requires non-negative weights")
    if s == t:
        raise InvalidInputError("terminals must be distinct")
    aug = WeightedGraph(g.n + 1, list(g.edges) + [(t, g.n, Fraction(0))])
    sol = solve_spcop(aug, s, g.n, EMPTY_CONSTRAINTS, assume_conservative=True)
    if not sol.found:
        return infeasible()
    assert sol.vertices is not None and sol.vertices[-2] == t
    out = OddPathSolution(FOUND, sol.vertices[:-1], sol.weight, EVEN)
    verify_odd_path_solution(g, out, s, t, parity=EVEN)
    return out


def _component_bipartition(g: WeightedGraph, start: int) -> dict[int, int] | None:
    """Two-color the component of ``start``; None when an odd cycle exists."""
    color = {start: 0}
    stack = [start]
    while stack:
        x = stack.pop()
        for _e, y in g.adj[x]:
            if y not in color:
                color[y] = color[x] ^ 1
                stack.append(y)
            elif color[y] == color[x]:
                return None
    return color


def parity_changing_leap_min(g: WeightedGraph, forest: NegativeForest,
                             tree_index: int, a: int, b: int) -> Leap | None:
    """Cheapest leap between two tree vertices whose induced cycle is odd.

    Works on the graph with the tree deleted (all its edges, and all its
    vertices except the two endpoints); with a single negative tree that
    graph is non-negative, so the odd/even routines apply.  On bipartite
    remainders a plain shortest path suffices because every connection has
    the same parity.
    """
    tree = forest.trees[tree_index]
    if a not in tree.vertices or b not in tree.vertices or a == b:
        raise InvalidInputError("leap endpoints must be distinct tree vertices")
    tree_len = len(tree.path_edges(a, b))
    need_odd = tree_len % 2 == 0
    keep = (set(range(g.n)) - tree.vertices) | {a, b}
    sub, vmap = g.induced(keep)
    # Of the tree edges only a direct a-b edge can survive the deletion.
    direct = g.edge_between(a, b)
    if direct is not None and direct in tree.edge_ids:
        ab = sub.edge_between(vmap[a], vmap[b])
        assert ab is not None
        sub, _ = sub.without_edges([ab])
    if sub.has_negative_weights():
        raise InvalidInputError("leap search requires a single negative tree")
    sa, sb = vmap[a], vmap[b]
    color = _component_bipartition(sub, sa)
    if color is not None:
        if sb not in color:
            return None
        if (color[sa] ^ color[sb]) != (1 if need_odd else 0):
            return None  # bipartite: every a-b path has the wrong parity
        verts = _shortest_path_vertices(sub, sa, sb)
        if verts is None:
            return None
        sol = OddPathSolution(FOUND, tuple(verts), sub.path_weight(verts),
                              ODD if need_odd else EVEN)
    else:
        sol = (shortest_odd_path_nonneg(sub, sa, sb) if need_odd
               else shortest_even_path_nonneg(sub, sa, sb))
    if not sol.found:
        return None
    back = {nv: ov for ov, nv in vmap.items()}
    assert sol.vertices is not None
    path = tuple(back[v] for v in sol.vertices)
    cycle_len = (len(path) - 1) + tree_len
    assert cycle_len % 2 == 1
    return Leap(path, tree_index, a, b, cycle_len, True, frozenset())


def _shortest_path_vertices(g: WeightedGraph, s: int, t: int) -> list[int] | None:
    """Dijkstra path for non-negative weights."""
    import heapq

    dist: list[int | None] = [None] * g.n
    parent: list[int] = [-1] * g.n
    dist[s] = 0
    heap = [(0, s)]
    while heap:
        d, x = heapq.heappop(heap)
        if dist[x] is not None and d > dist[x]:
            continue
        for e, y in g.adj[x]:
            nd = d + g.int_weights[e]
            if dist[y] is None or nd < dist[y]:
                dist[y] = nd
                parent[y] = x
                heapq.heappush(heap, (nd, y))
    if dist[t] is None:
        return None
    verts = [t]
    while verts[-1] != s:
        verts.append(parent[verts[-1]])
    return verts[::-1]
