"""Polynomial solver for instances whose negative edges form one tree.

The solver enumerates ordered pairs (a, b) of tree vertices and collects
two kinds of candidate paths:

* first type (no leaps): delete the tree except its a-b path, constrain the
  surviving tree edges to alternate positions (in both orientations), and
  solve the parity-constrained subproblem by matching;
* second type (with a parity-changing leap): take a cheapest parity-changing
  leap between a and b, attach cheapest vertex-disjoint paths from the two
  terminals onto the induced odd cycle, and keep whichever way around the
  cycle yields odd length.

Any optimal path falls into one of the two shapes, so the global minimum
over all pairs is optimal.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .conservative import validate_conservative
from .errors import (ConservativenessViolationError, InvalidInputError,
                     ParameterTooLargeError, WrongSolverError)
from .forest import Leap, NegativeForest, NegativeTree, negative_forest
from .graph import WeightedGraph
from .matching import FOUND, INFEASIBLE
from .parity import (EMPTY_CONSTRAINTS, OddPathSolution, ParityConstraints,
                     infeasible, parity_changing_leap_min,
                     shortest_odd_path_nonneg, solve_spcop,
                     verify_odd_path_solution)

DEFAULT_DISJOINT_GUARD = 24


@dataclass(frozen=True)
class DisjointPathsResult:
    """Two fully vertex-disjoint paths from the terminals onto two targets."""

    status: str
    path_s: tuple[int, ...] = ()
    path_t: tuple[int, ...] = ()
    total_weight: Fraction = Fraction(0)

    @property
    def found(self) -> bool:
        return self.status == FOUND


# ---------------------------------------------------------------------------
# Two vertex-disjoint paths, minimum total weight.
# ---------------------------------------------------------------------------

def two_disjoint_paths(g: WeightedGraph, s: int, t: int, a: int, b: int, *,
                       guard: int = DEFAULT_DISJOINT_GUARD) -> DisjointPathsResult:
    """Cheapest vertex-disjoint pair: one path from s, one from t, covering
    {a, b}.  A terminal equal to its target contributes a one-vertex path.

    Non-negative instances run through an exact two-unit min-cost flow on
    the vertex-split digraph.  Otherwise an exact enumeration (weight-sorted,
    bitmask disjointness) is used, guarded by instance size.
    """
    if s == t or a == b:
        raise InvalidInputError("terminals and targets must each be distinct")
    if not g.has_negative_weights():
        return _two_disjoint_flow(g, s, t, a, b)
    if g.n > guard:
        raise ParameterTooLargeError(
            "exact disjoint-path search beyond the size guard "
            f"(n={g.n} > {guard}); no polynomial routine ships for "
            "negative weights", "n", g.n, guard)
    return _two_disjoint_enum(g, s, t, a, b)


def _enum_paths(g: WeightedGraph, src: int, dst: int, forbidden: set[int]
                ) -> list[tuple[int, int, tuple[int, ...]]]:
    """All simple src-dst paths avoiding ``forbidden``: (mask, scaled weight,
    vertices), sorted by weight."""
    if src == dst:
        return [(1 << src, 0, (src,))]
    if src in forbidden or dst in forbidden:
        return []
    out: list[tuple[int, int, tuple[int, ...]]] = []
    verts = [src]
    mask = 1 << src
    weight = 0

    def rec(mask: int, weight: int) -> None:
        here = verts[-1]
        if here == dst:
            out.append((mask, weight, tuple(verts)))
            return
        for e, y in g.adj[here]:
            if mask >> y & 1 or y in forbidden:
                continue
            verts.append(y)
            rec(mask | 1 << y, weight + g.int_weights[e])
            verts.pop()

    rec(mask, weight)
    out.sort(key=lambda rec: (rec[1], rec[2]))
    return out


def _two_disjoint_enum(g: WeightedGraph, s: int, t: int, a: int, b: int
                       ) -> DisjointPathsResult:
    best: tuple[int, tuple[int, ...], tuple[int, ...]] | None = None
    for xa, xb in ((a, b), (b, a)):
        left = _enum_paths(g, s, xa, {t, xb} - {s, xa})
        right = _enum_paths(g, t, xb, {s, xa} - {t, xb})
        if not left or not right:
            continue
        min_right = right[0][1]
        for lmask, lw, lverts in left:
            if best is not None and lw + min_right >= best[0]:
                break
            for rmask, rw, rverts in right:
                if best is not None and lw + rw >= best[0]:
                    break
                if lmask & rmask:
                    continue
                best = (lw + rw, lverts, rverts)
                break
    if best is None:
        return DisjointPathsResult(INFEASIBLE)
    return DisjointPathsResult(FOUND, best[1], best[2],
                               Fraction(best[0], g.weight_scale))


def _two_disjoint_flow(g: WeightedGraph, s: int, t: int, a: int, b: int
                       ) -> DisjointPathsResult:
    """Two-unit min-cost flow on the vertex-split digraph (weights >= 0)."""
    n_nodes = 2 * g.n + 2
    src, sink = 2 * g.n, 2 * g.n + 1
    head: list[int] = []
    nxt: list[int] = []
    first = [-1] * n_nodes
    cap: list[int] = []
    cost: list[int] = []

    def arc(u: int, v: int, c: int, w: int) -> None:
        for (x, y, cc, ww) in ((u, v, c, w), (v, u, 0, -w)):
            head.append(y)
            cap.append(cc)
            cost.append(ww)
            nxt.append(first[x])
            first[x] = len(head) - 1

    for v in range(g.n):
        arc(2 * v, 2 * v + 1, 1, 0)
    for e, (u, v, _w) in enumerate(g.edges):
        w = g.int_weights[e]
        arc(2 * u + 1, 2 * v, 1, w)
        arc(2 * v + 1, 2 * u, 1, w)
    arc(src, 2 * s, 1, 0)
    arc(src, 2 * t, 1, 0)
    arc(2 * a + 1, sink, 1, 0)
    arc(2 * b + 1, sink, 1, 0)

    sent = 0
    total = 0
    for _round in range(2):
        # Bellman-Ford (queue form); residual arcs may be negative.
        dist: list[int | None] = [None] * n_nodes
        in_arc = [-1] * n_nodes
        dist[src] = 0
        queue = deque([src])
        inq = [False] * n_nodes
        inq[src] = True
        while queue:
            x = queue.popleft()
            inq[x] = False
            d = dist[x]
            i = first[x]
            while i != -1:
                if cap[i] > 0:
                    y = head[i]
                    ndist = d + cost[i]
                    if dist[y] is None or ndist < dist[y]:
                        dist[y] = ndist
                        in_arc[y] = i
                        if not inq[y]:
                            inq[y] = True
                            queue.append(y)
                i = nxt[i]
        if dist[sink] is None:
            break
        x = sink
        while x != src:
            i = in_arc[x]
            cap[i] -= 1
            cap[i ^ 1] += 1
            x = head[i ^ 1]
        total += dist[sink]
        sent += 1
    if sent < 2:
        return DisjointPathsResult(INFEASIBLE)

    def walk(start: int) -> tuple[int, ...]:
        verts = [start]
        node = 2 * start
        while True:
            node += 1  # through the split arc
            i = first[node]
            step = -1
            while i != -1:
                # forward arcs are even-indexed; used iff residual cap of
                # the reverse arc is positive
                if i % 2 == 0 and cap[i ^ 1] > 0 and head[i] != sink:
                    step = i
                    break
                if i % 2 == 0 and cap[i ^ 1] > 0 and head[i] == sink:
                    step = -2
                    break
                i = nxt[i]
            if step == -2:
                return tuple(verts)
            assert step != -1, "flow decomposition lost its way"
            cap[step ^ 1] -= 1  # consume so shared prefixes cannot repeat
            node = head[step]
            verts.append(node // 2)

    path_s = walk(s)
    path_t = walk(t)
    if path_s[-1] not in (a, b):
        path_s, path_t = path_t, path_s
    if path_s[0] != s:
        path_s, path_t = path_t, path_s
    assert path_s[0] == s and path_t[0] == t
    assert {path_s[-1], path_t[-1]} == {a, b}
    assert not set(path_s) & set(path_t)
    return DisjointPathsResult(FOUND, path_s, path_t,
                               Fraction(total, g.weight_scale))


# ---------------------------------------------------------------------------
# Second-type assembly.
# ---------------------------------------------------------------------------

def second_type_candidates(g: WeightedGraph, leap: Leap,
                           dp: DisjointPathsResult, tree: NegativeTree
                           ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Both ways around the induced odd cycle, as vertex sequences.

    The leap and the tree path between its endpoints form an odd cycle C.
    Each terminal path is truncated at its first C-vertex; the two hit
    points cut C into two arcs, giving two candidate walks of which
    exactly one has odd length.
    """
    assert leap.parity_changing and dp.found
    cycle = list(leap.path)
    tree_back = tree.path_vertices(g, leap.b, leap.a)
    cycle += tree_back[1:-1]
    on_cycle = set(cycle)
    pos = {v: i for i, v in enumerate(cycle)}

    def truncate(path: tuple[int, ...]) -> tuple[int, ...]:
        for i, v in enumerate(path):
            if v in on_cycle:
                return path[:i + 1]
        raise AssertionError("terminal path must reach the cycle")

    ps = truncate(dp.path_s)
    pt = truncate(dp.path_t)
    x, y = ps[-1], pt[-1]
    assert x != y, "disjoint paths cannot meet the cycle at one vertex"
    rot = cycle[pos[x]:] + cycle[:pos[x]]  # cycle rotated to start at x
    k = rot.index(y)
    arc_fwd = rot[:k + 1]                      # x .. y one way around
    arc_back = [rot[0]] + rot[:k - 1:-1]       # x .. y the other way
    first = tuple(list(ps) + list(arc_fwd[1:]) + list(pt[-2::-1]))
    second = tuple(list(ps) + list(arc_back[1:]) + list(pt[-2::-1]))
    return first, second


def assemble_second_type(g: WeightedGraph, leap: Leap, dp: DisjointPathsResult,
                         tree: NegativeTree) -> OddPathSolution:
    """Keep the odd one of the two ways around the induced cycle."""
    candidates = second_type_candidates(g, leap, dp, tree)
    odd = [v for v in candidates if (len(v) - 1) % 2 == 1]
    assert len(odd) == 1, "exactly one way around an odd cycle is odd"
    verts = odd[0]
    assert len(set(verts)) == len(verts)
    sol = OddPathSolution(FOUND, verts, g.path_weight(verts))
    verify_odd_path_solution(g, sol, verts[0], verts[-1])
    return sol


# ---------------------------------------------------------------------------
# Main loop.
# ---------------------------------------------------------------------------

def _better(cur: OddPathSolution | None, new: OddPathSolution
            ) -> OddPathSolution | None:
    if not new.found:
        return cur
    if cur is None:
        return new
    assert cur.weight is not None and new.weight is not None
    old_key = (cur.weight, cur.length, cur.vertices)
    new_key = (new.weight, new.length, new.vertices)
    return new if new_key < old_key else cur


def solve_negative_tree(g: WeightedGraph, s: int, t: int, *,
                        assume_conservative: bool = False,
                        disjoint_guard: int = DEFAULT_DISJOINT_GUARD
                        ) -> OddPathSolution:
    """Minimum-weight odd (s,t)-path when negative edges form one tree."""
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise InvalidInputError("terminals must be vertices of the graph")
    if s == t:
        raise InvalidInputError("terminals must be distinct")
    if not assume_conservative:
        report = validate_conservative(g)
        if not report.conservative:
            raise ConservativenessViolationError(
                "weights admit a negative cycle", report.witness_cycle)
    forest = negative_forest(g)
    if not forest.trees:
        return shortest_odd_path_nonneg(g, s, t)
    if len(forest.trees) > 1:
        raise WrongSolverError(
            f"negative edges form {len(forest.trees)} trees; this solver "
            "handles at most one (use an FPT or treewidth solver)")
    tree = forest.trees[0]
    best: OddPathSolution | None = None
    for a, b in itertools.combinations(sorted(tree.vertices), 2):
        # First type: both alternation orientations of the kept tree path.
        tab = tree.path_edges(a, b)
        f_even_a = [e for pos, e in enumerate(tab, start=1) if pos % 2 == 0]
        f_odd_a = [e for pos, e in enumerate(tab, start=1) if pos % 2 == 1]
        sub, emap = g.without_edges(tree.edge_ids - set(tab))
        for fe, fo in ((f_even_a, f_odd_a), (f_odd_a, f_even_a)):
            c = ParityConstraints.of((emap[e] for e in fe),
                                     (emap[e] for e in fo))
            sol = solve_spcop(sub, s, t, c, assume_conservative=True)
            best = _better(best, sol)
        # Second type: cheapest parity-changing leap plus disjoint paths.
        leap = parity_changing_leap_min(g, forest, 0, a, b)
        if leap is None:
            continue
        dp = two_disjoint_paths(g, s, t, a, b, guard=disjoint_guard)
        if not dp.found:
            continue
        best = _better(best, assemble_second_type(g, leap, dp, tree))
    if best is None:
        return infeasible()
    verify_odd_path_solution(g, best, s, t)
    return best


# ---------------------------------------------------------------------------
# Shortest two disjoint paths via any odd-path solver.
# ---------------------------------------------------------------------------

def stdp_via_sop(g: WeightedGraph, s: int, t: int,
                 sop_solver: Callable[[WeightedGraph, int, int], OddPathSolution]
                 ) -> DisjointPathsResult:
    """Openly disjoint (s,t)-path pair of minimum total weight.

    Gadget: duplicate s and t (copies inherit the original adjacencies),
    subdivide every edge at half weight, then add a zero-weight edge t-t'.
    Odd (s,s')-paths then correspond exactly to openly disjoint (s,t)-path
    pairs of the same total weight: subdivision makes every original hop
    even, so odd parity forces exactly one use of the t-t' shortcut.

    The caller must supply a solver that is valid for the gadget graph.
    Note the copies duplicate the terminal incidences, so when a terminal
    touches a negative edge the gadget is no longer conservative (the
    duplicated negative edges close negative cycles); a solver that does
    not rely on conservativeness, such as the treewidth solver, still
    applies there.  With terminals off the negative edges, every gadget
    cycle projects to a closed walk repeating no negative edge, so the
    gadget stays conservative and keeps the negative-tree shape.
    """
    if s == t:
        raise InvalidInputError("terminals must be distinct")
    n = g.n
    s_copy, t_copy = n, n + 1
    base: list[tuple[int, int, Fraction]] = [(u, v, w) for u, v, w in g.edges]
    # The copies must not duplicate a direct s-t edge: a copy-to-terminal
    # edge would let one original edge serve both halves of the odd path
    # (s, t', t, s'), which projects onto the same edge twice.  A pair that
    # uses the edge st can always put it in the first half instead.
    for e, y in g.adj[s]:
        if y != t:
            base.append((s_copy, y, g.edges[e].w))
    for e, y in g.adj[t]:
        if y != s:
            base.append((t_copy, y, g.edges[e].w))
    half_edges: list[tuple[int, int, Fraction]] = []
    mid_of: list[int] = []
    nxt = n + 2
    for u, v, w in base:
        half_edges.append((u, nxt, w / 2))
        half_edges.append((nxt, v, w / 2))
        mid_of.append(nxt)
        nxt += 1
    half_edges.append((t, t_copy, Fraction(0)))
    gadget = WeightedGraph(nxt, half_edges)
    sol = sop_solver(gadget, s, s_copy)
    if not sol.found:
        return DisjointPathsResult(INFEASIBLE)
    assert sol.vertices is not None and sol.weight is not None

    def project(seq: list[int]) -> tuple[int, ...]:
        out = []
        for v in seq:
            if v < n:
                out.append(v)
            elif v == s_copy:
                out.append(s)
            elif v == t_copy:
                out.append(t)
        return tuple(out)

    verts = list(sol.vertices)
    cut = None
    for i in range(len(verts) - 1):
        if {verts[i], verts[i + 1]} == {t, t_copy}:
            cut = i
            break
    assert cut is not None, "odd parity forces the zero-weight shortcut"
    first = project(verts[:cut + 1])
    second = project(verts[cut + 1:])[::-1]
    if first[0] != s:
        first, second = second, first
    if first[-1] == s:
        first = first[::-1]
    if second[-1] == s:
        second = second[::-1]
    assert first[0] == s and first[-1] == t
    assert second[0] == s and second[-1] == t
    assert not (set(first[1:-1]) & set(second[1:-1]))
    assert g.path_weight(first) + g.path_weight(second) == sol.weight
    return DisjointPathsResult(FOUND, first, second, sol.weight)
