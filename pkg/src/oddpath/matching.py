"""Minimum-weight perfect matching on general graphs, plus T-joins.

The engine is a primal-dual blossom algorithm written here from scratch.
Internally it maximizes an affinely transformed integer weight (so that a
maximum-weight matching is exactly a minimum-weight perfect matching of the
original instance), keeps all dual variables as integers, and can export an
LP duality certificate that an independent validator checks.

Exact arithmetic: rational input weights are scaled by their common
denominator before the solve; no floating point is used anywhere.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CertificateError, InvalidInputError
from .graph import WeightedGraph

FOUND = "found"
INFEASIBLE = "infeasible"

_NONE, _S, _T = 0, 1, 2


class _Blossom:
    """A trivial blossom: one vertex."""

    __slots__ = ("parent", "base", "label", "tree_edge", "best_edge", "marker")

    def __init__(self, base: int):
        self.parent: Optional[_Compound] = None
        self.base = base
        self.label = _NONE
        # Edge (x, y) through which this blossom hangs in the alternating
        # tree; y lies inside this blossom.  None for tree roots.
        self.tree_edge: Optional[tuple[int, int]] = None
        self.best_edge = -1
        self.marker = False

    def vertices(self) -> list[int]:
        return [self.base]


class _Compound(_Blossom):
    """A non-trivial blossom: an odd ring of sub-blossoms."""

    __slots__ = ("subs", "ring", "dual", "best_edge_set")

    def __init__(self, subs: list[_Blossom], ring: list[tuple[int, int]]):
        super().__init__(subs[0].base)
        assert len(subs) == len(ring) and len(subs) % 2 == 1 and len(subs) >= 3
        # subs[0] contains the base; ring[i] joins subs[i] to subs[i+1 mod k].
        # Odd-indexed ring edges are matched, the two edges at subs[0] are not.
        self.subs = subs
        self.ring = ring
        self.dual = 0
        self.best_edge_set: Optional[list[int]] = None

    def vertices(self) -> list[int]:
        out: list[int] = []
        stack: list[_Compound] = [self]
        while stack:
            b = stack.pop()
            for sub in b.subs:
                if isinstance(sub, _Compound):
                    stack.append(sub)
                else:
                    out.append(sub.base)
        return out


class _Core:
    """Maximum-weight matching on non-negative even-sum integer weights.

    All dual values are stored doubled (``dual2``) so they stay integral:
    with integer edge weights every S-to-S slack is even, because all free
    vertices keep identical duals and alternating trees only grow along
    tight edges.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int, int]]):
        self.n = n
        self.edges = edges
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for e, (u, v, _w) in enumerate(edges):
            self.adj[u].append(e)
            self.adj[v].append(e)
        self.mate = [-1] * n
        self.trivial = [_Blossom(v) for v in range(n)]
        self.compounds: list[_Compound] = []
        self.top: list[_Blossom] = list(self.trivial)
        maxw = max((w for _u, _v, w in edges), default=0)
        self.dual2 = [maxw] * n
        self.vertex_best_edge = [-1] * n
        self.queue: list[int] = []

    # -- slack ------------------------------------------------------------

    def slack2(self, e: int) -> int:
        u, v, w = self.edges[e]
        return self.dual2[u] + self.dual2[v] - 2 * w

    # -- least-slack edge tracking ----------------------------------------

    def _lset_reset(self) -> None:
        self.vertex_best_edge = [-1] * self.n
        for b in self.trivial:
            b.best_edge = -1
        for b in self.compounds:
            b.best_edge = -1
            b.best_edge_set = None

    def _lset_vertex_edge(self, y: int, e: int, slack: int) -> None:
        best = self.vertex_best_edge[y]
        if best == -1 or slack < self.slack2(best):
            self.vertex_best_edge[y] = e

    def _lset_blossom_edge(self, b: _Blossom, e: int, slack: int) -> None:
        if b.best_edge == -1 or slack < self.slack2(b.best_edge):
            b.best_edge = e
        if isinstance(b, _Compound):
            assert b.best_edge_set is not None
            b.best_edge_set.append(e)

    def _lset_merge(self, blossom: _Compound) -> None:
        # Combine least-slack edge lists of the S-sub-blossoms, keeping one
        # edge per neighbouring S-blossom (keyed by its base vertex).
        best_to: dict[int, int] = {}
        best_edge = -1
        best_slack = 0
        for sub in blossom.subs:
            if sub.label != _S:
                continue
            if isinstance(sub, _Compound) and sub.best_edge_set is not None:
                cand = sub.best_edge_set
                sub.best_edge_set = None
            else:
                cand = self.adj[sub.base]
            for e in cand:
                u, v, _w = self.edges[e]
                bu, bv = self.top[u], self.top[v]
                if bu is bv:
                    continue
                other = bv if bu is blossom else bu
                if other.label != _S:
                    continue
                slack = self.slack2(e)
                key = other.base
                if key not in best_to or slack < self.slack2(best_to[key]):
                    best_to[key] = e
                if best_edge == -1 or slack < best_slack:
                    best_edge, best_slack = e, slack
        blossom.best_edge_set = list(best_to.values())
        blossom.best_edge = best_edge

    def _best_vertex_edge(self) -> tuple[int, int]:
        best, slack = -1, 0
        for x in range(self.n):
            if self.top[x].label == _NONE:
                e = self.vertex_best_edge[x]
                if e != -1:
                    s = self.slack2(e)
                    if best == -1 or s < slack:
                        best, slack = e, s
        return best, slack

    def _best_blossom_edge(self) -> tuple[int, int]:
        best, slack = -1, 0
        for b in self.trivial + self.compounds:  # type: ignore[operator]
            if b.label == _S and b.parent is None and b.best_edge != -1:
                s = self.slack2(b.best_edge)
                if best == -1 or s < slack:
                    best, slack = b.best_edge, s
        return best, slack

    # -- labels and tree growth --------------------------------------------

    def _assign_s(self, x: int) -> None:
        bx = self.top[x]
        assert bx.label == _NONE
        bx.label = _S
        y = self.mate[x]
        if y == -1:
            assert bx.base == x
            bx.tree_edge = None
        else:
            assert self.top[y].label == _T
            bx.tree_edge = (y, x)
        if isinstance(bx, _Compound):
            bx.best_edge_set = []
        self.queue.extend(bx.vertices())

    def _assign_t(self, x: int, y: int) -> None:
        by = self.top[y]
        assert by.label == _NONE
        by.label = _T
        by.tree_edge = (x, y)
        z = self.mate[by.base]
        assert z != -1
        self._assign_s(z)

    def _trace(self, x: int, y: int) -> list[tuple[int, int]]:
        """Trace tree paths from x and y; returns an alternating edge path.

        The path either closes a new blossom (both ends in one blossom) or
        is an augmenting path between two free roots.
        """
        marked: list[_Blossom] = []
        xedges: list[tuple[int, int]] = [(x, y)]
        yedges: list[tuple[int, int]] = [(y, x)]
        first_common: Optional[_Blossom] = None
        while x != -1 or y != -1:
            bx = self.top[x]
            if bx.marker:
                first_common = bx
                break
            bx.marker = True
            marked.append(bx)
            if bx.tree_edge is None:
                x = -1
            else:
                xedges.append(bx.tree_edge)
                x = bx.tree_edge[0]
            if y != -1:
                x, y = y, x
                xedges, yedges = yedges, xedges
        for b in marked:
            b.marker = False
        if first_common is not None:
            assert self.top[xedges[-1][0]] is first_common
            while self.top[yedges[-1][0]] is not first_common:
                yedges.pop()
        path = xedges[::-1] + [(q, p) for (p, q) in yedges[1:]]
        assert len(path) % 2 == 1
        return path

    def _make_blossom(self, path: list[tuple[int, int]]) -> None:
        subs = [self.top[p] for (p, _q) in path]
        assert subs[0] is self.top[path[-1][1]]
        blossom = _Compound(subs, path)
        self.compounds.append(blossom)
        for sub in subs:
            sub.parent = blossom
        for v in blossom.vertices():
            self.top[v] = blossom
        assert subs[0].label == _S
        blossom.label = _S
        blossom.tree_edge = subs[0].tree_edge
        for sub in subs:
            if sub.label == _T:
                self.queue.extend(sub.vertices())
        self._lset_merge(blossom)

    @staticmethod
    def _ring_path(blossom: _Compound, sub: _Blossom
                   ) -> tuple[list[_Blossom], list[tuple[int, int]]]:
        """Even alternating path around the ring from ``sub`` to the base,
        starting with a matched ring edge."""
        nodes = [sub]
        edges: list[tuple[int, int]] = []
        p = blossom.subs.index(sub)
        k = len(blossom.subs)
        while p != 0:
            if p % 2 == 0:
                edges.append(blossom.ring[p - 1][::-1])
                nodes.append(blossom.subs[p - 1])
                edges.append(blossom.ring[p - 2][::-1])
                nodes.append(blossom.subs[p - 2])
                p -= 2
            else:
                edges.append(blossom.ring[p])
                nodes.append(blossom.subs[p + 1])
                edges.append(blossom.ring[p + 1])
                nodes.append(blossom.subs[(p + 2) % k])
                p = (p + 2) % k
        return nodes, edges

    def _expand_t_blossom(self, blossom: _Compound) -> None:
        assert blossom.parent is None and blossom.label == _T
        for sub in blossom.subs:
            sub.parent = None
            for v in sub.vertices():
                self.top[v] = sub
        assert blossom.tree_edge is not None
        _x, y = blossom.tree_edge
        sub = self.top[y]
        sub.label = _T
        sub.tree_edge = blossom.tree_edge
        nodes, edges = self._ring_path(blossom, sub)
        for p in range(0, len(edges), 2):
            _y, x = edges[p]
            self._assign_s(x)
            nxt = nodes[p + 2]
            nxt.label = _T
            nxt.tree_edge = edges[p + 1]
        self.compounds.remove(blossom)

    def _expand_zero_dual(self) -> None:
        stack = [b for b in self.compounds if b.parent is None and b.dual == 0]
        while stack:
            blossom = stack.pop()
            for sub in blossom.subs:
                sub.parent = None
                if isinstance(sub, _Compound) and sub.dual == 0:
                    stack.append(sub)
                else:
                    for v in sub.vertices():
                        self.top[v] = sub
            self.compounds.remove(blossom)

    # -- augmenting ---------------------------------------------------------

    def _augment_blossom(self, outer: _Compound, start: _Blossom) -> None:
        stack: list[tuple[_Compound, _Blossom]] = [(outer, start)]
        while stack:
            out, sub = stack.pop()
            assert sub.parent is not None
            blossom = sub.parent
            if blossom is not out:
                stack.append((out, blossom))
            nodes, edges = self._ring_path(blossom, sub)
            for p in range(0, len(edges), 2):
                x, y = edges[p + 1]
                self.mate[x] = y
                self.mate[y] = x
                bx = nodes[p + 1]
                if isinstance(bx, _Compound):
                    stack.append((bx, self.trivial[x]))
                by = nodes[p + 2]
                if isinstance(by, _Compound):
                    stack.append((by, self.trivial[y]))
            p = blossom.subs.index(sub)
            blossom.subs = blossom.subs[p:] + blossom.subs[:p]
            blossom.ring = blossom.ring[p:] + blossom.ring[:p]
            blossom.base = sub.base

    def _augment(self, path: list[tuple[int, int]]) -> None:
        assert len(path) % 2 == 1
        for x, y in path[0::2]:
            bx = self.top[x]
            if isinstance(bx, _Compound):
                self._augment_blossom(bx, self.trivial[x])
            by = self.top[y]
            if isinstance(by, _Compound):
                self._augment_blossom(by, self.trivial[y])
            self.mate[x] = y
            self.mate[y] = x

    # -- stages -------------------------------------------------------------

    def _scan(self) -> Optional[list[tuple[int, int]]]:
        while self.queue:
            x = self.queue.pop()
            assert self.top[x].label == _S
            for e in self.adj[x]:
                u, v, _w = self.edges[e]
                y = v if u == x else u
                bx, by = self.top[x], self.top[y]
                if bx is by:
                    continue
                slack = self.slack2(e)
                ylabel = by.label
                if slack <= 0:
                    if ylabel == _NONE:
                        self._assign_t(x, y)
                    elif ylabel == _S:
                        path = self._trace(x, y)
                        if self.top[path[0][0]] is self.top[path[-1][1]]:
                            self._make_blossom(path)
                        else:
                            return path
                elif ylabel == _S:
                    self._lset_blossom_edge(bx, e, slack)
                if ylabel != _S:
                    self._lset_vertex_edge(y, e, slack)
        return None

    def _delta(self) -> tuple[int, int, int, Optional[_Compound]]:
        delta_type = 1
        delta = min(self.dual2[x] for x in range(self.n)
                    if self.top[x].label == _S)
        e, slack = self._best_vertex_edge()
        if e != -1 and slack <= delta:
            delta_type, delta, delta_edge = 2, slack, e
        else:
            delta_edge = -1
        e, slack = self._best_blossom_edge()
        if e != -1:
            assert slack % 2 == 0, "S-to-S slack must stay even"
            if slack // 2 <= delta:
                delta_type, delta, delta_edge = 3, slack // 2, e
        delta_blossom = None
        for b in self.compounds:
            if b.parent is None and b.label == _T and b.dual <= delta:
                delta_type, delta, delta_blossom = 4, b.dual, b
        return delta_type, delta, delta_edge, delta_blossom

    def _apply_delta(self, delta: int) -> None:
        for x in range(self.n):
            lab = self.top[x].label
            if lab == _S:
                self.dual2[x] -= delta
            elif lab == _T:
                self.dual2[x] += delta
        for b in self.compounds:
            if b.parent is None:
                if b.label == _S:
                    b.dual += delta
                elif b.label == _T:
                    b.dual -= delta

    def run_stage(self) -> bool:
        for x in range(self.n):
            if self.mate[x] == -1 and self.top[x].label == _NONE:
                self._assign_s(x)
        if not self.queue:
            return False
        path = None
        while True:
            path = self._scan()
            if path is not None:
                break
            delta_type, delta, delta_edge, delta_blossom = self._delta()
            self._apply_delta(delta)
            if delta_type == 1:
                break
            if delta_type == 2:
                u, v, _w = self.edges[delta_edge]
                if self.top[u].label != _S:
                    u, v = v, u
                self._assign_t(u, v)
            elif delta_type == 3:
                u, v, _w = self.edges[delta_edge]
                trace = self._trace(u, v)
                if self.top[trace[0][0]] is self.top[trace[-1][1]]:
                    self._make_blossom(trace)
                else:
                    path = trace
                    break
            else:
                assert delta_blossom is not None
                self._expand_t_blossom(delta_blossom)
        if path is not None:
            self._augment(path)
        self._expand_zero_dual()
        for b in self.trivial + self.compounds:  # type: ignore[operator]
            b.label = _NONE
            b.tree_edge = None
        self.queue.clear()
        self._lset_reset()
        return path is not None

    def solve(self) -> None:
        while self.run_stage():
            pass


# ---------------------------------------------------------------------------
# Public results and certificate.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatchingCertificate:
    """LP duality certificate in the transformed (maximization) space.

    ``weights`` are the affinely shifted non-negative integer weights the
    engine maximized; ``vertex_dual_2x`` are doubled vertex duals; each
    blossom is a (vertex tuple, dual) pair.  :func:`validate_certificate`
    checks feasibility and complementary slackness, which certifies that the
    matched edge set is a maximum-weight matching of ``weights`` and hence a
    minimum-weight perfect matching of the original instance.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    matched: tuple[tuple[int, int], ...]
    vertex_dual_2x: tuple[int, ...]
    blossoms: tuple[tuple[tuple[int, ...], int], ...]


def validate_certificate(cert: MatchingCertificate) -> None:
    """Raise :class:`CertificateError` unless the certificate is valid."""
    mate = {}
    for x, y in cert.matched:
        if x in mate or y in mate:
            raise CertificateError("matched edges overlap")
        mate[x] = y
        mate[y] = x
    if any(d < 0 for d in cert.vertex_dual_2x):
        raise CertificateError("negative vertex dual")
    for v in range(cert.n):
        if v not in mate and cert.vertex_dual_2x[v] != 0:
            raise CertificateError(f"exposed vertex {v} has non-zero dual")
    blossom_sets = []
    for vs, dual in cert.blossoms:
        if dual < 0:
            raise CertificateError("negative blossom dual")
        if len(vs) % 2 == 0 or len(vs) < 3:
            raise CertificateError("blossom must span an odd set of >= 3 vertices")
        blossom_sets.append((frozenset(vs), dual))
    matched_pairs = {frozenset(p) for p in cert.matched}
    for u, v, w in cert.edges:
        slack = cert.vertex_dual_2x[u] + cert.vertex_dual_2x[v] - 2 * w
        slack += 2 * sum(dual for vs, dual in blossom_sets
                         if u in vs and v in vs)
        if slack < 0:
            raise CertificateError(f"edge ({u},{v}) has negative slack {slack}")
        if frozenset((u, v)) in matched_pairs and slack != 0:
            raise CertificateError(f"matched edge ({u},{v}) is not tight")
    for vs, dual in blossom_sets:
        if dual > 0:
            inside = sum(1 for p in matched_pairs if p <= vs)
            if 2 * inside + 1 != len(vs):
                raise CertificateError("blossom with positive dual is not full")


@dataclass(frozen=True)
class PerfectMatchingResult:
    status: str
    edge_ids: tuple[int, ...] = ()
    weight: Fraction = Fraction(0)
    certificate: MatchingCertificate | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND


def _scale_to_int(weights: Sequence[Fraction]) -> tuple[int, list[int]]:
    scale = 1
    for w in weights:
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    return scale, [int(w * scale) for w in weights]


def min_weight_perfect_matching_edges(
        n: int,
        edges: Sequence[tuple[int, int, Fraction | int]],
        *,
        with_certificate: bool = False,
        validate: bool = False) -> PerfectMatchingResult:
    """Minimum-weight perfect matching of an explicit edge list.

    Weights may be negative; they are handled by a uniform affine shift,
    which is safe because all perfect matchings have the same cardinality.
    """
    if n % 2 == 1:
        return PerfectMatchingResult(INFEASIBLE)
    if n == 0:
        return PerfectMatchingResult(FOUND, (), Fraction(0))
    fracs = [Fraction(w) for _u, _v, w in edges]
    if not edges:
        return PerfectMatchingResult(INFEASIBLE)
    _scale, ints = _scale_to_int(fracs)
    # Flip sign for maximization, then shift so that higher cardinality
    # always beats higher per-edge weight (perfect == maximum cardinality).
    top = max(ints) + 1
    flipped = [top - w for w in ints]
    spread = max(flipped) - min(flipped)
    floor_needed = max(1, n * spread)
    if min(flipped) < floor_needed:
        bump = floor_needed - min(flipped)
        flipped = [w + bump for w in flipped]
    core_edges = [(u, v, flipped[e]) for e, (u, v, _w) in enumerate(edges)]
    core = _Core(n, core_edges)
    core.solve()
    if any(m == -1 for m in core.mate):
        return PerfectMatchingResult(INFEASIBLE)
    pair_to_id = {}
    for e, (u, v, _w) in enumerate(edges):
        pair_to_id[(u, v) if u < v else (v, u)] = e
    chosen = []
    for x in range(n):
        y = core.mate[x]
        if x < y:
            chosen.append(pair_to_id[(x, y)])
    weight = sum((fracs[e] for e in chosen), Fraction(0))
    cert = None
    if with_certificate or validate:
        cert = MatchingCertificate(
            n=n,
            edges=tuple(core_edges),
            matched=tuple((x, core.mate[x]) for x in range(n) if x < core.mate[x]),
            vertex_dual_2x=tuple(core.dual2),
            blossoms=tuple((tuple(sorted(b.vertices())), b.dual)
                           for b in core.compounds),
        )
        if validate:
            validate_certificate(cert)
    return PerfectMatchingResult(FOUND, tuple(sorted(chosen)), weight,
                                 cert if with_certificate else None)


def min_weight_perfect_matching(g: WeightedGraph, *, with_certificate: bool = False,
                                validate: bool = False) -> PerfectMatchingResult:
    """Minimum-weight perfect matching of a :class:`WeightedGraph`."""
    return min_weight_perfect_matching_edges(
        g.n, [(u, v, w) for u, v, w in g.edges],
        with_certificate=with_certificate, validate=validate)


def maximum_matching_size(n: int, edges: Sequence[tuple[int, int]]) -> int:
    """Size of a maximum-cardinality matching.

    Cardinality-to-perfect reduction: every original vertex v_i gets a
    private zero-weight dummy partner d_i, dummies form a zero-weight
    clique, and original edges get weight -1.  A minimum-weight perfect
    matching of the padded graph then matches as many original edges as
    possible, and its weight is minus the maximum matching size.
    """
    if n == 0 or not edges:
        return 0
    padded: list[tuple[int, int, int]] = [(u, v, -1) for u, v in edges]
    padded += [(v, n + v, 0) for v in range(n)]
    padded += [(n + a, n + b, 0) for a in range(n) for b in range(a + 1, n)]
    res = min_weight_perfect_matching_edges(2 * n, padded)
    assert res.found
    return -int(res.weight)


# ---------------------------------------------------------------------------
# T-joins on non-negative weights (metric closure + perfect matching).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TJoinResult:
    status: str
    edge_ids: frozenset[int] = frozenset()
    weight: Fraction = Fraction(0)


def _dijkstra(g: WeightedGraph, src: int) -> tuple[list[int | None], list[tuple[int, int] | None]]:
    """Integer-weight Dijkstra; returns (dist, parent (vertex, edge))."""
    dist: list[int | None] = [None] * g.n
    parent: list[tuple[int, int] | None] = [None] * g.n
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        d, x = heapq.heappop(heap)
        if dist[x] is not None and d > dist[x]:
            continue
        for e, y in g.adj[x]:
            nd = d + g.int_weights[e]
            if dist[y] is None or nd < dist[y]:
                dist[y] = nd
                parent[y] = (x, e)
                heapq.heappush(heap, (nd, y))
    return dist, parent


def min_weight_t_join(g: WeightedGraph, t_set: Iterable[int]) -> TJoinResult:
    """Minimum-weight edge set whose odd-degree vertices are exactly t_set.

    Requires non-negative weights (the caller pre-transforms); built from
    the metric closure of t_set plus a perfect matching, taking symmetric
    differences of shortest paths.
    """
    terminals = sorted(set(t_set))
    if len(terminals) % 2 == 1:
        raise InvalidInputError("t-join needs an even number of terminals")
    if g.has_negative_weights():
        raise InvalidInputError("t-join requires non-negative weights")
    if not terminals:
        return TJoinResult(FOUND, frozenset(), Fraction(0))
    dists: dict[int, list[int | None]] = {}
    parents: dict[int, list[tuple[int, int] | None]] = {}
    for t in terminals:
        dists[t], parents[t] = _dijkstra(g, t)
    closure: list[tuple[int, int, Fraction]] = []
    for i, a in enumerate(terminals):
        for j in range(i + 1, len(terminals)):
            b = terminals[j]
            d = dists[a][b]
            if d is not None:
                closure.append((i, j, Fraction(d, g.weight_scale)))
    res = min_weight_perfect_matching_edges(len(terminals), closure)
    if not res.found:
        return TJoinResult(INFEASIBLE)
    join: set[int] = set()
    for cid in res.edge_ids:
        i, j, _w = closure[cid]
        a, b = terminals[i], terminals[j]
        x = b
        while x != a:
            px = parents[a][x]
            assert px is not None
            join.symmetric_difference_update((px[1],))
            x = px[0]
    weight = sum((g.edges[e].w for e in join), Fraction(0))
    degree = [0] * g.n
    for e in join:
        degree[g.edges[e].u] += 1
        degree[g.edges[e].v] += 1
    assert [v for v in range(g.n) if degree[v] % 2 == 1] == terminals
    assert weight <= res.weight
    return TJoinResult(FOUND, frozenset(join), weight)
