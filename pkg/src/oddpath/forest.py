"""Negative-edge trees: construction, path queries, leaps and shadows.

Under a conservative weight function the negative edges span a forest; each
connected component is a tree.  These trees drive both the polynomial
single-tree solver and several structural property tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConservativenessViolationError, InvalidEndpointError, InvalidInputError
from .graph import WeightedGraph


@dataclass(frozen=True)
class NegativeTree:
    """One tree of the negative forest, rooted for path queries."""

    edge_ids: frozenset[int]
    vertices: frozenset[int]
    root: int
    parent: dict[int, tuple[int, int] | None]  # vertex -> (parent vertex, edge id)
    depth: dict[int, int]

    def path_edges(self, a: int, b: int) -> list[int]:
        """Ordered edge ids of the unique a-b path inside the tree."""
        if a not in self.vertices or b not in self.vertices:
            raise InvalidEndpointError(f"{a} or {b} is not on this tree")
        if a == b:
            raise InvalidEndpointError("tree path endpoints must differ")
        up_a: list[int] = []
        up_b: list[int] = []
        x, y = a, b
        while x != y:
            if self.depth[x] >= self.depth[y]:
                px = self.parent[x]
                assert px is not None
                up_a.append(px[1])
                x = px[0]
            else:
                py = self.parent[y]
                assert py is not None
                up_b.append(py[1])
                y = py[0]
        return up_a + up_b[::-1]

    def path_vertices(self, g: WeightedGraph, a: int, b: int) -> list[int]:
        verts = [a]
        for e in self.path_edges(a, b):
            u, v, _w = g.edges[e]
            verts.append(v if verts[-1] == u else u)
        assert verts[-1] == b
        return verts


@dataclass(frozen=True)
class NegativeForest:
    trees: tuple[NegativeTree, ...]

    def tree_of_vertex(self, v: int) -> int | None:
        for i, t in enumerate(self.trees):
            if v in t.vertices:
                return i
        return None

    @property
    def vertex_to_tree(self) -> dict[int, int]:
        out = {}
        for i, t in enumerate(self.trees):
            for v in t.vertices:
                out[v] = i
        return out


def negative_forest(g: WeightedGraph) -> NegativeForest:
    """Group the negative edges into their spanning trees.

    Raises :class:`ConservativenessViolationError` when a negative component
    contains a cycle (an all-negative cycle certifies non-conservativeness).
    """
    neg = g.negative_edge_ids()
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in neg:
        u, v, _w = g.edges[e]
        adj.setdefault(u, []).append((e, v))
        adj.setdefault(v, []).append((e, u))
    seen: set[int] = set()
    trees: list[NegativeTree] = []
    for start in sorted(adj):
        if start in seen:
            continue
        parent: dict[int, tuple[int, int] | None] = {start: None}
        depth = {start: 0}
        comp_edges: set[int] = set()
        order = [start]
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for e, y in adj[x]:
                if e in comp_edges:
                    continue
                if y in depth:
                    cycle = _close_cycle(g, parent, x, y, e)
                    raise ConservativenessViolationError(
                        "negative edges contain a cycle", cycle)
                comp_edges.add(e)
                parent[y] = (x, e)
                depth[y] = depth[x] + 1
                seen.add(y)
                order.append(y)
                stack.append(y)
        trees.append(NegativeTree(frozenset(comp_edges), frozenset(order),
                                  start, parent, depth))
    return NegativeForest(tuple(trees))


def _close_cycle(g: WeightedGraph, parent: dict[int, tuple[int, int] | None],
                 x: int, y: int, _e: int) -> tuple[int, ...]:
    """Vertex cycle through tree edges from x up to y plus the edge xy."""
    up: list[int] = [x]
    anc = {x: 0}
    cur = x
    while parent[cur] is not None:
        cur = parent[cur][0]  # type: ignore[index]
        up.append(cur)
        anc[cur] = len(up) - 1
    path_y = [y]
    cur = y
    while cur not in anc:
        nxt = parent[cur]
        assert nxt is not None
        cur = nxt[0]
        path_y.append(cur)
    meet = anc[cur]
    return tuple(up[:meet + 1] + path_y[-2::-1])


def tree_path(forest: NegativeForest, tree_index: int, a: int, b: int) -> list[int]:
    """Ordered edge ids of the unique a-b path in the given tree."""
    if not (0 <= tree_index < len(forest.trees)):
        raise InvalidInputError(f"no tree with index {tree_index}")
    return forest.trees[tree_index].path_edges(a, b)


@dataclass(frozen=True)
class Leap:
    """A subpath touching one negative tree exactly at its two endpoints."""

    path: tuple[int, ...]          # vertex sequence from a to b
    tree_index: int
    a: int
    b: int
    cycle_length: int              # |leap| + |tree path between a and b|
    parity_changing: bool
    shadow: frozenset[int]         # query-path edges lying on the tree path

    @property
    def length(self) -> int:
        return len(self.path) - 1

    def edge_ids(self, g: WeightedGraph) -> list[int]:
        return g.path_edge_ids(self.path)

    def weight(self, g: WeightedGraph) -> Fraction:
        return g.path_weight(self.path)


def enumerate_leaps(g: WeightedGraph, forest: NegativeForest,
                    path_vertices: Sequence[int]) -> list[Leap]:
    """All maximal leaps on a simple path, annotated with parity and shadow.

    A segment of the path between consecutive visits to the same tree is a
    leap unless it is a single tree edge (then the path just walks the tree).
    """
    verts = list(path_vertices)
    if len(set(verts)) != len(verts):
        raise InvalidInputError("leap enumeration expects a simple path")
    path_edges = g.path_edge_ids(verts)
    out: list[Leap] = []
    for ti, tree in enumerate(forest.trees):
        visits = [i for i, v in enumerate(verts) if v in tree.vertices]
        for i, j in zip(visits, visits[1:]):
            if j == i + 1 and path_edges[i] in tree.edge_ids:
                continue
            a, b = verts[i], verts[j]
            tpath = tree.path_edges(a, b)
            leap_shadow = frozenset(tpath) & frozenset(path_edges)
            cycle_len = (j - i) + len(tpath)
            out.append(Leap(tuple(verts[i:j + 1]), ti, a, b, cycle_len,
                            cycle_len % 2 == 1, leap_shadow))
    return out


def redistribute_weights(g: WeightedGraph, q_edge_ids: Iterable[int],
                         tree_index: int = 0,
                         forest: NegativeForest | None = None
                         ) -> list[Fraction]:
    """Shift weight off leap shadows onto the leaps, preserving totals.

    ``q_edge_ids`` must decompose into mutually vertex-disjoint paths, each
    with both endpoints on the chosen tree.  Returns the full reweighted map
    indexed by edge id.  The output satisfies: the total weight of the input
    set is unchanged, every shadow edge of a leap on the set maps to zero,
    and (on conservative inputs) every leap keeps non-negative total weight.

    This is a test utility for structural property checks; no solve path
    uses it.
    """
    if forest is None:
        forest = negative_forest(g)
    if not (0 <= tree_index < len(forest.trees)):
        raise InvalidInputError(f"no tree with index {tree_index}")
    tree = forest.trees[tree_index]
    q = sorted(set(q_edge_ids))
    deg: dict[int, list[tuple[int, int]]] = {}
    for e in q:
        u, v, _w = g.edges[e]
        deg.setdefault(u, []).append((e, v))
        deg.setdefault(v, []).append((e, u))
    if any(len(nb) > 2 for nb in deg.values()):
        raise InvalidInputError("input set must decompose into disjoint paths")
    ends = sorted(v for v, nb in deg.items() if len(nb) == 1)
    paths: list[list[int]] = []
    used: set[int] = set()
    for start in ends:
        if any(e in used for e, _y in deg[start]):
            continue
        verts = [start]
        prev_edge = None
        while True:
            nxt = [(e, y) for e, y in deg[verts[-1]] if e != prev_edge]
            if not nxt:
                break
            prev_edge, y = nxt[0]
            used.add(prev_edge)
            verts.append(y)
        paths.append(verts)
    if len(used) != len(q):
        raise InvalidInputError("input set must be acyclic (disjoint paths)")
    for verts in paths:
        if verts[0] not in tree.vertices or verts[-1] not in tree.vertices:
            raise InvalidInputError("each path must end on the tree")
        if len(set(verts)) != len(verts):
            raise InvalidInputError("paths must be simple")
    seen_v: set[int] = set()
    for verts in paths:
        if seen_v & set(verts):
            raise InvalidInputError("paths must be vertex-disjoint")
        seen_v.update(verts)

    new_w: list[Fraction] = [e.w for e in g.edges]
    # Deterministic order: paths sorted by smaller endpoint, walked from it;
    # shadow edges handled in tree-path order from the leap endpoint that is
    # reached first.
    for verts in paths:
        for leap in enumerate_leaps(g, forest, verts):
            if leap.tree_index != tree_index:
                continue
            leap_edges = leap.edge_ids(g)
            k = len(leap_edges)
            for f in tree.path_edges(leap.a, leap.b):
                if f in leap.shadow and new_w[f] == g.edges[f].w:
                    moved = g.edges[f].w
                    new_w[f] = Fraction(0)
                    for e in leap_edges:
                        new_w[e] += moved / k
    return new_w
