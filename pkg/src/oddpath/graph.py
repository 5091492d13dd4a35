"""Undirected simple graphs with exact rational edge weights.

Every solver in this package consumes :class:`WeightedGraph`.  Weights are
:class:`fractions.Fraction` throughout; no floating point enters any solver
decision.  For hot inner loops the graph precomputes a common denominator so
engines can work on plain integers and convert back at the boundary.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .errors import ParseError, StructuralError

Weight = Fraction


class Edge(NamedTuple):
    u: int
    v: int
    w: Fraction


def parse_weight(token: str) -> Fraction:
    """Parse a decimal or ``p/q`` token into an exact rational."""
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad weight token {token!r}: {exc}") from exc


class WeightedGraph:
    """Immutable undirected simple graph with exact edge weights.

    Vertices are dense integers ``0 .. n-1``.  Edge ids are the positions in
    the ``edges`` tuple and stay stable for the lifetime of the graph; solvers
    refer to edges by id.
    """

    __slots__ = ("n", "edges", "adj", "weight_scale", "int_weights",
                 "_pair_index", "source", "terminal")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, Fraction | int]],
                 source: int | None = None, terminal: int | None = None):
        if n < 0:
            raise StructuralError("vertex count must be non-negative")
        norm: list[Edge] = []
        pair_index: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise StructuralError(f"edge ({u},{v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise StructuralError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in pair_index:
                raise StructuralError(f"parallel edge between {key[0]} and {key[1]}")
            pair_index[key] = len(norm)
            norm.append(Edge(u, v, Fraction(w)))
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(norm)
        self._pair_index = pair_index
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for e, (u, v, _w) in enumerate(self.edges):
            adj[u].append((e, v))
            adj[v].append((e, u))
        self.adj: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(a) for a in adj)
        # Common denominator so engines can run on plain integers.
        scale = 1
        for e in self.edges:
            scale = scale * e.w.denominator // math.gcd(scale, e.w.denominator)
        self.weight_scale = scale
        self.int_weights: tuple[int, ...] = tuple(
            int(e.w * scale) for e in self.edges)
        self.source = source
        self.terminal = terminal

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_between(self, u: int, v: int) -> int | None:
        """Return the edge id joining ``u`` and ``v``, or None."""
        key = (u, v) if u < v else (v, u)
        return self._pair_index.get(key)

    def weight(self, edge_id: int) -> Fraction:
        return self.edges[edge_id].w

    def negative_edge_ids(self) -> tuple[int, ...]:
        return tuple(e for e, w in enumerate(self.int_weights) if w < 0)

    def has_negative_weights(self) -> bool:
        return any(w < 0 for w in self.int_weights)

    def path_edge_ids(self, vertices: Iterable[int]) -> list[int]:
        """Map a vertex sequence to edge ids; raises if a hop is missing."""
        seq = list(vertices)
        out = []
        for a, b in zip(seq, seq[1:]):
            e = self.edge_between(a, b)
            if e is None:
                raise StructuralError(f"no edge between {a} and {b}")
            out.append(e)
        return out

    def path_weight(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.edges[e].w for e in self.path_edge_ids(vertices)),
                   Fraction(0))

    def without_edges(self, edge_ids: Iterable[int]) -> tuple["WeightedGraph", dict[int, int]]:
        """Copy of the graph with the given edges removed.

        Returns the new graph plus a map from surviving old edge ids to new
        edge ids (edge ids are dense per graph, so removal renumbers).
        """
        drop = set(edge_ids)
        kept: list[tuple[int, int, Fraction]] = []
        old_to_new: dict[int, int] = {}
        for e, (u, v, w) in enumerate(self.edges):
            if e not in drop:
                old_to_new[e] = len(kept)
                kept.append((u, v, w))
        return (WeightedGraph(self.n, kept, self.source, self.terminal),
                old_to_new)

    def induced(self, keep: Iterable[int]) -> tuple["WeightedGraph", dict[int, int]]:
        """Subgraph induced by ``keep``; returns (graph, old->new vertex map)."""
        keep_sorted = sorted(set(keep))
        vmap = {v: i for i, v in enumerate(keep_sorted)}
        kept = [(vmap[u], vmap[v], w) for u, v, w in self.edges
                if u in vmap and v in vmap]
        return WeightedGraph(len(keep_sorted), kept), vmap

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                x = stack.pop()
                for _e, y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# Text and JSON formats.
#
# Text format, one record per line:
#   p odd <n> <m>
#   e <u> <v> <weight>     (weight as decimal or p/q)
#   s <vertex>             (optional source)
#   t <vertex>             (optional terminal)
# Comment lines start with '#' or 'c'.
# ---------------------------------------------------------------------------

def graph_from_text(text: str) -> WeightedGraph:
    n = None
    m_declared = None
    edges: list[tuple[int, int, Fraction]] = []
    source = terminal = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "c":
            continue  # constraint lines; parsed by constraints_from_text

        try:
            if tag == "p":
                if len(fields) != 4 or fields[1] != "odd":
                    raise ParseError("header must be 'p odd <n> <m>'", lineno)
                n, m_declared = int(fields[2]), int(fields[3])
            elif tag == "e":
                if len(fields) != 4:
                    raise ParseError("edge line must be 'e <u> <v> <weight>'", lineno)
                try:
                    w = Fraction(fields[3])
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError(f"bad weight token {fields[3]!r}", lineno) from exc
                edges.append((int(fields[1]), int(fields[2]), w))
            elif tag == "s":
                source = int(fields[1])
            elif tag == "t":
                terminal = int(fields[1])
            else:
                raise ParseError(f"unknown record {tag!r}", lineno)
        except ParseError:
            raise
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc), lineno) from exc
    if n is None:
        raise ParseError("missing 'p odd <n> <m>' header")
    if m_declared is not None and m_declared != len(edges):
        raise ParseError(f"header declares {m_declared} edges, found {len(edges)}")
    try:
        return WeightedGraph(n, edges, source, terminal)
    except StructuralError as exc:
        raise ParseError(str(exc)) from exc


def constraints_from_text(text: str, g: WeightedGraph
                          ) -> tuple[frozenset[int], frozenset[int]]:
    """Parse ``c even ...`` / ``c odd ...`` records against a graph.

    An edge is named either by its id (one integer) or by its endpoints
    (two integers).  Returns (position-even ids, position-odd ids).
    """
    even: set[int] = set()
    odd: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.strip().split()
        if not fields or fields[0] != "c":
            continue
        if len(fields) < 3 or fields[1] not in ("even", "odd"):
            raise ParseError("constraint must be 'c even|odd <edge>'", lineno)
        try:
            if len(fields) == 3:
                e = int(fields[2])
                if not 0 <= e < g.m:
                    raise ParseError(f"no edge with id {e}", lineno)
            else:
                u, v = int(fields[2]), int(fields[3])
                found = g.edge_between(u, v)
                if found is None:
                    raise ParseError(f"no edge between {u} and {v}", lineno)
                e = found
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
        (even if fields[1] == "even" else odd).add(e)
    return frozenset(even), frozenset(odd)


def graph_to_text(g: WeightedGraph) -> str:
    lines = [f"p odd {g.n} {g.m}"]
    lines += [f"e {u} {v} {w}" for u, v, w in g.edges]
    if g.source is not None:
        lines.append(f"s {g.source}")
    if g.terminal is not None:
        lines.append(f"t {g.terminal}")
    return "\n".join(lines) + "\n"


def graph_from_json(obj: str | dict) -> WeightedGraph:
    """JSON mirror of the text schema.

    ``{"n": int, "edges": [[u, v, "w"], ...], "s": int?, "t": int?}``
    """
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("JSON graph must be an object")
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v), parse_weight(str(w))) for u, v, w in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad JSON graph: {exc}") from exc
    source = int(obj["s"]) if "s" in obj and obj["s"] is not None else None
    terminal = int(obj["t"]) if "t" in obj and obj["t"] is not None else None
    try:
        return WeightedGraph(n, edges, source, terminal)
    except StructuralError as exc:
        raise ParseError(str(exc)) from exc


def graph_to_json(g: WeightedGraph) -> dict:
    obj: dict = {"n": g.n, "edges": [[u, v, str(w)] for u, v, w in g.edges]}
    if g.source is not None:
        obj["s"] = g.source
    if g.terminal is not None:
        obj["t"] = g.terminal
    return obj
