"""Brute-force ground truth by exhaustive enumeration.

Every solver in the suite is cross-validated against the functions here.
The oracles deliberately share no search code with the solvers: they are
plain depth-first enumerations over simple paths, cycles and path pairs,
feasible only at small sizes and guarded accordingly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InvalidInputError, ParameterTooLargeError
from .graph import WeightedGraph
from .parity import (EMPTY_CONSTRAINTS, FOUND, INFEASIBLE, OddPathSolution,
                     ParityConstraints, infeasible)

ORACLE_MAX_VERTICES = 16


def _guard(g: WeightedGraph) -> None:
    if g.n > ORACLE_MAX_VERTICES:
        raise ParameterTooLargeError(
            f"oracle enumeration is limited to {ORACLE_MAX_VERTICES} vertices",
            "n", g.n, ORACLE_MAX_VERTICES)


def iter_simple_paths(g: WeightedGraph, s: int, t: int
                      ) -> Iterator[tuple[list[int], list[int]]]:
    """Yield (vertex list, edge-id list) of every simple s-t path."""
    if s == t:
        raise InvalidInputError("path endpoints must be distinct")
    on_path = [False] * g.n
    on_path[s] = True
    verts = [s]
    eids: list[int] = []

    def rec() -> Iterator[tuple[list[int], list[int]]]:
        here = verts[-1]
        if here == t:
            yield verts, eids
            return
        for e, y in g.adj[here]:
            if not on_path[y]:
                on_path[y] = True
                verts.append(y)
                eids.append(e)
                yield from rec()
                on_path[y] = False
                verts.pop()
                eids.pop()

    yield from rec()


def oracle_odd_path(g: WeightedGraph, s: int, t: int,
                    parity: int = 1) -> OddPathSolution:
    """Minimum-weight simple (s,t)-path of the requested length parity."""
    _guard(g)
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    for verts, eids in iter_simple_paths(g, s, t):
        if len(eids) % 2 != parity:
            continue
        w = sum((g.edges[e].w for e in eids), Fraction(0))
        key = (w, len(eids), tuple(verts))
        if best is None or key < best:
            best = key
    if best is None:
        return infeasible()
    return OddPathSolution(FOUND, best[2], best[0],
                           "odd" if parity == 1 else "even")


def oracle_min_path(g: WeightedGraph, s: int, t: int) -> OddPathSolution:
    """Minimum-weight simple (s,t)-path with no parity requirement."""
    _guard(g)
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    for verts, eids in iter_simple_paths(g, s, t):
        w = sum((g.edges[e].w for e in eids), Fraction(0))
        key = (w, len(eids), tuple(verts))
        if best is None or key < best:
            best = key
    if best is None:
        return infeasible()
    return OddPathSolution(FOUND, best[2], best[0], "any")


def constrained_feasible(eids: Sequence[int], c: ParityConstraints) -> bool:
    for pos, e in enumerate(eids, start=1):
        if e in c.f_even and pos % 2 != 0:
            return False
        if e in c.f_odd and pos % 2 != 1:
            return False
    return True


def oracle_spcop(g: WeightedGraph, s: int, t: int,
                 c: ParityConstraints = EMPTY_CONSTRAINTS) -> OddPathSolution:
    """Same enumeration filtered by the position-parity constraints."""
    _guard(g)
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    for verts, eids in iter_simple_paths(g, s, t):
        if len(eids) % 2 != 1 or not constrained_feasible(eids, c):
            continue
        w = sum((g.edges[e].w for e in eids), Fraction(0))
        key = (w, len(eids), tuple(verts))
        if best is None or key < best:
            best = key
    if best is None:
        return infeasible()
    return OddPathSolution(FOUND, best[2], best[0])


def oracle_spcop_feasible_set(g: WeightedGraph, s: int, t: int,
                              c: ParityConstraints) -> list[tuple[int, ...]]:
    """All constrained odd (s,t)-paths, as vertex tuples."""
    _guard(g)
    out = []
    for verts, eids in iter_simple_paths(g, s, t):
        if len(eids) % 2 == 1 and constrained_feasible(eids, c):
            out.append(tuple(verts))
    return sorted(out)


def iter_simple_cycles(g: WeightedGraph) -> Iterator[tuple[list[int], list[int]]]:
    """Yield every simple cycle once as (vertex list, edge-id list).

    Each cycle is anchored at its smallest vertex and oriented so that the
    second vertex is smaller than the last, which makes it unique.
    """
    for root in range(g.n):
        verts = [root]
        on_path = [False] * g.n
        on_path[root] = True
        eids: list[int] = []

        def rec() -> Iterator[tuple[list[int], list[int]]]:
            here = verts[-1]
            for e, y in g.adj[here]:
                if y == root and len(verts) >= 3:
                    if verts[1] < verts[-1]:
                        yield verts, eids + [e]
                elif y > root and not on_path[y]:
                    on_path[y] = True
                    verts.append(y)
                    eids.append(e)
                    yield from rec()
                    on_path[y] = False
                    verts.pop()
                    eids.pop()

        yield from rec()


@dataclass(frozen=True)
class OracleCycleReport:
    conservative: bool
    witness_cycle: tuple[int, ...] | None = None
    witness_weight: Fraction | None = None


def oracle_conservative(g: WeightedGraph) -> OracleCycleReport:
    """Check every simple cycle for non-negative total weight."""
    _guard(g)
    for verts, eids in iter_simple_cycles(g):
        w = sum((g.edges[e].w for e in eids), Fraction(0))
        if w < 0:
            return OracleCycleReport(False, tuple(verts), w)
    return OracleCycleReport(True)


@dataclass(frozen=True)
class DisjointPathsResult:
    status: str
    path_s: tuple[int, ...] = ()
    path_t: tuple[int, ...] = ()
    total_weight: Fraction = Fraction(0)

    @property
    def found(self) -> bool:
        return self.status == FOUND


def oracle_two_disjoint(g: WeightedGraph, s: int, t: int, a: int, b: int
                        ) -> DisjointPathsResult:
    """Cheapest fully vertex-disjoint pair of paths from {s,t} onto {a,b}.

    The path starting at s may end at either a or b; the other path takes
    the remaining target.  A terminal that coincides with its target yields
    a single-vertex path.
    """
    _guard(g)
    if s == t or a == b:
        raise InvalidInputError("terminals and targets must each be distinct")
    best: tuple[Fraction, tuple[int, ...], tuple[int, ...]] | None = None
    for (xa, xb) in ((a, b), (b, a)):
        for ps, pw in _paths_or_trivial(g, s, xa):
            occupied = set(ps)
            if t in occupied or xb in occupied:
                continue
            for pt, tw in _paths_or_trivial(g, t, xb):
                if occupied & set(pt):
                    continue
                key = (pw + tw, tuple(ps), tuple(pt))
                if best is None or key < best:
                    best = key
    if best is None:
        return DisjointPathsResult(INFEASIBLE)
    return DisjointPathsResult(FOUND, best[1], best[2], best[0])


def _paths_or_trivial(g: WeightedGraph, x: int, y: int
                      ) -> Iterator[tuple[list[int], Fraction]]:
    if x == y:
        yield [x], Fraction(0)
        return
    for verts, eids in iter_simple_paths(g, x, y):
        yield list(verts), sum((g.edges[e].w for e in eids), Fraction(0))


def oracle_two_openly_disjoint(g: WeightedGraph, s: int, t: int
                               ) -> DisjointPathsResult:
    """Cheapest pair of (s,t)-paths sharing only the endpoints."""
    _guard(g)
    if s == t:
        raise InvalidInputError("endpoints must be distinct")
    all_paths = [(list(v), list(e)) for v, e in iter_simple_paths(g, s, t)]
    best: tuple[Fraction, tuple[int, ...], tuple[int, ...]] | None = None
    for i, (v1, e1) in enumerate(all_paths):
        int1 = set(v1[1:-1])
        w1 = sum((g.edges[e].w for e in e1), Fraction(0))
        for v2, e2 in all_paths[i:]:
            if set(e1) & set(e2):
                continue
            if int1 & set(v2[1:-1]):
                continue
            w2 = sum((g.edges[e].w for e in e2), Fraction(0))
            key = (w1 + w2, tuple(v1), tuple(v2))
            if best is None or key < best:
                best = key
    if best is None:
        return DisjointPathsResult(INFEASIBLE)
    return DisjointPathsResult(FOUND, best[1], best[2], best[0])


# ---------------------------------------------------------------------------
# Cross-solver sweeps.
# ---------------------------------------------------------------------------

CONSERVATIVE = "conservative"
SINGLE_NEG_TREE = "single_neg_tree"
NONNEG = "nonneg"


@dataclass(frozen=True)
class SweepSpec:
    max_n: int
    weight_palette: tuple[Fraction, ...]
    instance_filter: str = CONSERVATIVE
    count: int = 1000
    seed: int = 0
    edge_probability: float = 0.55


@dataclass
class SweepReport:
    instances: int = 0
    disagreements: int = 0
    first_counterexample: dict | None = None
    per_solver_failures: dict[str, int] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return self.disagreements == 0


def sweep(spec: SweepSpec,
          solvers: dict[str, Callable[[WeightedGraph, int, int], OddPathSolution]],
          *, on_instance: Callable[[WeightedGraph, int, int], None] | None = None
          ) -> SweepReport:
    """Run every solver against the oracle over generated instances."""
    from .generators import conservative_instances

    report = SweepReport()
    if not spec.weight_palette:
        return report
    for g, s, t in conservative_instances(spec):
        report.instances += 1
        expect = oracle_odd_path(g, s, t)
        if on_instance is not None:
            on_instance(g, s, t)
        for name, solver in solvers.items():
            got = solver(g, s, t)
            ok = (got.status == expect.status
                  and (not got.found or got.weight == expect.weight))
            if not ok:
                report.disagreements += 1
                report.per_solver_failures[name] = (
                    report.per_solver_failures.get(name, 0) + 1)
                if report.first_counterexample is None:
                    small = minimize_counterexample(g, s, t, solver, expect_solver=oracle_odd_path)
                    report.first_counterexample = small
    return report


def minimize_counterexample(g: WeightedGraph, s: int, t: int,
                            solver: Callable[[WeightedGraph, int, int], OddPathSolution],
                            expect_solver: Callable[[WeightedGraph, int, int], OddPathSolution]
                            ) -> dict:
    """Greedy edge deletion while solver and oracle still disagree."""
    from .graph import graph_to_json

    def disagrees(h: WeightedGraph) -> bool:
        try:
            want = expect_solver(h, s, t)
            got = solver(h, s, t)
        except Exception:
            return True
        return (got.status != want.status
                or (got.found and got.weight != want.weight))

    cur = g
    changed = True
    while changed:
        changed = False
        for e in range(cur.m):
            cand, _ = cur.without_edges([e])
            if disagrees(cand):
                cur = cand
                changed = True
                break
    obj = graph_to_json(cur)
    obj["s"], obj["t"] = s, t
    return obj
