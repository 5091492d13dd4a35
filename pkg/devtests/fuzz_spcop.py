"""Cross-check solve_spcop and validate_conservative against oracles."""

import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

from oddpath.conservative import validate_conservative
from oddpath.generators import random_conservative_graph, random_connected_pairs
from oddpath.graph import WeightedGraph
from oddpath.oracle import (oracle_conservative, oracle_spcop, oracle_odd_path)
from oddpath.parity import (ParityConstraints, solve_spcop,
                            shortest_odd_path_nonneg, shortest_even_path_nonneg)


def main():
    rng = random.Random(777)
    t0 = time.time()
    palette = tuple(Fraction(x) for x in (-2, -1, 0, 1, 2))

    # 1. conservativeness validator vs cycle enumeration
    n_checked = 0
    for trial in range(3000):
        n = rng.randint(2, 7)
        pairs = random_connected_pairs(rng, n, rng.uniform(0.2, 0.9))
        weights = [rng.choice(palette) for _ in pairs]
        g = WeightedGraph(n, [(u, v, w) for (u, v), w in zip(pairs, weights)])
        want = oracle_conservative(g)
        got = validate_conservative(g)
        assert got.conservative == want.conservative, (trial, g.edges)
        if not got.conservative:
            assert got.witness_cycle is not None
            w = g.path_weight(list(got.witness_cycle) + [got.witness_cycle[0]])
            assert w < 0, "witness must be a negative cycle"
        n_checked += 1
    print(f"conservativeness: {n_checked} ok ({time.time()-t0:.1f}s)")

    # 2. spcop vs oracle with random covering constraints
    checked = 0
    for trial in range(4000):
        n = rng.randint(2, 7)
        g = random_conservative_graph(rng, n, palette, rng.uniform(0.3, 0.9))
        if g is None:
            continue
        s, t = rng.sample(range(g.n), 2) if g.n >= 2 else (0, 0)
        neg = list(g.negative_edge_ids())
        rest = [e for e in range(g.m) if e not in neg]
        f_even, f_odd = set(), set()
        for e in neg:
            (f_even if rng.random() < 0.5 else f_odd).add(e)
        for e in rest:
            r = rng.random()
            if r < 0.15:
                f_even.add(e)
            elif r < 0.3:
                f_odd.add(e)
        c = ParityConstraints.of(f_even, f_odd)
        want = oracle_spcop(g, s, t, c)
        got = solve_spcop(g, s, t, c, assume_conservative=True,
                          validate_matching=True)
        assert got.status == want.status, (trial, g.edges, s, t, c)
        if want.found:
            assert got.weight == want.weight, (trial, g.edges, s, t, c,
                                               got.weight, want.weight)
        checked += 1
    print(f"spcop: {checked} ok ({time.time()-t0:.1f}s)")

    # 3. nonneg odd/even helpers
    for trial in range(1500):
        n = rng.randint(2, 8)
        nn = tuple(Fraction(x) for x in (0, 1, 2, 3))
        g = random_conservative_graph(rng, n, nn, rng.uniform(0.2, 0.8))
        if g is None:
            continue
        s, t = rng.sample(range(g.n), 2)
        w_odd = oracle_odd_path(g, s, t, 1)
        w_even = oracle_odd_path(g, s, t, 0)
        got_odd = shortest_odd_path_nonneg(g, s, t)
        got_even = shortest_even_path_nonneg(g, s, t)
        assert got_odd.status == w_odd.status
        assert got_even.status == w_even.status
        if w_odd.found:
            assert got_odd.weight == w_odd.weight
        if w_even.found:
            assert got_even.weight == w_even.weight
    print(f"odd/even nonneg ok ({time.time()-t0:.1f}s)")


if __name__ == "__main__":
    main()
