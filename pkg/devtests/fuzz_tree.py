"""Cross-check the single-tree solver and the disjoint-path machinery."""

import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

from oddpath.generators import random_conservative_graph, random_single_tree_graph
from oddpath.oracle import (oracle_odd_path, oracle_two_disjoint,
                            oracle_two_openly_disjoint)
from oddpath.tree_solver import (solve_negative_tree, two_disjoint_paths,
                                 stdp_via_sop)
from oddpath.parity import shortest_odd_path_nonneg


def main():
    rng = random.Random(4242)
    t0 = time.time()
    palette = tuple(Fraction(x) for x in (-1, 0, 1, 2))

    checked = 0
    for trial in range(3000):
        n = rng.randint(3, 8)
        g = random_single_tree_graph(rng, n, palette, rng.uniform(0.25, 0.8))
        if g is None:
            continue
        s, t = rng.sample(range(g.n), 2)
        want = oracle_odd_path(g, s, t)
        got = solve_negative_tree(g, s, t, assume_conservative=True)
        assert got.status == want.status, (trial, g.edges, s, t)
        if want.found:
            assert got.weight == want.weight, (
                trial, list(g.edges), s, t, got, want)
        checked += 1
    print(f"tree solver: {checked} ok ({time.time() - t0:.1f}s)")

    checked = 0
    for trial in range(700):
        n = rng.randint(4, 8)
        g = random_conservative_graph(rng, n, palette, rng.uniform(0.2, 0.55))
        if g is None:
            continue
        picks = rng.sample(range(g.n), 4) if g.n >= 4 else None
        if picks is None:
            continue
        s, t, a, b = picks
        if rng.random() < 0.3:
            a = s  # exercise coincidences
        want = oracle_two_disjoint(g, s, t, a, b)
        got = two_disjoint_paths(g, s, t, a, b)
        assert got.status == want.status, (trial, list(g.edges), (s, t, a, b))
        if want.found:
            assert got.total_weight == want.total_weight, (
                trial, list(g.edges), (s, t, a, b), got, want)
        checked += 1
    print(f"two disjoint paths: {checked} ok ({time.time() - t0:.1f}s)")

    checked = 0
    for trial in range(600):
        n = rng.randint(3, 8)
        nn = tuple(Fraction(x) for x in (0, 1, 2, 3))
        g = random_conservative_graph(rng, n, nn, rng.uniform(0.3, 0.8))
        if g is None:
            continue
        s, t = rng.sample(range(g.n), 2)
        want = oracle_two_openly_disjoint(g, s, t)
        got = stdp_via_sop(g, s, t, shortest_odd_path_nonneg)
        assert got.status == want.status, (trial, list(g.edges), s, t)
        if want.found:
            assert got.total_weight == want.total_weight, (
                trial, list(g.edges), s, t, got, want)
        checked += 1
    print(f"stdp via sop (nonneg): {checked} ok ({time.time() - t0:.1f}s)")

    # stdp with a negative tree, solved through the tree solver itself
    checked = 0
    for trial in range(400):
        n = rng.randint(3, 7)
        g = random_single_tree_graph(rng, n, palette, rng.uniform(0.3, 0.8))
        if g is None:
            continue
        touched = set()
        for e in g.negative_edge_ids():
            touched.update((g.edges[e].u, g.edges[e].v))
        free = [v for v in range(g.n) if v not in touched]
        if len(free) < 2:
            continue
        s, t = rng.sample(free, 2)
        want = oracle_two_openly_disjoint(g, s, t)
        got = stdp_via_sop(
            g, s, t,
            lambda h, hs, ht: solve_negative_tree(h, hs, ht,
                                                  assume_conservative=True,
                                                  disjoint_guard=60))
        assert got.status == want.status, (trial, list(g.edges), s, t)
        if want.found:
            assert got.total_weight == want.total_weight, (
                trial, list(g.edges), s, t, got, want)
        checked += 1
    print(f"stdp via tree solver: {checked} ok ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
