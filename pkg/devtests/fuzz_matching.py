"""Heavy fuzz of the blossom engine against brute-force enumeration."""

import itertools
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

from oddpath.matching import (min_weight_perfect_matching_edges,
                              maximum_matching_size, INFEASIBLE)


def brute_min_perfect(n, edges):
    best = None
    pairs = [(u, v) for u, v, _ in edges]
    weights = {(u, v): w for u, v, w in edges}

    def rec(unmatched, acc):
        nonlocal best
        if not unmatched:
            if best is None or acc < best:
                best = acc
            return
        x = min(unmatched)
        for (u, v) in pairs:
            if u == x or v == x:
                y = v if u == x else u
                if y in unmatched:
                    rec(unmatched - {x, y}, acc + weights[(u, v)])

    rec(frozenset(range(n)), Fraction(0))
    return best


def brute_max_matching(n, edges):
    best = 0
    m = len(edges)
    for mask in range(1 << m):
        used = set()
        ok = True
        cnt = 0
        for e in range(m):
            if mask >> e & 1:
                u, v = edges[e]
                if u in used or v in used:
                    ok = False
                    break
                used.add(u)
                used.add(v)
                cnt += 1
        if ok:
            best = max(best, cnt)
    return best


def main():
    rng = random.Random(12345)
    t0 = time.time()
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 4000
    for trial in range(trials):
        n = rng.choice([2, 4, 4, 6, 6, 8, 8, 10, 10, 12])
        density = rng.uniform(0.25, 1.0)
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < density:
                    if rng.random() < 0.2:
                        w = Fraction(rng.randint(-50, 50), rng.randint(1, 7))
                    else:
                        w = Fraction(rng.randint(-8, 8))
                    edges.append((u, v, w))
        res = min_weight_perfect_matching_edges(n, edges, validate=True,
                                                with_certificate=True)
        expect = brute_min_perfect(n, edges)
        if expect is None:
            assert res.status == INFEASIBLE, (n, edges)
        else:
            assert res.found, (n, edges)
            assert res.weight == expect, (res.weight, expect, n, edges)
            # recompute weight from edges
            s = sum((w for e, (u, v, w) in enumerate(edges) if e in res.edge_ids),
                    Fraction(0))
            assert s == res.weight
        if trial % 500 == 0:
            print(f"trial {trial} ok ({time.time()-t0:.1f}s)")
    # max-cardinality fuzz
    for trial in range(600):
        n = rng.randint(1, 8)
        pairs = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.4:
                    pairs.append((u, v))
        got = maximum_matching_size(n, pairs)
        want = brute_max_matching(n, pairs)
        assert got == want, (n, pairs, got, want)
    print(f"all ok in {time.time()-t0:.1f}s")


if __name__ == "__main__":
    main()
