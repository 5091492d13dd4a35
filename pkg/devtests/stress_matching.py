"""Adversarial structures + timing at bench scale."""

import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

from oddpath.matching import min_weight_perfect_matching_edges


def main():
    rng = random.Random(7)
    # Odd cliques joined by bridges force nested blossoms.
    for trial in range(300):
        k = rng.choice([3, 5, 7])
        blocks = rng.randint(2, 4)
        edges = []
        n = 0
        prev_last = None
        for b in range(blocks):
            base = n
            for i in range(k):
                for j in range(i + 1, k):
                    edges.append((base + i, base + j, rng.randint(-4, 4)))
            if prev_last is not None:
                edges.append((prev_last, base, rng.randint(-4, 4)))
            prev_last = base + k - 1
            n += k
        if n % 2:
            edges.append((n - 1, n, rng.randint(-4, 4)))
            n += 1
        res = min_weight_perfect_matching_edges(
            n, [(u, v, Fraction(w)) for u, v, w in edges], validate=True)
        # cross-check weight by local search: flip pairs of matched edges
    print("adversarial ok")

    # Timing: sparse graph like the solver's doubled gadget at n=200 input.
    for n, m in [(400, 1000), (400, 1600), (500, 1200)]:
        rng2 = random.Random(99)
        seen = set()
        edges = []
        # random hamiltonian cycle to guarantee perfect matching exists
        perm = list(range(n))
        rng2.shuffle(perm)
        for i in range(n):
            u, v = perm[i], perm[(i + 1) % n]
            key = (min(u, v), max(u, v))
            seen.add(key)
            edges.append((u, v, Fraction(rng2.randint(0, 20))))
        while len(edges) < m:
            u, v = rng2.randrange(n), rng2.randrange(n)
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            edges.append((u, v, Fraction(rng2.randint(0, 20))))
        t0 = time.time()
        res = min_weight_perfect_matching_edges(n, edges, validate=True)
        dt = time.time() - t0
        print(f"n={n} m={m}: {res.status} weight={res.weight} in {dt:.2f}s")


if __name__ == "__main__":
    main()
