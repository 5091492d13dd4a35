"""Fixed-parameter solvers driven by the negative edge set.

All three solvers share one idea: guess, for each negative edge, whether it
sits at an even or odd position on an optimal path, and hand the guess to
the parity-constrained solver.  They differ in how the guesses are drawn:

* exhaustively over all partitions of the negative edges;
* by repeated uniform sampling (Monte Carlo, success probability at least
  1 - 1/e with 4**mu rounds, where mu is the maximum matching size of the
  subgraph spanned by the negative edges);
* deterministically through a verified universal set family over the
  negative edge indices, which is guaranteed to contain a correct guess.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, MutableMapping

from .conservative import validate_conservative
from .errors import (ConservativenessViolationError, InvalidInputError,
                     ParameterTooLargeError)
from .graph import WeightedGraph
from .matching import maximum_matching_size
from .parity import (OddPathSolution, ParityConstraints, infeasible,
                     solve_spcop)

DEFAULT_NEGEDGE_GUARD = 24
DEFAULT_MU2_GUARD = 16


@dataclass(frozen=True)
class ParityGuess:
    """A partition of the negative edge ids into even/odd position sets."""

    e_even: frozenset[int]
    e_odd: frozenset[int]

    @staticmethod
    def from_mask(neg_edges: tuple[int, ...], mask: int) -> "ParityGuess":
        even = frozenset(e for i, e in enumerate(neg_edges) if mask >> i & 1)
        return ParityGuess(even, frozenset(neg_edges) - even)


def negative_matching_parameter(g: WeightedGraph) -> int:
    """Maximum matching size of the subgraph spanned by negative edges."""
    neg = g.negative_edge_ids()
    if not neg:
        return 0
    verts = sorted({v for e in neg for v in (g.edges[e].u, g.edges[e].v)})
    remap = {v: i for i, v in enumerate(verts)}
    pairs = [(remap[g.edges[e].u], remap[g.edges[e].v]) for e in neg]
    return maximum_matching_size(len(verts), pairs)


def _best(cur: OddPathSolution | None, new: OddPathSolution) -> OddPathSolution | None:
    if not new.found:
        return cur
    if cur is None:
        return new
    assert cur.weight is not None and new.weight is not None
    if (new.weight, new.length, new.vertices) < (cur.weight, cur.length, cur.vertices):
        return new
    return cur


def _precheck(g: WeightedGraph, s: int, t: int, assume_conservative: bool) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise InvalidInputError("terminals must be vertices of the graph")
    if s == t:
        raise InvalidInputError("terminals must be distinct")
    if not assume_conservative and g.has_negative_weights():
        report = validate_conservative(g)
        if not report.conservative:
            raise ConservativenessViolationError(
                "weights admit a negative cycle", report.witness_cycle)


def solve_fpt_negedges(g: WeightedGraph, s: int, t: int, *,
                       guard: int = DEFAULT_NEGEDGE_GUARD,
                       assume_conservative: bool = False) -> OddPathSolution:
    """Exhaustive enumeration over all 2^|E-| parity guesses."""
    _precheck(g, s, t, assume_conservative)
    neg = g.negative_edge_ids()
    if len(neg) > guard:
        raise ParameterTooLargeError(
            f"2^{len(neg)} guesses exceed the guard", "negative edges",
            len(neg), guard)
    best: OddPathSolution | None = None
    for mask in range(1 << len(neg)):
        guess = ParityGuess.from_mask(neg, mask)
        c = ParityConstraints(guess.e_even, guess.e_odd)
        best = _best(best, solve_spcop(g, s, t, c, assume_conservative=True))
    return best if best is not None else infeasible()


def solve_fpt_randomized(g: WeightedGraph, s: int, t: int, *,
                         seed: int = 0,
                         trials: int | None = None,
                         guard: int = DEFAULT_MU2_GUARD,
                         assume_conservative: bool = False,
                         cache: MutableMapping[int, OddPathSolution] | None = None
                         ) -> OddPathSolution:
    """Monte Carlo solver; each round draws every negative edge into the
    even set with probability one half.

    Sound for every outcome (any returned path is a genuine odd path, so
    the weight never drops below the optimum) and exact with probability
    at least 1 - 1/e when ``trials`` is left at its default of 4**mu.
    Per-trial guesses derive deterministically from (seed, trial index),
    so chunked or parallel evaluation gives identical results.  ``cache``
    maps guess masks to solutions and may be shared across runs on the
    same instance.
    """
    _precheck(g, s, t, assume_conservative)
    neg = g.negative_edge_ids()
    mu = negative_matching_parameter(g)
    if trials is None:
        if 2 * mu > guard:
            raise ParameterTooLargeError(
                f"4^{mu} trials exceed the guard", "2*mu", 2 * mu, guard)
        trials = 1 << (2 * mu)
    best: OddPathSolution | None = None
    for trial in range(trials):
        mask = random.Random((seed, trial)).getrandbits(len(neg)) if neg else 0
        sol = cache.get(mask) if cache is not None else None
        if sol is None:
            guess = ParityGuess.from_mask(neg, mask)
            c = ParityConstraints(guess.e_even, guess.e_odd)
            sol = solve_spcop(g, s, t, c, assume_conservative=True)
            if cache is not None:
                cache[mask] = sol
        best = _best(best, sol)
    return best if best is not None else infeasible()


# ---------------------------------------------------------------------------
# Universal sets.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UniversalSetFamily:
    """Family of subsets of range(n) shattering every k-subset."""

    n: int
    k: int
    sets: tuple[frozenset[int], ...]

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in a) for a in self.sets)


def verify_universal(family: UniversalSetFamily,
                     *, sample_limit: int = 200_000,
                     seed: int = 0) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Check the shattering property.

    Exhaustive for small ground sets; falls back to seeded sampling of
    (subset, pattern) pairs above ``sample_limit`` checks.  Returns
    (verdict, counterexample) where the counterexample is (S, pattern).
    """
    n, k = family.n, family.k
    if k == 0 or not (0 < k <= n):
        return (k == 0), None
    masks = family.masks
    total = 1
    for i in range(k):
        total = total * (n - i) // (i + 1)
    total *= 1 << k
    if total <= sample_limit:
        subsets = combinations(range(n), k)
    else:
        # Sampled mode: a True verdict means "no violation found".
        rng = random.Random(seed)
        subsets = (tuple(sorted(rng.sample(range(n), k)))
                   for _ in range(max(1, sample_limit // (1 << k))))
    for S in subsets:
        smask = sum(1 << i for i in S)
        seen = {m & smask for m in masks}
        if len(seen) < (1 << k):
            for pattern_bits in range(1 << k):
                pmask = sum(1 << S[i] for i in range(k) if pattern_bits >> i & 1)
                if pmask not in seen:
                    pattern = tuple(S[i] for i in range(k) if pattern_bits >> i & 1)
                    return False, (S, pattern)
    return True, None


@lru_cache(maxsize=64)
def build_universal_set(n: int, k: int) -> UniversalSetFamily:
    """Construct a verified (n,k)-universal family.

    For small ground sets the family is grown greedily by the method of
    conditional expectations: each new set is chosen bit by bit so that the
    number of still-uncovered (subset, pattern) pairs it covers is at least
    the expectation under uniform random bits, which guarantees coverage
    ratio 2^-k per round and hence termination.  Larger ground sets fall
    back to sampled random families re-drawn until verification passes.
    """
    if k == 0:
        return UniversalSetFamily(n, 0, (frozenset(),))
    if not 0 < k <= n:
        raise InvalidInputError("need 1 <= k <= n for a universal family")
    if n <= 24:
        family = _greedy_universal(n, k)
    else:
        family = _sampled_universal(n, k)
    ok, counterexample = verify_universal(family)
    assert ok, f"constructed family failed verification: {counterexample}"
    return family


def _greedy_universal(n: int, k: int) -> UniversalSetFamily:
    # Pairs are (subset, pattern) targets; each carries an integer weight
    # 2^(number of still-undecided subset bits), so the two sides of every
    # bit decision compare exactly with integer sums.  The chosen side
    # always covers at least the uniform expectation, so each round covers
    # at least a 2^-k fraction of the remaining pairs.
    pairs: list[list] = []  # [S, bits, weight, alive]
    bucket: list[list[int]] = [[] for _ in range(n)]
    for S in combinations(range(n), k):
        for bits in range(1 << k):
            pid = len(pairs)
            pairs.append([S, bits, 1 << k, True])
            for v in S:
                bucket[v].append(pid)
    remaining = len(pairs)
    chosen: list[frozenset[int]] = []
    while remaining:
        mask = 0
        for p in pairs:
            if p[3]:
                p[2] = 1 << k
        for v in range(n):
            gain_in = gain_out = 0
            for pid in bucket[v]:
                S, bits, w, alive = pairs[pid]
                if not alive or w == 0:
                    continue
                i = S.index(v)
                if bits >> i & 1:
                    gain_in += w
                else:
                    gain_out += w
            take = gain_in >= gain_out
            if take:
                mask |= 1 << v
            for pid in bucket[v]:
                rec = pairs[pid]
                if not rec[3] or rec[2] == 0:
                    continue
                i = rec[0].index(v)
                want = rec[1] >> i & 1
                if want == (1 if take else 0):
                    rec[2] >>= 1
                else:
                    rec[2] = 0  # incompatible with this round's set
        covered = 0
        for rec in pairs:
            if rec[3] and rec[2] == 1:
                rec[3] = False
                covered += 1
        assert covered > 0, "conditional expectations must cover something"
        remaining -= covered
        chosen.append(frozenset(v for v in range(n) if mask >> v & 1))
    return UniversalSetFamily(n, k, tuple(chosen))


def _sampled_universal(n: int, k: int) -> UniversalSetFamily:
    rng = random.Random(n * 1_000_003 + k)
    size = (1 << k) * max(1, k) * max(4, n.bit_length() * 4)
    for _attempt in range(64):
        sets = tuple(frozenset(v for v in range(n) if rng.getrandbits(1))
                     for _ in range(size))
        family = UniversalSetFamily(n, k, sets)
        ok, _ = verify_universal(family)
        if ok:
            return family
        size *= 2
    raise AssertionError("random universal family kept failing verification")


def solve_fpt_derandomized(g: WeightedGraph, s: int, t: int, *,
                           guard: int = DEFAULT_MU2_GUARD,
                           assume_conservative: bool = False) -> OddPathSolution:
    """Deterministic matching-parameter solver via a universal family.

    An optimal path carries at most 2*mu negative edges (same-parity
    positions form a matching), so a family shattering every min(2*mu,|E-|)
    subset of negative edge indices contains a set that splits the optimal
    path's negative edges correctly.
    """
    _precheck(g, s, t, assume_conservative)
    neg = g.negative_edge_ids()
    if not neg:
        return solve_spcop(g, s, t, assume_conservative=True)
    mu = negative_matching_parameter(g)
    if 2 * mu > guard:
        raise ParameterTooLargeError(
            f"universal family for 2*mu={2 * mu} exceeds the guard",
            "2*mu", 2 * mu, guard)
    k = min(2 * mu, len(neg))
    family = build_universal_set(len(neg), k)
    best: OddPathSolution | None = None
    seen: set[int] = set()
    for mask in family.masks:
        mask &= (1 << len(neg)) - 1
        if mask in seen:
            continue
        seen.add(mask)
        guess = ParityGuess.from_mask(neg, mask)
        c = ParityConstraints(guess.e_even, guess.e_odd)
        best = _best(best, solve_spcop(g, s, t, c, assume_conservative=True))
    return best if best is not None else infeasible()
