from __future__ import annotations

import random
from fractions import Fraction

import pytest

from oddpath.graph import WeightedGraph

SMALL_PALETTE = tuple(Fraction(x) for x in (-1, 0, 1))
WIDE_PALETTE = tuple(Fraction(x) for x in (-2, -1, 0, 1, 2))
NONNEG_PALETTE = tuple(Fraction(x) for x in (0, 1, 2, 3))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


def triangle(w: int = 1) -> WeightedGraph:
    f = Fraction(w)
    return WeightedGraph(3, [(0, 1, f), (1, 2, f), (0, 2, f)])


def path_graph(weights) -> WeightedGraph:
    ws = [Fraction(w) for w in weights]
    return WeightedGraph(len(ws) + 1,
                         [(i, i + 1, w) for i, w in enumerate(ws)])
