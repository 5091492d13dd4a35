from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddpath.errors import ParseError, StructuralError
from oddpath.graph import (WeightedGraph, constraints_from_text,
                           graph_from_json, graph_from_text, graph_to_json,
                           graph_to_text, parse_weight)


def test_rejects_self_loops_and_parallel_edges():
    with pytest.raises(StructuralError):
        WeightedGraph(3, [(0, 0, Fraction(1))])
    with pytest.raises(StructuralError):
        WeightedGraph(3, [(0, 1, Fraction(1)), (1, 0, Fraction(2))])
    with pytest.raises(StructuralError):
        WeightedGraph(2, [(0, 2, Fraction(1))])


def test_edge_ids_are_positions():
    g = WeightedGraph(4, [(0, 1, Fraction(1)), (2, 3, Fraction(1, 2))])
    assert g.edge_between(1, 0) == 0
    assert g.edge_between(3, 2) == 1
    assert g.edge_between(0, 2) is None
    assert g.weight(1) == Fraction(1, 2)


def test_integer_scaling():
    g = WeightedGraph(3, [(0, 1, Fraction(1, 2)), (1, 2, Fraction(-2, 3))])
    assert g.weight_scale == 6
    assert g.int_weights == (3, -4)
    assert g.negative_edge_ids() == (1,)


def test_parse_weight_accepts_decimals_and_ratios():
    assert parse_weight("0.5") == Fraction(1, 2)
    assert parse_weight("-3/4") == Fraction(-3, 4)
    with pytest.raises(ParseError):
        parse_weight("1/0")
    with pytest.raises(ParseError):
        parse_weight("zebra")


def test_text_round_trip():
    text = "p odd 3 2\ne 0 1 1/2\ne 1 2 -1\ns 0\nt 2\n"
    g = graph_from_text(text)
    assert g.n == 3 and g.m == 2
    assert g.source == 0 and g.terminal == 2
    assert graph_from_text(graph_to_text(g)).edges == g.edges


def test_text_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        graph_from_text("p odd 2 1\ne 0 1 bogus\n")
    assert "line 2" in str(err.value)
    with pytest.raises(ParseError):
        graph_from_text("e 0 1 1\n")  # missing header
    with pytest.raises(ParseError):
        graph_from_text("p odd 2 2\ne 0 1 1\n")  # edge count mismatch


def test_json_mirror_round_trip():
    g = graph_from_text("p odd 3 2\ne 0 1 0.25\ne 1 2 2\ns 0\nt 2\n")
    obj = graph_to_json(g)
    h = graph_from_json(obj)
    assert h.edges == g.edges and h.source == 0 and h.terminal == 2


def test_constraint_lines_by_id_and_endpoints():
    text = "p odd 3 2\ne 0 1 1\ne 1 2 1\nc even 0\nc odd 1 2\n"
    g = graph_from_text(text)
    even, odd = constraints_from_text(text, g)
    assert even == {0} and odd == {1}
    with pytest.raises(ParseError):
        constraints_from_text("c even 0 2\n", g)  # no such edge


@settings(max_examples=120, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7),
                          st.fractions(min_value=-5, max_value=5)),
                max_size=12))
def test_graph_construction_and_serialisation(edges):
    clean = []
    seen = set()
    for u, v, w in edges:
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        clean.append((u, v, w))
    g = WeightedGraph(8, clean)
    again = graph_from_text(graph_to_text(g))
    assert again.edges == g.edges
    assert graph_from_json(graph_to_json(g)).edges == g.edges
