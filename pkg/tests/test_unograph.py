import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unosolve.core import NINE_CARDS, Card, Instance, matches
from unosolve.unograph import (Bigraph, CanonicalBudgetExceeded, UnoGraph, build_uno1_graph,
                               build_uno2_graph, build_unop_arcs, canonical_form,
                               export_dot, incidence_bigraph, is_bipartite, isomorphic,
                               line_graph)

from conftest import random_cards

cards_st = st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), max_size=9)


def to_nx(g: UnoGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(len(g)))
    h.add_edges_from(g.edges())
    return h


# -- UNO-1 graphs ---------------------------------------------------------------

def test_nine_card_graph():
    g = build_uno1_graph(NINE_CARDS.hands[0])
    assert len(g) == 9
    assert len(g.edges()) == 15
    degrees = {str(lab.card): g.degree(v) for v, lab in enumerate(g.labels)}
    # (4,1) shares color 4 with (4,3) only; nothing else carries number 1
    assert degrees["4,1"] == 1
    assert degrees["2,3"] == 5


def test_single_card_and_duplicates():
    g = build_uno1_graph([(1, 1)])
    assert len(g) == 1 and g.edges() == []
    g = build_uno1_graph([(2, 3), (2, 3)])
    assert g.edges() == [(0, 1)]


@given(cards_st)
def test_uno1_edges_are_the_match_relation(cards):
    g = build_uno1_graph(cards)
    for u in range(len(cards)):
        for v in range(len(cards)):
            assert (v in g.adj[u]) == (u != v and matches(Card(*cards[u]), Card(*cards[v])))


@given(cards_st)
def test_color_and_number_classes_are_cliques(cards):
    g = build_uno1_graph(cards)
    for key in (0, 1):
        groups: dict = {}
        for v, lab in enumerate(g.labels):
            groups.setdefault(lab.card[key], []).append(v)
        for members in groups.values():
            for a in members:
                assert set(members) - {a} <= set(g.adj[a])


# -- UNO-2 graphs ---------------------------------------------------------------

def test_uno2_example():
    inst = Instance.pair([(1, 1), (2, 2)], [(1, 2)])
    g = build_uno2_graph(inst)
    named = {(str(g.labels[u].card), str(g.labels[v].card)) for u, v in g.edges()}
    assert named == {("1,1", "1,2"), ("2,2", "1,2")}


def test_uno2_no_cross_matches_is_edgeless():
    g = build_uno2_graph(Instance.pair([(1, 1)], [(2, 2)]))
    assert g.edges() == []
    part, _ = is_bipartite(g)
    assert part is not None


def test_uno2_rejects_other_player_counts():
    with pytest.raises(ValueError):
        build_uno2_graph(NINE_CARDS)


def test_uno2_is_bipartite_along_hands():
    rng = random.Random(3)
    for _ in range(100):
        h1 = random_cards(rng, rng.randint(1, 6), 3, 3)
        h2 = random_cards(rng, rng.randint(1, 6), 3, 3)
        g = build_uno2_graph(Instance.pair(h1, h2, 3, 3))
        assert all(g.labels[u].player != g.labels[v].player for u, v in g.edges())
        assert is_bipartite(g)[0] is not None


def test_unop_arcs_follow_turn_order():
    inst = Instance(3, 2, 2, (((1, 1),), ((1, 2),), ((2, 1),)))
    arcs = build_unop_arcs(inst)
    assert (0, 1) in arcs and (1, 0) not in arcs
    assert (2, 0) in arcs


# -- bipartite checks ---------------------------------------------------------

def test_triangle_has_odd_cycle():
    g = build_uno1_graph([(1, 1), (1, 2), (1, 3)])
    part, cycle = is_bipartite(g)
    assert part is None and sorted(cycle) == [0, 1, 2]


def test_empty_graph_bipartite():
    part, cycle = is_bipartite(build_uno1_graph([]))
    assert part is not None and cycle is None


# -- incidence bigraph and line graph -----------------------------------------

def test_incidence_bigraph_example():
    b = incidence_bigraph(NINE_CARDS.hands[0])
    assert len(b.colors) == 4 and len(b.numbers) == 4 and len(b.edges) == 9
    b = incidence_bigraph([(2, 3), (2, 3)])
    assert b.edges == ((2, 3), (2, 3))


def test_line_graph_small_cases():
    assert len(line_graph(incidence_bigraph([(1, 1)]))) == 1
    star = Bigraph((1,), (1, 2, 3), ((1, 1), (1, 2), (1, 3)))
    assert len(line_graph(star).edges()) == 3


def test_uno1_graph_is_line_graph_on_example():
    cards = NINE_CARDS.hands[0]
    assert isomorphic(build_uno1_graph(cards), line_graph(incidence_bigraph(cards)))


def test_line_graph_of_random_bigraph_is_an_uno_graph():
    rng = random.Random(8)
    for _ in range(60):
        m = rng.randint(1, 10)
        edges = tuple((rng.randint(1, 4), rng.randint(1, 4)) for _ in range(m))
        big = Bigraph(tuple(sorted({x for x, _ in edges})),
                      tuple(sorted({y for _, y in edges})), edges)
        assert isomorphic(line_graph(big), build_uno1_graph(edges))


# -- canonical form --------------------------------------------------------------

def test_canonical_form_matches_networkx():
    rng = random.Random(17)
    for _ in range(150):
        a = build_uno1_graph(random_cards(rng, rng.randint(1, 9), 3, 3))
        perm = list(range(len(a)))
        rng.shuffle(perm)
        shuffled = build_uno1_graph([a.labels[i].card for i in perm])
        assert isomorphic(a, shuffled)
        b = build_uno1_graph(random_cards(rng, len(a), 3, 3))
        assert isomorphic(a, b) == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_canonical_form_limits():
    with pytest.raises(ValueError):
        canonical_form(build_uno1_graph([(1, k) for k in range(1, 66)]))
    # the leaf cap only bites on graphs with large symmetric classes
    g = build_uno1_graph([(i, j) for i in range(1, 5) for j in range(1, 5)])
    with pytest.raises(CanonicalBudgetExceeded):
        canonical_form(g, max_leaves=1)


# -- DOT export ---------------------------------------------------------------------

def test_dot_single_vertex():
    text = export_dot(build_uno1_graph([(1, 1)]))
    assert text == "graph uno {\n  p1_c1n1_0;\n}\n"


def test_dot_deterministic_and_named():
    g = build_uno1_graph(NINE_CARDS.hands[0])
    text = export_dot(g)
    assert text == export_dot(build_uno1_graph(NINE_CARDS.hands[0]))
    assert "p1_c2n3_2 -- p1_c2n3_3;" in text


@settings(max_examples=30, deadline=None)
@given(cards_st)
def test_dot_reparses_with_same_counts(cards):
    pydot = pytest.importorskip("pydot")
    g = build_uno1_graph(cards)
    parsed = pydot.graph_from_dot_data(export_dot(g))[0]
    assert len(parsed.get_nodes()) == len(g)
    assert len(parsed.get_edges()) == len(g.edges())
