import random

import networkx as nx
import pytest

from unosolve.core import Card, Instance
from unosolve.reductions import SimpleGraph


def random_cards(rng: random.Random, n: int, c: int, b: int) -> list[Card]:
    return [Card(rng.randint(1, c), rng.randint(1, b)) for _ in range(n)]


def random_pair(rng: random.Random, max_hand: int = 5, c: int = 3, b: int = 3) -> Instance:
    h1 = random_cards(rng, rng.randint(1, max_hand), c, b)
    h2 = random_cards(rng, rng.randint(0, max_hand), c, b)
    return Instance.pair(h1, h2, c, b)


def atlas_graphs(min_n: int, max_n: int, non_tree: bool = True) -> list[SimpleGraph]:
    """Connected graphs on min_n..max_n vertices, one per isomorphism class."""
    out = []
    for h in nx.graph_atlas_g()[1:]:
        if min_n <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            g = SimpleGraph.from_networkx(h)
            if not (non_tree and g.is_tree()):
                out.append(g)
    return out


def cubic_suite() -> list[SimpleGraph]:
    named = [nx.complete_graph(4), nx.complete_bipartite_graph(3, 3),
             nx.circular_ladder_graph(3), nx.petersen_graph()]
    rand = [nx.random_regular_graph(3, n, seed=s) for n in (6, 8, 10) for s in range(6)]
    # two disjoint K4s: cubic, no Hamiltonian path
    named.append(nx.disjoint_union(nx.complete_graph(4), nx.complete_graph(4)))
    return [SimpleGraph.from_networkx(h) for h in named + rand]


@pytest.fixture
def rng():
    return random.Random(20240917)
