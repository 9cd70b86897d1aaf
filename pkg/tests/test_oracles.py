import random

import networkx as nx
import pytest

from unosolve.core import Card, GameMode, Instance, is_feasible, winner_condition
from unosolve.oracles import (BudgetExceeded, OracleBudget, all_maximum_matchings,
                              hamiltonian_path_bruteforce, max_matching_bruteforce, uno_minimax)
from unosolve.reductions import SimpleGraph, all_hamiltonian_paths
from unosolve.solver_coop import solve_uno1_exact
from unosolve.unograph import build_uno1_graph

from conftest import random_cards, random_pair

K3 = SimpleGraph(3, ((1, 2), (1, 3), (2, 3)))
STAR = SimpleGraph(4, ((1, 2), (1, 3), (1, 4)))


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        OracleBudget(max_vertices=0)


def test_hp_small_graphs():
    path = hamiltonian_path_bruteforce(K3)
    assert K3.is_hamiltonian_path(path)
    assert hamiltonian_path_bruteforce(STAR) is None
    assert hamiltonian_path_bruteforce(STAR, start=2) is None


def test_hp_fixed_start():
    p3 = SimpleGraph(3, ((1, 2), (2, 3)))
    assert hamiltonian_path_bruteforce(p3, start=1) == [1, 2, 3]
    assert hamiltonian_path_bruteforce(p3, start=2) is None


def test_hp_budget():
    big = SimpleGraph(25, tuple((i, i + 1) for i in range(1, 25)))
    with pytest.raises(BudgetExceeded):
        hamiltonian_path_bruteforce(big)


def test_hp_matches_dfs_enumeration_and_networkx():
    for h in nx.graph_atlas_g()[1:300]:
        g = SimpleGraph.from_networkx(h)
        found = hamiltonian_path_bruteforce(g)
        assert (found is not None) == any(True for _ in all_hamiltonian_paths(g))
        if found is not None:
            assert g.is_hamiltonian_path(found)
        for s in range(1, g.n + 1):
            pinned = hamiltonian_path_bruteforce(g, start=s)
            assert (pinned is not None) == any(p[0] == s for p in all_hamiltonian_paths(g))


def test_hp_agrees_with_solitaire_solver():
    rng = random.Random(101)
    for _ in range(200):
        cards = random_cards(rng, rng.randint(1, 10), 3, 4)
        path = hamiltonian_path_bruteforce(build_uno1_graph(cards))
        assert (path is not None) == solve_uno1_exact(cards).answer


def test_matching_bruteforce():
    assert max_matching_bruteforce(2, [(0, 1)]) == 1
    assert max_matching_bruteforce(3, [(0, 1), (1, 2)]) == 1
    assert sorted(map(sorted, all_maximum_matchings(3, [(0, 1), (1, 2)]))) == [[(0, 1)], [(1, 2)]]
    assert max_matching_bruteforce(4, [(0, 1), (1, 2), (2, 3), (3, 0)]) == 2


def test_minimax_uncoop_examples():
    assert uno_minimax(Instance.pair([(1, 1)], [(1, 2)]), GameMode.UNCOOP2).winner == 2
    assert uno_minimax(Instance.pair([(1, 1)], [(2, 2)]), GameMode.UNCOOP2).winner == 1


def test_minimax_budget():
    inst = Instance.single([(1, 1)] * 13)
    with pytest.raises(BudgetExceeded):
        uno_minimax(inst, GameMode.UNO1)


@pytest.mark.parametrize("mode", [GameMode.COOP2, GameMode.UNCOOP2])
def test_minimax_lines_are_legal_and_deterministic(mode):
    rng = random.Random(7)
    for _ in range(100):
        inst = random_pair(rng)
        a = uno_minimax(inst, mode)
        assert a == uno_minimax(inst, mode)
        assert is_feasible(inst, a.line, mode)
        out = winner_condition(inst, a.line, mode)
        if mode is GameMode.UNCOOP2:
            assert out.finished and out.winner == a.winner
        else:
            assert out.player1_wins == (a.winner == 1)


def test_minimax_solitaire_line():
    inst = Instance.single([(1, 1), (1, 2), (2, 2)])
    val = uno_minimax(inst, GameMode.UNO1)
    assert val.winner == 1 and [m.card for m in val.line] == [Card(1, 1), Card(1, 2), Card(2, 2)]
