"""The ten acceptance criteria, each at its stated scale, tolerance and time budget.

Every test prints exactly one line, `[PASS]` or `[FAIL]`, before asserting.
"""

import math
import random
import time

import pytest

from unosolve import cli
from unosolve.core import (NINE_CARDS, NINE_CARD_SEQUENCE, Card, GameMode, Instance,
                           serialize_instance, serialize_sequence, transpose)
from unosolve.dp_uno1 import dp_decide, enumerate_pathsets
from unosolve.geography import solve_uno2_uncoop, solve_uvg, uvg_minimax
from unosolve.oracles import hamiltonian_path_bruteforce, uno_minimax
from unosolve.reductions import (all_hamiltonian_paths, hp_to_uno2_quiet, hpc_to_uno1,
                                 map_hp_to_sequence, map_sequence_to_hp, pad_equal_hands)
from unosolve.solver_coop import solve_uno1_exact, solve_uno2_coop
from unosolve.unograph import build_uno1_graph, incidence_bigraph, isomorphic, line_graph

from conftest import atlas_graphs, cubic_suite, random_cards
from test_geography import playout, random_bipartite


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    return emit


def test_criterion_01_nine_card(report, tmp_path, capsys):
    start = time.perf_counter()
    bt = solve_uno1_exact(NINE_CARDS).answer
    t0 = time.perf_counter()
    dp = dp_decide(NINE_CARDS.hands[0], 4).answer
    dp_secs = time.perf_counter() - t0
    inst = tmp_path / "nine.uno"
    seq = tmp_path / "nine.seq"
    inst.write_text(serialize_instance(NINE_CARDS))
    seq.write_text(serialize_sequence(NINE_CARD_SEQUENCE))
    code = cli.main(["verify", "--mode", "uno1", str(inst), "--sequence", str(seq)])
    capsys.readouterr()
    total = time.perf_counter() - start
    ok = bt and dp and dp_secs <= 60 and code == 0 and total < 120
    report(1, ok, f"backtracking={bt} dp={dp} ({dp_secs:.2f}s) verify exit={code} "
                  f"total {total:.2f}s")
    assert ok


def test_criterion_02_line_graph_structure(report):
    rng = random.Random(202)
    start = time.perf_counter()
    passed = 0
    for _ in range(100):
        cards = random_cards(rng, rng.randint(1, 12), rng.randint(1, 4), rng.randint(1, 4))
        passed += isomorphic(build_uno1_graph(cards), line_graph(incidence_bigraph(cards)))
    secs = time.perf_counter() - start
    ok = passed == 100 and secs < 10
    report(2, ok, f"{passed}/100 isomorphic in {secs:.2f}s")
    assert ok


def test_criterion_03_dp_exactness(report):
    rng = random.Random(303)
    start = time.perf_counter()
    agree = 0
    for _ in range(300):
        c = rng.randint(1, 3)
        cards = random_cards(rng, rng.randint(1, 10), c, rng.randint(1, 5))
        agree += dp_decide(cards, c).answer == solve_uno1_exact(cards).answer
    layers_ok = 0
    for _ in range(50):
        c = rng.randint(1, 3)
        cards = random_cards(rng, rng.randint(1, 8), c, rng.randint(1, 4))
        res = dp_decide(cards, c)
        layers_ok += all(res.signature_table(ell) == enumerate_pathsets(cards, ell, c)
                         for ell in range(1, len(cards) + 1))
    secs = time.perf_counter() - start
    ok = agree == 300 and layers_ok == 50 and secs < 300
    report(3, ok, f"decisions {agree}/300, exact layer counts {layers_ok}/50, {secs:.1f}s")
    assert ok


def _scaling_instance(n: int, seed: int) -> list[Card]:
    rng = random.Random(seed)
    return random_cards(rng, n, 2, max(1, n // 2))


def test_criterion_04_dp_scaling(report):
    sizes = [8, 16, 32, 64]
    reps = 3
    start = time.perf_counter()
    times = []
    for n in sizes:
        t0 = time.perf_counter()
        for r in range(reps):
            dp_decide(_scaling_instance(n, 1000 * n + r), 2, keep_layers=False,
                      decision_only=True)
        times.append((time.perf_counter() - t0) / reps)
    total = time.perf_counter() - start
    xs = [math.log(n) for n in sizes]
    ys = [math.log(max(t, 1e-6)) for t in times]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = (sum((x - mx) * (y - my) for x, y in zip(xs, ys))
             / sum((x - mx) ** 2 for x in xs))
    ok = slope <= 10 and total < 600
    timings = " ".join(f"n={n}:{t:.3f}s" for n, t in zip(sizes, times))
    report(4, ok, f"log-log slope {slope:.2f} ({timings}), total {total:.1f}s")
    assert ok


def test_criterion_05_uvg_characterization(report):
    rng = random.Random(505)
    start = time.perf_counter()
    checked = agree = 0
    for _ in range(300):
        g = random_bipartite(rng, 12)
        for s in range(len(g)):
            checked += 1
            agree += solve_uvg(g, s).winner == uvg_minimax(g, s).winner
    secs = time.perf_counter() - start
    ok = agree == checked and secs < 120
    report(5, ok, f"{agree}/{checked} (graph, start) pairs agree in {secs:.1f}s")
    assert ok


def test_criterion_06_uncooperative(report):
    rng = random.Random(606)
    start = time.perf_counter()
    agree = 0
    for _ in range(300):
        h1 = random_cards(rng, rng.randint(1, 5), 3, 3)
        h2 = random_cards(rng, rng.randint(0, 5), 3, 3)
        inst = Instance.pair(h1, h2, 3, 3)
        agree += solve_uno2_uncoop(inst).winner == uno_minimax(inst, GameMode.UNCOOP2).winner
    won = played = 0
    while played < 200:
        h1 = random_cards(rng, rng.randint(1, 5), 3, 3)
        h2 = random_cards(rng, rng.randint(0, 5), 3, 3)
        inst = Instance.pair(h1, h2, 3, 3)
        if solve_uno2_uncoop(inst).winner != 1:
            continue
        played += 1
        won += playout(inst, rng) == 1
    secs = time.perf_counter() - start
    ok = agree == 300 and won == 200 and secs < 120
    report(6, ok, f"minimax agreement {agree}/300, engine won {won}/200 playouts, {secs:.1f}s")
    assert ok


def test_criterion_07_hp_to_cooperative(report):
    start = time.perf_counter()
    graphs = atlas_graphs(1, 6)
    wrong = []
    for g in graphs:
        hp = hamiltonian_path_bruteforce(g) is not None
        if solve_uno2_coop(hp_to_uno2_quiet(g)).answer != hp:
            wrong.append(g)
    secs = time.perf_counter() - start
    ok = not wrong and secs < 300
    detail = f"{len(graphs) - len(wrong)}/{len(graphs)} connected non-tree graphs agree, {secs:.1f}s"
    if wrong:
        detail += f"; first disagreement: edges {list(wrong[0].edges)}"
    report(7, ok, detail)
    assert ok


def test_criterion_08_equal_hands(report):
    start = time.perf_counter()
    equal = True
    total = agree = 0
    first = None
    for g in atlas_graphs(4, 5):
        inst = hp_to_uno2_quiet(g)
        for s in range(1, g.n + 1):
            padded = pad_equal_hands(inst, s, g.n)
            equal &= len(padded.hands[0]) == len(padded.hands[1])
            hp = hamiltonian_path_bruteforce(g, start=s) is not None
            total += 1
            if solve_uno2_coop(padded).answer == hp:
                agree += 1
            elif first is None:
                first = (list(g.edges), s)
    secs = time.perf_counter() - start
    ok = equal and agree == total
    detail = f"hands equal={equal}, {agree}/{total} (graph, start) pairs agree, {secs:.1f}s"
    if first:
        detail += f"; first disagreement: edges {first[0]} start {first[1]}"
    report(8, ok, detail)
    assert ok


def test_criterion_09_cubic_to_solitaire(report):
    start = time.perf_counter()
    suite = cubic_suite()
    agree = sum(solve_uno1_exact(hpc_to_uno1(g)).answer
                == (hamiltonian_path_bruteforce(g) is not None) for g in suite)
    trips = trips_ok = 0
    for g in [g for g in suite if g.n <= 6]:
        for p in all_hamiltonian_paths(g):
            trips += 1
            trips_ok += map_sequence_to_hp(g, map_hp_to_sequence(g, p, "hpc"), "hpc") == p
    for g in atlas_graphs(1, 6):
        for p in all_hamiltonian_paths(g):
            trips += 1
            trips_ok += map_sequence_to_hp(g, map_hp_to_sequence(g, p, "hp"), "hp") == p
    secs = time.perf_counter() - start
    ok = agree == len(suite) and trips_ok == trips
    report(9, ok, f"cubic equivalence {agree}/{len(suite)}, round trips {trips_ok}/{trips}, "
                  f"{secs:.1f}s")
    assert ok


def test_criterion_10_transpose_symmetry(report):
    rng = random.Random(1010)
    agree = 0
    for _ in range(100):
        inst = Instance.single(random_cards(rng, rng.randint(1, 10), 3, 4), 3, 4)
        agree += solve_uno1_exact(inst).answer == solve_uno1_exact(transpose(inst)).answer
    ok = agree == 100
    report(10, ok, f"{agree}/100 instances give the same answer after transpose")
    assert ok

