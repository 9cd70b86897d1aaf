"""Exponential-time ground truth.

Nothing here calls into the solvers it is used to check: Hamiltonian paths
come from a subset DP rather than backtracking, and games are evaluated by
plain recursion over the card rules instead of graph reasoning.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .core import Card, GameMode, Instance, Move, PlayingSequence


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 20
    max_cards: int = 12
    max_nodes: int = 5_000_000

    def __post_init__(self):
        if min(self.max_vertices, self.max_cards, self.max_nodes) <= 0:
            raise ValueError("oracle caps must be positive")


DEFAULT_BUDGET = OracleBudget()


def _neighbour_masks(g) -> tuple[list[int], list]:
    """Adjacency bitmasks plus the vertex names, for either graph flavour."""
    if hasattr(g, "adj"):
        names = list(range(len(g.adj)))
        return [sum(1 << w for w in nbrs) for nbrs in g.adj], names
    names = list(range(1, g.n + 1))
    masks = [0] * g.n
    for i, j in g.edges:
        masks[i - 1] |= 1 << (j - 1)
        masks[j - 1] |= 1 << (i - 1)
    return masks, names


def hamiltonian_path_bruteforce(g, start=None, budget: OracleBudget = DEFAULT_BUDGET):
    """Hamiltonian path of `g` by dynamic programming over vertex subsets.

    `g` is a UnoGraph (0-based vertices) or a SimpleGraph (1-based).
    `start`, if given, pins the first vertex. Returns the path as a list of
    vertex names, or None when no such path exists.
    """
    nbr, names = _neighbour_masks(g)
    n = len(nbr)
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceeds oracle cap {budget.max_vertices}")
    if n == 0:
        return [] if start is None else None
    starts = range(n) if start is None else [names.index(start)]
    full = (1 << n) - 1
    # ends[mask] = bitset of vertices v such that some path covers mask and ends at v
    ends: dict[int, int] = {}
    layers: list[list[int]] = [[] for _ in range(n + 1)]
    for s in starts:
        ends[1 << s] = 1 << s
        layers[1].append(1 << s)
    for size in range(1, n):
        for mask in layers[size]:
            e = ends[mask]
            while e:
                low = e & -e
                v = low.bit_length() - 1
                e ^= low
                free = nbr[v] & ~mask
                while free:
                    lw = free & -free
                    free ^= lw
                    m2 = mask | lw
                    if m2 not in ends:
                        ends[m2] = 0
                        layers[size + 1].append(m2)
                    ends[m2] |= lw
    if not ends.get(full):
        return None
    # walk back from any feasible end
    path = []
    mask = full
    v = (ends[full] & -ends[full]).bit_length() - 1
    while True:
        path.append(v)
        prev_mask = mask & ~(1 << v)
        if not prev_mask:
            break
        cand = ends[prev_mask] & nbr[v]
        v = (cand & -cand).bit_length() - 1
        mask = prev_mask
    path.reverse()
    return [names[v] for v in path]


def max_matching_bruteforce(n: int, edges: list[tuple[int, int]]) -> int:
    """Largest set of disjoint edges, by trying edges in or out."""
    edges = sorted(set(tuple(sorted(e)) for e in edges))

    @lru_cache(maxsize=None)
    def best(i: int, used: int) -> int:
        if i == len(edges):
            return 0
        u, v = edges[i]
        skip = best(i + 1, used)
        if used >> u & 1 or used >> v & 1:
            return skip
        return max(skip, 1 + best(i + 1, used | 1 << u | 1 << v))

    return best(0, 0)


def all_maximum_matchings(n: int, edges: list[tuple[int, int]]) -> list[frozenset]:
    size = max_matching_bruteforce(n, edges)
    edges = sorted(set(tuple(sorted(e)) for e in edges))
    found = []
    for combo in combinations(edges, size):
        seen = set()
        for e in combo:
            seen.update(e)
        if len(seen) == 2 * size:
            found.append(frozenset(combo))
    return found


# -- game trees ----------------------------------------------------------

@dataclass(frozen=True)
class GameValue:
    """`winner` is 1 when player 1 reaches the mode's goal under best play.

    For UNCOOP2 it is the player making the final move. For UNO1/COOP2 a
    failing instance has winner None. `line` is one principal variation.
    """
    winner: int | None
    line: PlayingSequence


def uno_minimax(inst: Instance, mode: GameMode, budget: OracleBudget = DEFAULT_BUDGET) -> GameValue:
    if inst.n > budget.max_cards:
        raise BudgetExceeded(f"{inst.n} cards exceeds oracle cap {budget.max_cards}")
    owner = [p for p, hand in enumerate(inst.hands, 1) for _ in hand]
    occ = [k for hand in inst.hands for k in range(len(hand))]
    card = [c for hand in inst.hands for c in hand]
    n = len(card)
    sizes = [len(h) for h in inst.hands]
    nodes = 0

    def playable(rem: int, player: int, last: int | None) -> list[int]:
        return [i for i in range(n) if rem >> i & 1 and owner[i] == player
                and (last is None or card[i][0] == card[last][0] or card[i][1] == card[last][1])]

    def left(rem: int, player: int) -> int:
        return sum(1 for i in range(n) if rem >> i & 1 and owner[i] == player)

    memo: dict = {}

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > budget.max_nodes:
            raise BudgetExceeded("oracle node cap reached")

    def uncoop(rem: int, last: int | None, mover: int):
        # returns (winner, line of card indices)
        key = (rem, last, mover)
        if key in memo:
            return memo[key]
        tick()
        options = playable(rem, mover, last)
        if not options:
            res = (3 - mover, [])
        else:
            res = None
            for i in options:
                w, line = uncoop(rem & ~(1 << i), i, 3 - mover)
                if w == mover:
                    res = (mover, [i] + line)
                    break
                if res is None:
                    res = (w, [i] + line)
        memo[key] = res
        return res

    def coop(rem: int, last: int | None, turn: int):
        # returns line of card indices reaching the goal, or None
        if left(rem, 1) == 0:
            return []
        if sizes[1] and left(rem, 2) == 0:
            return None
        key = (rem, last, turn)
        if key in memo:
            return memo[key]
        tick()
        options = playable(rem, turn, last)
        nxt = 3 - turn
        if not options and last is not None:
            options = playable(rem, nxt, last)
            nxt = turn
        res = None
        for i in options:
            sub = coop(rem & ~(1 << i), i, nxt)
            if sub is not None:
                res = [i] + sub
                break
        memo[key] = res
        return res

    def solitaire(rem: int, last: int | None):
        if rem == 0:
            return []
        key = (rem, last)
        if key in memo:
            return memo[key]
        tick()
        res = None
        for i in playable(rem, 1, last):
            sub = solitaire(rem & ~(1 << i), i)
            if sub is not None:
                res = [i] + sub
                break
        memo[key] = res
        return res

    full = (1 << n) - 1

    def to_seq(line):
        return PlayingSequence(tuple(Move(Card(*card[i]), owner[i], occ[i]) for i in line))

    if mode is GameMode.UNO1:
        if inst.players != 1:
            raise ValueError("UNO1 needs a single player")
        line = solitaire(full, None)
        return GameValue(1 if line is not None else None, to_seq(line or []))
    if inst.players != 2:
        raise ValueError(f"{mode.value} needs 2 players")
    if mode is GameMode.COOP2:
        line = coop(full, None, 1)
        return GameValue(1 if line is not None else None, to_seq(line or []))
    winner, line = uncoop(full, None, 1)
    return GameValue(winner, to_seq(line))
