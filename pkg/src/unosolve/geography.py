"""Undirected vertex geography on bipartite graphs, and uncooperative UNO-2.

The player to move from vertex v wins exactly when every maximum matching
covers v. Since an UNO-2 graph is bipartite, one Hopcroft-Karp run decides
the whole game.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Card, Instance, Move, PlayingSequence
from .unograph import UnoGraph, VertexLabel, build_uno2_graph, is_bipartite


class NotBipartiteError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    mate: tuple[int | None, ...]

    @property
    def size(self) -> int:
        return sum(1 for m in self.mate if m is not None) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, m) for u, m in enumerate(self.mate) if m is not None and u < m]


@dataclass(frozen=True)
class Verdict:
    """`winner` is 1 for the first mover, 2 for the opponent.

    For UNO the moves are cards; for raw geography they are vertex ids.
    """
    winner: int
    opening_move: object = None
    principal_line: tuple = ()


def _sub_adj(g: UnoGraph, alive: frozenset[int] | None):
    if alive is None:
        return g.adj, range(len(g))
    return [tuple(w for w in nbrs if w in alive) if v in alive else ()
            for v, nbrs in enumerate(g.adj)], sorted(alive)


def max_matching(g: UnoGraph, alive: Iterable[int] | None = None,
                 left: Iterable[int] | None = None) -> Matching:
    """Maximum matching of a bipartite graph (optionally an induced subgraph).

    Hopcroft-Karp: BFS layers from the free left vertices, then disjoint
    shortest augmenting paths by DFS, repeated until none remain.
    """
    alive = None if alive is None else frozenset(alive)
    adj, verts = _sub_adj(g, alive)
    if left is None:
        part, odd = is_bipartite(g)
        if part is None:
            raise NotBipartiteError(f"odd cycle {odd}")
        left = part.left
    left = [v for v in verts if v in set(left)]
    n = len(g)
    mate: list[int | None] = [None] * n
    inf = float("inf")

    def bfs() -> bool:
        nonlocal dist
        dist = {}
        queue = deque()
        for u in left:
            if mate[u] is None:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                m = mate[w]
                if m is None:
                    found = True
                elif m not in dist:
                    dist[m] = dist[u] + 1
                    queue.append(m)
        return found

    def dfs(u) -> bool:
        for w in adj[u]:
            m = mate[w]
            if m is None or (dist.get(m, inf) == dist[u] + 1 and dfs(m)):
                mate[u], mate[w] = w, u
                return True
        dist[u] = inf
        return False

    dist: dict = {}
    while bfs():
        for u in left:
            if mate[u] is None:
                dfs(u)
    return Matching(tuple(mate))


def avoidable_vertices(g: UnoGraph, m: Matching, alive: Iterable[int] | None = None) -> set[int]:
    """Vertices missed by at least one maximum matching.

    These are the free vertices of `m` plus everything an even-length
    alternating path from a free vertex reaches.
    """
    alive = None if alive is None else frozenset(alive)
    adj, verts = _sub_adj(g, alive)
    reached = {v for v in verts if m.mate[v] is None}
    queue = deque(reached)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            x = m.mate[w]
            if x is not None and x != u and x not in reached:
                reached.add(x)
                queue.append(x)
    return reached


def avoidable_by_deletion(g: UnoGraph, alive: Iterable[int] | None = None) -> set[int]:
    """Same set by definition: v is avoidable iff deleting v keeps the matching number."""
    verts = set(range(len(g))) if alive is None else set(alive)
    nu = max_matching(g, verts).size
    return {v for v in verts if max_matching(g, verts - {v}).size == nu}


def _mover_wins(g: UnoGraph, token: int, alive: frozenset[int]) -> bool:
    m = max_matching(g, alive)
    return token not in avoidable_vertices(g, m, alive)


def best_move(g: UnoGraph, token: int, removed: Iterable[int] = ()) -> int | None:
    """Pick the mover's next vertex from `token` with `removed` already gone.

    A winning reply w is one that is avoidable once `token` is deleted, so
    the opponent moving from w loses. When no such reply exists the highest
    degree neighbour is returned; None when the mover is stuck.
    """
    removed = frozenset(removed)
    alive = frozenset(range(len(g))) - removed
    if token not in alive:
        raise ValueError(f"token {token} is not in the remaining graph")
    nbrs = [w for w in g.adj[token] if w in alive]
    if not nbrs:
        return None
    rest = alive - {token}
    m = max_matching(g, rest)
    safe = avoidable_vertices(g, m, rest)
    for w in nbrs:
        if w in safe:
            return w
    return max(nbrs, key=lambda w: (sum(1 for x in g.adj[w] if x in rest), -w))


def _play_out(g: UnoGraph, start: int, removed: frozenset[int] = frozenset()) -> list[int]:
    line = []
    token = start
    gone = set(removed)
    while True:
        nxt = best_move(g, token, gone)
        if nxt is None:
            return line
        gone.add(token)
        line.append(nxt)
        token = nxt


def solve_uvg(g: UnoGraph, start: int) -> Verdict:
    if not 0 <= start < len(g):
        raise ValueError(f"start vertex {start} not in graph")
    alive = frozenset(range(len(g)))
    winner = 1 if _mover_wins(g, start, alive) else 2
    line = tuple(_play_out(g, start))
    return Verdict(winner, line[0] if line else None, line)


def uvg_minimax(g: UnoGraph, start: int, max_vertices: int = 20) -> Verdict:
    """Exhaustive game tree; works on any undirected graph."""
    if len(g) > max_vertices:
        raise ValueError(f"{len(g)} vertices exceeds minimax cap {max_vertices}")
    if not 0 <= start < len(g):
        raise ValueError(f"start vertex {start} not in graph")
    nbr = [sum(1 << w for w in ws) for ws in g.adj]
    memo: dict[tuple[int, int], tuple[bool, int | None]] = {}

    def wins(alive: int, token: int) -> tuple[bool, int | None]:
        key = (alive, token)
        if key in memo:
            return memo[key]
        rest = alive & ~(1 << token)
        res = (False, None)
        opts = nbr[token] & rest
        fallback = None
        while opts:
            low = opts & -opts
            w = low.bit_length() - 1
            opts ^= low
            if fallback is None:
                fallback = w
            if not wins(rest, w)[0]:
                res = (True, w)
                break
        if not res[0]:
            res = (False, fallback)
        memo[key] = res
        return res

    alive = (1 << len(g)) - 1
    won, _ = wins(alive, start)
    line = []
    token = start
    while True:
        _, nxt = wins(alive, token)
        if nxt is None:
            break
        alive &= ~(1 << token)
        line.append(nxt)
        token = nxt
    return Verdict(1 if won else 2, line[0] if line else None, tuple(line))


# -- uncooperative UNO-2 -------------------------------------------------

def _label_moves(g: UnoGraph, vertices: Sequence[int]) -> PlayingSequence:
    return PlayingSequence(tuple(
        Move(g.labels[v].card, g.labels[v].player, g.labels[v].occurrence) for v in vertices))


def solve_uno2_uncoop(inst: Instance) -> Verdict:
    """Winner of two-player UNO where the last player able to play wins.

    Player 1 opens with any card t; player 2 then moves from t in the
    UNO-2 graph, so player 1 wins iff some card of hand 1 is avoidable.
    """
    if inst.players != 2:
        raise ValueError(f"uncooperative UNO-2 needs 2 players, got {inst.players}")
    n1 = len(inst.hands[0])
    if n1 == 0:
        return Verdict(2)
    g = build_uno2_graph(inst)
    left = range(n1)
    m = max_matching(g, left=left)
    avoid = avoidable_vertices(g, m)
    opening = next((v for v in range(n1) if v in avoid), None)
    winner = 1 if opening is not None else 2
    if opening is None:
        opening = 0
    line = [opening] + _play_out(g, opening)
    return Verdict(winner, g.labels[opening].card if winner == 1 else None,
                   _label_moves(g, line))


def virtual_start_graph(inst: Instance) -> tuple[UnoGraph, int]:
    """UNO-2 graph plus one extra vertex adjacent to all of hand 1.

    Player 1 is the mover from the extra vertex: the free opening card
    becomes an ordinary geography move.
    """
    g = build_uno2_graph(inst)
    s = len(g)
    n1 = len(inst.hands[0])
    adj = [list(nbrs) + ([s] if v < n1 else []) for v, nbrs in enumerate(g.adj)]
    adj.append(list(range(n1)))
    labels = g.labels + (VertexLabel(Card(0, 0), 2, -1),)
    return UnoGraph(labels, tuple(tuple(sorted(a)) for a in adj)), s


def solve_uno2_uncoop_virtual(inst: Instance) -> Verdict:
    g, s = virtual_start_graph(inst)
    m = max_matching(g)
    return Verdict(2 if s in avoidable_vertices(g, m) else 1)
