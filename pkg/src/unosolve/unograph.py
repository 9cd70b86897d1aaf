"""UNO graphs, the color/number incidence bigraph, and line graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .core import Card, Instance, matches


class VertexLabel(NamedTuple):
    card: Card
    player: int
    occurrence: int


@dataclass(frozen=True)
class UnoGraph:
    """Undirected graph on card occurrences; `adj[i]` is a sorted tuple."""
    labels: tuple[VertexLabel, ...]
    adj: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.labels)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adj) for v in nbrs if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def cards(self) -> list[Card]:
        return [lab.card for lab in self.labels]


def _from_edges(labels: Sequence[VertexLabel], edges: Iterable[tuple[int, int]]) -> UnoGraph:
    nbrs = [set() for _ in labels]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return UnoGraph(tuple(labels), tuple(tuple(sorted(s)) for s in nbrs))


def build_uno1_graph(cards: Iterable[Sequence[int]]) -> UnoGraph:
    cards = [Card(*c) for c in cards]
    labels = [VertexLabel(c, 1, k) for k, c in enumerate(cards)]
    n = len(cards)
    return _from_edges(labels, ((u, v) for u in range(n) for v in range(u + 1, n)
                                if matches(cards[u], cards[v])))


def build_uno2_graph(inst: Instance) -> UnoGraph:
    """Vertices are player 1's cards first, then player 2's."""
    if inst.players != 2:
        raise ValueError(f"UNO-2 graph needs 2 players, got {inst.players}")
    labels = [VertexLabel(c, p, k) for p, hand in enumerate(inst.hands, 1)
              for k, c in enumerate(hand)]
    n1 = len(inst.hands[0])
    edges = [(u, v) for u in range(n1) for v in range(n1, len(labels))
             if matches(labels[u].card, labels[v].card)]
    return _from_edges(labels, edges)


def build_unop_arcs(inst: Instance) -> list[tuple[int, int]]:
    """Directed match arcs for general p: u -> v iff v may be played right after u.

    Vertices are numbered as in build_uno2_graph (hand by hand). Only a
    representation; no solver consumes it.
    """
    labels = [(c, p) for p, hand in enumerate(inst.hands) for c in hand]
    p = inst.players
    return [(u, v) for u, (cu, pu) in enumerate(labels) for v, (cv, pv) in enumerate(labels)
            if u != v and pv == (pu + 1) % p and matches(cu, cv)]


@dataclass(frozen=True)
class Bigraph:
    """Colors on the left, numbers on the right, one edge per card occurrence."""
    colors: tuple[int, ...]
    numbers: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


def incidence_bigraph(cards: Iterable[Sequence[int]]) -> Bigraph:
    edges = tuple((c[0], c[1]) for c in cards)
    return Bigraph(tuple(sorted({x for x, _ in edges})),
                   tuple(sorted({y for _, y in edges})), edges)


def line_graph(g: Bigraph) -> UnoGraph:
    """Edge k of `g` becomes vertex k; parallel edges are adjacent."""
    labels = [VertexLabel(Card(x, y), 1, k) for k, (x, y) in enumerate(g.edges)]
    m = len(g.edges)
    es = g.edges
    return _from_edges(labels, ((a, b) for a in range(m) for b in range(a + 1, m)
                                if es[a][0] == es[b][0] or es[a][1] == es[b][1]))


class Bipartition(NamedTuple):
    left: frozenset[int]
    right: frozenset[int]


def is_bipartite(g: UnoGraph) -> tuple[Bipartition | None, list[int] | None]:
    """Two-color `g` by BFS.

    Returns ``(bipartition, None)`` or ``(None, odd_cycle)``; the cycle lists
    vertices in order with the closing edge implied.
    """
    side = [-1] * len(g)
    parent = [-1] * len(g)
    for root in range(len(g)):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    parent[v] = u
                    queue.append(v)
                elif side[v] == side[u]:
                    return None, _odd_cycle(parent, u, v)
    left = frozenset(v for v, s in enumerate(side) if s == 0)
    return Bipartition(left, frozenset(range(len(g))) - left), None


def _odd_cycle(parent: list[int], u: int, v: int) -> list[int]:
    def chain(x):
        out = [x]
        while parent[x] >= 0:
            x = parent[x]
            out.append(x)
        return out

    pu, pv = chain(u), chain(v)
    on_pv = set(pv)
    lca = next(x for x in pu if x in on_pv)
    up = pu[:pu.index(lca) + 1]
    down = pv[:pv.index(lca)]
    return up + down[::-1]


# -- canonical form ------------------------------------------------------

class CanonicalBudgetExceeded(RuntimeError):
    pass


def canonical_form(g: UnoGraph, max_leaves: int = 200_000) -> tuple:
    """Isomorphism invariant that is complete: equal iff isomorphic.

    True twins (equal closed neighbourhoods) are merged into weighted
    classes first, which removes the huge symmetric groups that cliques of
    identical or same-color cards produce. The weighted quotient is then
    labelled by individualisation and refinement, keeping the
    lexicographically smallest adjacency certificate over all leaves.
    """
    if len(g) > 64:
        raise ValueError("canonical_form supports graphs of at most 64 vertices")
    closed = [frozenset(g.adj[v]) | {v} for v in range(len(g))]
    classes: dict[frozenset, list[int]] = {}
    for v in range(len(g)):
        classes.setdefault(closed[v], []).append(v)
    reps = [members[0] for members in classes.values()]
    weight = [len(members) for members in classes.values()]
    owner = {}
    for i, members in enumerate(classes.values()):
        for v in members:
            owner[v] = i
    qadj = [frozenset(owner[w] for w in g.adj[r]) - {i} for i, r in enumerate(reps)]
    return _canon_weighted(weight, qadj, max_leaves)


def _refine(colors: list[int], adj: list[frozenset[int]]) -> list[int]:
    n = len(colors)
    while True:
        sig = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _canon_weighted(weight: list[int], adj: list[frozenset[int]], max_leaves: int) -> tuple:
    n = len(weight)
    start = _refine(list(weight), adj) if n else []
    best = None
    leaves = 0

    def certificate(order: list[int]) -> tuple:
        pos = {v: i for i, v in enumerate(order)}
        bits = tuple(tuple(sorted(pos[w] for w in adj[v])) for v in order)
        return tuple(weight[v] for v in order), bits

    def search(colors: list[int]):
        nonlocal best, leaves
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            leaves += 1
            if leaves > max_leaves:
                raise CanonicalBudgetExceeded(f"more than {max_leaves} leaves")
            order = sorted(range(n), key=lambda v: colors[v])
            cert = certificate(order)
            if best is None or cert < best:
                best = cert
            return
        for v in target:
            shifted = [2 * c + (0 if u == v else 1) if c == colors[v] else 2 * c
                       for u, c in enumerate(colors)]
            search(_refine(shifted, adj))

    search(start)
    return (n,) + (best if best is not None else ((), ()))


def isomorphic(g: UnoGraph, h: UnoGraph) -> bool:
    if len(g) != len(h) or len(g.edges()) != len(h.edges()):
        return False
    return canonical_form(g) == canonical_form(h)


# -- DOT export ----------------------------------------------------------

def vertex_name(label: VertexLabel) -> str:
    return f"p{label.player}_c{label.card.color}n{label.card.number}_{label.occurrence}"


def export_dot(g: UnoGraph, name: str = "uno") -> str:
    names = [vertex_name(lab) for lab in g.labels]
    lines = [f"graph {name} {{"]
    lines += [f"  {nm};" for nm in sorted(names)]
    pairs = sorted(tuple(sorted((names[u], names[v]))) for u, v in g.edges())
    lines += [f"  {a} -- {b};" for a, b in pairs]
    lines.append("}")
    return "\n".join(lines) + "\n"
