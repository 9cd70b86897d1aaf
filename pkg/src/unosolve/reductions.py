"""Compile Hamiltonian-path instances into UNO hands, and map witnesses both ways."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Card, GameMode, Instance, Move, PlayingSequence, is_feasible


class ReductionWarning(UserWarning):
    pass


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices 1..n; edges stored as sorted pairs."""
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = []
        for i, j in self.edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i},{j}) references a missing vertex")
            if i == j:
                raise ValueError(f"self-loop at {i}")
            norm.append((min(i, j), max(i, j)))
        if len(set(norm)) != len(norm):
            raise ValueError("parallel edges are not allowed")
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_networkx(cls, g) -> SimpleGraph:
        nodes = sorted(g.nodes())
        idx = {v: k + 1 for k, v in enumerate(nodes)}
        return cls(len(nodes), tuple((idx[u], idx[v]) for u, v in g.edges()))

    def neighbors(self, v: int) -> list[int]:
        return sorted([j for i, j in self.edges if i == v] + [i for i, j in self.edges if j == v])

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == self.n - 1

    def is_cubic(self) -> bool:
        return all(self.degree(v) == 3 for v in range(1, self.n + 1))

    def is_hamiltonian_path(self, path: Sequence[int]) -> bool:
        es = set(self.edges)
        return (sorted(path) == list(range(1, self.n + 1))
                and all((min(a, b), max(a, b)) in es for a, b in zip(path, path[1:])))


def parse_graph(text: str) -> SimpleGraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows or rows[0][1] != ["graph", "1"]:
        raise GraphFormatError("line 1: expected header 'graph 1'")
    if len(rows) < 2 or len(rows[1][1]) != 2 or rows[1][1][0] != "v":
        raise GraphFormatError("line 2: expected 'v <count>'")
    try:
        n = int(rows[1][1][1])
        edges = []
        for lineno, parts in rows[2:]:
            if len(parts) != 3 or parts[0] != "e":
                raise GraphFormatError(f"line {lineno}: expected 'e <i> <j>'")
            edges.append((int(parts[1]), int(parts[2])))
        return SimpleGraph(n, tuple(edges))
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def serialize_graph(g: SimpleGraph) -> str:
    return f"graph 1\nv {g.n}\n" + "".join(f"e {i} {j}\n" for i, j in g.edges)


# -- Hamiltonian path -> cooperative UNO-2 ------------------------------

def hp_to_uno2(g: SimpleGraph) -> Instance:
    """Player 1 holds one card (i, i) per vertex, player 2 one card (i, j) per edge.

    The construction is total; graphs that are disconnected or trees only
    raise a ReductionWarning, since the equivalence is argued for the rest.
    """
    if not g.is_connected():
        warnings.warn("graph is disconnected", ReductionWarning, stacklevel=2)
    elif g.is_tree():
        warnings.warn("graph is a tree; player 2 may run out first", ReductionWarning,
                      stacklevel=2)
    n = max(g.n, 1)
    hand1 = tuple(Card(i, i) for i in range(1, g.n + 1))
    hand2 = tuple(Card(i, j) for i, j in g.edges)
    return Instance(2, n, n, (hand1, hand2))


def pad_equal_hands(inst: Instance, start: int, n: int | None = None) -> Instance:
    """Even out the hands of an HP-derived instance, pinning the path start.

    Player 1 receives (|C2| - |C1|) filler cards (n+2, n+2) and a bridge
    (n+2, n+1); player 2 receives the bridge's only answer (start, n+1).
    """
    h1, h2 = inst.hands
    if n is None:
        n = len(h1)
    if len(h1) > len(h2):
        raise ValueError("player 1 already holds more cards than player 2")
    if not 1 <= start <= n:
        raise ValueError(f"start vertex {start} out of range 1..{n}")
    if len(h1) == len(h2):
        return inst
    filler = (Card(n + 2, n + 2),) * (len(h2) - len(h1))
    hand1 = h1 + filler + (Card(n + 2, n + 1),)
    hand2 = h2 + (Card(start, n + 1),)
    return Instance(2, n + 2, n + 2, (hand1, hand2))


# -- Hamiltonian path in cubic graphs -> solitaire UNO ------------------

def edge_ids(g: SimpleGraph) -> dict[tuple[int, int], int]:
    return {e: k for k, e in enumerate(g.edges, 1)}


def hpc_to_uno1(g: SimpleGraph) -> list[Card]:
    """One card (vertex, edge id) per incidence; a vertex's three cards form a triangle."""
    if not g.is_cubic():
        raise ValueError("graph is not cubic")
    ids = edge_ids(g)
    return [Card(v, ids[e]) for v in range(1, g.n + 1) for e in g.edges if v in e]


def _edge(a: int, b: int) -> tuple[int, int]:
    return (min(a, b), max(a, b))


def map_hp_to_sequence(g: SimpleGraph, path: Sequence[int], reduction: str = "hp",
                       start: int | None = None) -> PlayingSequence:
    """Witness play for a Hamiltonian path of `g`.

    `reduction` is "hp" (two-player), "hp-padded" (two-player with equal
    hands pinned at `start`) or "hpc" (solitaire from a cubic graph).
    """
    path = list(path)
    if not g.is_hamiltonian_path(path):
        raise ValueError(f"{path} is not a Hamiltonian path")
    if reduction in ("hp", "hp-padded"):
        moves = []
        if reduction == "hp-padded":
            if start is None or path[0] != start:
                raise ValueError("padded witness must start at the pinned vertex")
            n = g.n
            pads = len(g.edges) - g.n
            if pads > 0:
                moves += [Move(Card(n + 2, n + 2), 1)] * pads
                moves += [Move(Card(n + 2, n + 1), 1), Move(Card(start, n + 1), 2)]
        for a, b in zip(path, path[1:]):
            moves += [Move(Card(a, a), 1), Move(Card(*_edge(a, b)), 2)]
        moves.append(Move(Card(path[-1], path[-1]), 1))
        return PlayingSequence(tuple(moves))
    if reduction != "hpc":
        raise ValueError(f"unknown reduction {reduction!r}")
    ids = edge_ids(g)
    out: list[Card] = []
    n = len(path)
    for j, v in enumerate(path):
        incident = sorted(ids[_edge(v, w)] for w in g.neighbors(v))
        into = ids[_edge(path[j - 1], v)] if j > 0 else None
        out_of = ids[_edge(v, path[j + 1])] if j < n - 1 else None
        others = [e for e in incident if e not in (into, out_of)]
        order = ([into] if into else []) + others + ([out_of] if out_of else [])
        out += [Card(v, e) for e in order]
    return PlayingSequence.of(out)


def map_sequence_to_hp(g: SimpleGraph, seq: PlayingSequence, reduction: str = "hp") -> list[int]:
    """Recover a Hamiltonian path of `g` from a full winning play of its reduction."""
    if reduction in ("hp", "hp-padded"):
        inst = hp_to_uno2_quiet(g)
        if reduction == "hp-padded":
            start = next((m.card.color for m in seq.moves
                          if m.player == 2 and m.card.number == g.n + 1), None)
            if start is not None:
                inst = pad_equal_hands(inst, start, g.n)
        if not is_feasible(inst, seq, GameMode.COOP2):
            raise ValueError("sequence is not feasible for the reduced instance")
        path = [m.card.color for m in seq.moves
                if m.player == 1 and m.card.color == m.card.number and m.card.color <= g.n]
    elif reduction == "hpc":
        cards = hpc_to_uno1(g)
        if len(seq) != len(cards) or not is_feasible(Instance.single(cards), seq, GameMode.UNO1):
            raise ValueError("sequence is not a full feasible play of the reduced hand")
        runs = []
        for m in seq.moves:
            if not runs or runs[-1] != m.card.color:
                runs.append(m.card.color)
        # a gadget split across the path can only leave a lone card at an end
        if len(runs) > 1 and runs.count(runs[0]) > 1:
            runs = runs[1:]
        if len(runs) > 1 and runs.count(runs[-1]) > 1:
            runs = runs[:-1]
        path = runs
    else:
        raise ValueError(f"unknown reduction {reduction!r}")
    if not g.is_hamiltonian_path(path):
        raise ValueError(f"recovered {path}, which is not a Hamiltonian path")
    return path


def hp_to_uno2_quiet(g: SimpleGraph) -> Instance:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ReductionWarning)
        return hp_to_uno2(g)


def all_hamiltonian_paths(g: SimpleGraph) -> Iterable[list[int]]:
    """Every directed Hamiltonian path, by plain DFS (small graphs only)."""
    def extend(path, seen):
        if len(path) == g.n:
            yield list(path)
            return
        for w in g.neighbors(path[-1]):
            if w not in seen:
                path.append(w)
                seen.add(w)
                yield from extend(path, seen)
                seen.discard(w)
                path.pop()

    for s in range(1, g.n + 1):
        yield from extend([s], {s})
