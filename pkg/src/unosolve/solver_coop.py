"""Exact backtracking deciders for solitaire UNO and cooperative two-player UNO."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (Card, GameMode, Instance, Move, PlayingSequence, is_feasible,
                   winner_condition)

# rough per-entry footprint of a memo key tuple plus set slot
_MEMO_ENTRY_BYTES = 160
DEFAULT_MEMO_BYTES = 256 * 2**20


@dataclass(frozen=True)
class Certificate:
    answer: bool
    sequence: PlayingSequence | None
    nodes_expanded: int


@dataclass
class SearchState:
    """What the move orderer sees: the deck, what is left, and the card on top."""
    cards: Sequence[Card]
    remaining: int
    candidates: list[int]


def search_order_heuristic(state: SearchState, enabled: bool = True) -> list[int]:
    """Order candidate card indices, fewest onward matches first.

    Ties (and the disabled mode) fall back to input order. Every candidate
    is kept.
    """
    if not enabled or len(state.candidates) <= 1:
        return list(state.candidates)
    cards, rem = state.cards, state.remaining

    def forward_degree(i: int) -> int:
        c = cards[i]
        return sum(1 for j in range(len(cards))
                   if j != i and rem >> j & 1 and (cards[j][0] == c[0] or cards[j][1] == c[1]))

    return sorted(state.candidates, key=lambda i: (forward_degree(i), i))


def _dedupe(cands: Iterable[int], cards: Sequence[Card], owner: Sequence[int]) -> list[int]:
    # identical cards in one hand are interchangeable; try only the first copy
    seen = set()
    out = []
    for i in cands:
        key = (cards[i], owner[i])
        if key not in seen:
            seen.add(key)
            out.append(i)
    return out


def _connected(cards: Sequence[Card], rem: int, last: int | None) -> bool:
    """Are the remaining cards (plus the top card) one match-component?"""
    parent: dict = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    roots = set()
    idx = [i for i in range(len(cards)) if rem >> i & 1]
    if last is not None:
        idx.append(last)
    for i in idx:
        x, y = cards[i]
        ra, rb = find(("c", x)), find(("n", y))
        if ra != rb:
            parent[ra] = rb
    for i in idx:
        roots.add(find(("c", cards[i][0])))
    return len(roots) <= 1


def _as_cards(cards) -> list[Card]:
    if isinstance(cards, Instance):
        if cards.players != 1:
            raise ValueError("solitaire UNO takes a single hand")
        return list(cards.hands[0])
    return [Card(*c) for c in cards]


def solve_uno1_exact(cards, heuristic: bool = True,
                     memo_bytes: int = DEFAULT_MEMO_BYTES) -> Certificate:
    """Can one player discard every card? Searches Hamiltonian paths of the UNO-1 graph."""
    cards = _as_cards(cards)
    n = len(cards)
    if n == 0:
        return Certificate(True, PlayingSequence(), 0)
    owner = [1] * n
    dead: set[tuple[int, int]] = set()
    memo_cap = max(1, memo_bytes // _MEMO_ENTRY_BYTES)
    nodes = 0
    path: list[int] = []

    def rec(rem: int, last: int | None) -> bool:
        nonlocal nodes
        nodes += 1
        if rem == 0:
            return True
        if last is not None and (rem, last) in dead:
            return False
        if not _connected(cards, rem, last):
            ok = False
        else:
            cands = [i for i in range(n) if rem >> i & 1 and (
                last is None or cards[i][0] == cards[last][0] or cards[i][1] == cards[last][1])]
            cands = _dedupe(cands, cards, owner)
            order = search_order_heuristic(SearchState(cards, rem, cands), heuristic)
            ok = False
            for i in order:
                path.append(i)
                if rec(rem & ~(1 << i), i):
                    ok = True
                    break
                path.pop()
        if not ok and last is not None and len(dead) < memo_cap:
            dead.add((rem, last))
        return ok

    found = rec((1 << n) - 1, None)
    seq = PlayingSequence(tuple(Move(cards[i], 1, i) for i in path)) if found else None
    cert = Certificate(found, seq, nodes)
    if found:
        _check(Instance.single(cards), seq, GameMode.UNO1)
    return cert


def solve_uno2_coop(inst: Instance, heuristic: bool = True,
                    memo_bytes: int = DEFAULT_MEMO_BYTES) -> Certificate:
    """Can both players together empty player 1's hand first?

    A player holding a matching card must play one (either may be chosen);
    a player without one is skipped.
    """
    if inst.players != 2:
        raise ValueError(f"cooperative UNO-2 needs 2 players, got {inst.players}")
    cards = inst.all_cards()
    owner = [p for p, hand in enumerate(inst.hands, 1) for _ in hand]
    occ = [k for hand in inst.hands for k in range(len(hand))]
    n = len(cards)
    n1 = len(inst.hands[0])
    mask1 = (1 << n1) - 1
    mask2 = ((1 << n) - 1) & ~mask1
    p2_can_finish = n > n1
    dead: set = set()
    memo_cap = max(1, memo_bytes // _MEMO_ENTRY_BYTES)
    nodes = 0
    path: list[int] = []

    def moves_for(rem: int, player: int, last: int | None) -> list[int]:
        pool = rem & (mask1 if player == 1 else mask2)
        return [i for i in range(n) if pool >> i & 1 and (
            last is None or cards[i][0] == cards[last][0] or cards[i][1] == cards[last][1])]

    def rec(rem: int, last: int | None, turn: int) -> bool:
        nonlocal nodes
        nodes += 1
        if not rem & mask1:
            return True
        if p2_can_finish and not rem & mask2:
            return False
        key = (rem, last, turn)
        if key in dead:
            return False
        cands = moves_for(rem, turn, last)
        nxt = 3 - turn
        if not cands and last is not None:
            cands = moves_for(rem, nxt, last)
            nxt = turn
        cands = _dedupe(cands, cards, owner)
        order = search_order_heuristic(SearchState(cards, rem, cands), heuristic)
        for i in order:
            path.append(i)
            if rec(rem & ~(1 << i), i, nxt):
                return True
            path.pop()
        if len(dead) < memo_cap:
            dead.add(key)
        return False

    found = rec((1 << n) - 1, None, 1)
    seq = None
    if found:
        seq = PlayingSequence(tuple(Move(cards[i], owner[i], occ[i]) for i in path))
        _check(inst, seq, GameMode.COOP2)
    return Certificate(found, seq, nodes)


def _check(inst: Instance, seq: PlayingSequence, mode: GameMode) -> None:
    if not is_feasible(inst, seq, mode) or not winner_condition(inst, seq, mode).player1_wins:
        raise AssertionError(f"solver produced an invalid {mode.value} certificate")
