"""Cards, instances, playing sequences and the rules that judge them.

Colors and numbers are 1-based. A hand is a tuple of cards in input order;
duplicates are allowed and told apart by their position in the hand
(the *occurrence index*, 0-based).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class Card(NamedTuple):
    color: int
    number: int

    def __str__(self) -> str:
        return f"{self.color},{self.number}"


class GameMode(enum.Enum):
    UNO1 = "uno1"
    COOP2 = "coop2"
    UNCOOP2 = "uncoop2"


class InstanceError(ValueError):
    """Raised for malformed instance text or out-of-bounds cards."""


class SequenceError(ValueError):
    """A move names a player or card the instance cannot supply."""


def matches(t: Card, u: Card) -> bool:
    return t[0] == u[0] or t[1] == u[1]


@dataclass(frozen=True)
class Instance:
    players: int
    colors: int
    numbers: int
    hands: tuple[tuple[Card, ...], ...]

    def __post_init__(self):
        hands = tuple(tuple(Card(*c) for c in hand) for hand in self.hands)
        object.__setattr__(self, "hands", hands)
        if self.players < 1 or self.colors < 1 or self.numbers < 1:
            raise InstanceError("players, colors and numbers must be >= 1")
        if len(hands) != self.players:
            raise InstanceError(f"expected {self.players} hands, got {len(hands)}")
        for hand in hands:
            for card in hand:
                check_card_bounds(card, self.colors, self.numbers)

    @classmethod
    def single(cls, cards: Iterable[Sequence[int]], colors: int | None = None,
               numbers: int | None = None) -> Instance:
        """One-player instance; bounds default to the largest coordinates used."""
        cards = tuple(Card(*c) for c in cards)
        return cls(1, colors or max((c.color for c in cards), default=1),
                   numbers or max((c.number for c in cards), default=1), (cards,))

    @classmethod
    def pair(cls, hand1: Iterable[Sequence[int]], hand2: Iterable[Sequence[int]],
             colors: int | None = None, numbers: int | None = None) -> Instance:
        h1 = tuple(Card(*c) for c in hand1)
        h2 = tuple(Card(*c) for c in hand2)
        allc = h1 + h2
        return cls(2, colors or max((c.color for c in allc), default=1),
                   numbers or max((c.number for c in allc), default=1), (h1, h2))

    @property
    def n(self) -> int:
        return sum(len(h) for h in self.hands)

    def hand_sizes(self) -> tuple[int, ...]:
        return tuple(len(h) for h in self.hands)

    def all_cards(self) -> list[Card]:
        return [c for hand in self.hands for c in hand]


def check_card_bounds(card: Card, colors: int, numbers: int) -> None:
    if not 1 <= card.color <= colors:
        raise InstanceError(f"color out of range: {card} (colors={colors})")
    if not 1 <= card.number <= numbers:
        raise InstanceError(f"number out of range: {card} (numbers={numbers})")


class Move(NamedTuple):
    card: Card
    player: int
    occurrence: int | None = None

    def __str__(self) -> str:
        return f"{self.player} {self.card}"


@dataclass(frozen=True)
class PlayingSequence:
    moves: tuple[Move, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(
            Move(Card(*m[0]), *m[1:]) for m in self.moves))

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    @classmethod
    def of(cls, cards: Iterable[Sequence[int]], player: int = 1) -> PlayingSequence:
        return cls(tuple(Move(Card(*c), player) for c in cards))

    def cards(self) -> list[Card]:
        return [m.card for m in self.moves]


def resolve_sequence(inst: Instance, seq: PlayingSequence) -> list[Move]:
    """Pin every move to a concrete occurrence in its player's hand.

    Moves without an explicit occurrence take the first unused copy of the
    card. Raises SequenceError for a bad player index, a card the hand does
    not hold, or an occurrence consumed twice.
    """
    used = [set() for _ in inst.hands]
    resolved = []
    for j, move in enumerate(seq.moves, 1):
        if not 1 <= move.player <= inst.players:
            raise SequenceError(f"move {j}: player {move.player} out of range")
        hand = inst.hands[move.player - 1]
        taken = used[move.player - 1]
        occ = move.occurrence
        if occ is None:
            occ = next((k for k, c in enumerate(hand)
                        if c == move.card and k not in taken), None)
            if occ is None:
                raise SequenceError(
                    f"move {j}: card {move.card} not in hand of player {move.player}")
        elif not 0 <= occ < len(hand) or hand[occ] != move.card:
            raise SequenceError(
                f"move {j}: occurrence {occ} of player {move.player} is not {move.card}")
        elif occ in taken:
            raise SequenceError(f"move {j}: occurrence {occ} already played")
        taken.add(occ)
        resolved.append(Move(move.card, move.player, occ))
    return resolved


def _has_play(hand: Sequence[Card], taken: set[int], last: Card) -> bool:
    return any(k not in taken and matches(c, last) for k, c in enumerate(hand))


def _coop_over(inst: Instance, used: list[set[int]]) -> bool:
    # A player 2 dealt no cards never finishes; they are simply always skipped.
    return len(used[0]) == len(inst.hands[0]) or (
        bool(inst.hands[1]) and len(used[1]) == len(inst.hands[1]))


def check_sequence(inst: Instance, seq: PlayingSequence, mode: GameMode) -> str | None:
    """Return None if `seq` is feasible under `mode`, else a diagnostic."""
    try:
        moves = resolve_sequence(inst, seq)
    except SequenceError as exc:
        return str(exc)
    if mode is GameMode.UNO1:
        if any(m.player != 1 for m in moves):
            return "UNO1 sequences are played by player 1 only"
    elif inst.players != 2:
        return f"{mode.value} needs exactly 2 players"
    used = [set() for _ in inst.hands]
    for j, move in enumerate(moves):
        if j > 0:
            prev = moves[j - 1]
            if not matches(prev.card, move.card):
                return f"move {j + 1}: {move.card} does not match {prev.card}"
            if mode is GameMode.UNCOOP2 and move.player == prev.player:
                return f"move {j + 1}: player {move.player} moved twice"
            if mode is GameMode.COOP2:
                if _coop_over(inst, used):
                    return f"move {j + 1}: game already over"
                other = 3 - prev.player
                if move.player == prev.player and _has_play(
                        inst.hands[other - 1], used[other - 1], prev.card):
                    return f"move {j + 1}: player {other} holds a playable card"
        elif move.player != 1:
            return "player 1 must make the first move"
        used[move.player - 1].add(move.occurrence)
    return None


def is_feasible(inst: Instance, seq: PlayingSequence, mode: GameMode) -> bool:
    return check_sequence(inst, seq, mode) is None


@dataclass(frozen=True)
class Outcome:
    """Result of judging a finished (or unfinished) play.

    `player1_wins` is the mode's success notion: player 1 emptied the hand
    for UNO1/COOP2, or made the final move for UNCOOP2. `finished` is False
    when the sequence could still be extended under the mode's rules.
    """
    player1_wins: bool
    finished: bool
    winner: int | None = None


def winner_condition(inst: Instance, seq: PlayingSequence, mode: GameMode) -> Outcome:
    if not isinstance(mode, GameMode):
        raise ValueError(f"undefined mode {mode!r}")
    moves = resolve_sequence(inst, seq)
    used = [set() for _ in inst.hands]
    for m in moves:
        used[m.player - 1].add(m.occurrence)
    left = [len(h) - len(u) for h, u in zip(inst.hands, used)]

    if mode is GameMode.UNO1:
        ok = left[0] == 0
        finished = ok or (bool(moves) and not _has_play(inst.hands[0], used[0], moves[-1].card))
        return Outcome(ok, finished, 1 if ok else None)

    if mode is GameMode.COOP2:
        if left[0] == 0:
            return Outcome(True, True, 1)
        if inst.hands[1] and left[1] == 0:
            return Outcome(False, True, 2)
        if not moves:
            return Outcome(False, False)
        last = moves[-1].card
        stuck = not any(_has_play(h, u, last) for h, u in zip(inst.hands, used))
        return Outcome(False, stuck, None)

    # UNCOOP2: last player to play wins once the mover is out of plays.
    if not moves:
        if not inst.hands[0]:
            return Outcome(False, True, 2)
        return Outcome(False, False)
    last = moves[-1]
    mover = 3 - last.player
    if _has_play(inst.hands[mover - 1], used[mover - 1], last.card):
        return Outcome(False, False)
    return Outcome(last.player == 1, True, last.player)


def transpose(inst: Instance) -> Instance:
    hands = tuple(tuple(Card(c.number, c.color) for c in hand) for hand in inst.hands)
    return Instance(inst.players, inst.numbers, inst.colors, hands)


def transpose_sequence(seq: PlayingSequence) -> PlayingSequence:
    return PlayingSequence(tuple(
        Move(Card(m.card.number, m.card.color), m.player, m.occurrence) for m in seq.moves))


# -- serialization ---------------------------------------------------------

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_card(token: str, lineno: int) -> Card:
    try:
        x, y = token.split(",")
        return Card(int(x), int(y))
    except ValueError:
        raise InstanceError(f"line {lineno}: bad card {token!r}") from None


def _keyword_int(lines, key: str) -> int:
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise InstanceError(f"missing '{key}' line") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise InstanceError(f"line {lineno}: expected '{key} <int>'")
    try:
        value = int(parts[1])
    except ValueError:
        raise InstanceError(f"line {lineno}: expected '{key} <int>'") from None
    if value < 1:
        raise InstanceError(f"line {lineno}: {key} must be >= 1")
    return value


def parse_instance(text: str) -> Instance:
    lines = _content_lines(text)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise InstanceError("empty instance file") from None
    if line.split() != ["uno", "1"]:
        raise InstanceError(f"line {lineno}: expected header 'uno 1'")
    players = _keyword_int(lines, "players")
    colors = _keyword_int(lines, "colors")
    numbers = _keyword_int(lines, "numbers")
    hands = []
    for lineno, line in lines:
        head, sep, rest = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "hand":
            raise InstanceError(f"line {lineno}: expected 'hand <i>: ...'")
        if parts[1] != str(len(hands) + 1):
            raise InstanceError(f"line {lineno}: expected hand {len(hands) + 1}")
        if len(hands) == players:
            raise InstanceError(f"line {lineno}: more than {players} hands")
        hand = []
        for tok in rest.split():
            card = _parse_card(tok, lineno)
            try:
                check_card_bounds(card, colors, numbers)
            except InstanceError as exc:
                raise InstanceError(f"line {lineno}: {exc}") from None
            hand.append(card)
        hands.append(tuple(hand))
    if len(hands) != players:
        raise InstanceError(f"expected {players} hands, found {len(hands)}")
    return Instance(players, colors, numbers, tuple(hands))


def serialize_instance(inst: Instance) -> str:
    out = ["uno 1", f"players {inst.players}", f"colors {inst.colors}",
           f"numbers {inst.numbers}"]
    for i, hand in enumerate(inst.hands, 1):
        cards = " ".join(str(c) for c in hand)
        out.append(f"hand {i}: {cards}" if cards else f"hand {i}:")
    return "\n".join(out) + "\n"


def parse_sequence(text: str) -> PlayingSequence:
    moves = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise InstanceError(f"line {lineno}: expected '<player> <x>,<y>'")
        try:
            player = int(parts[0])
        except ValueError:
            raise InstanceError(f"line {lineno}: bad player {parts[0]!r}") from None
        moves.append(Move(_parse_card(parts[1], lineno), player))
    return PlayingSequence(tuple(moves))


def serialize_sequence(seq: PlayingSequence) -> str:
    return "".join(f"{m.player} {m.card}\n" for m in seq.moves)


def generate_random(players: int, hand_sizes: Sequence[int], colors: int,
                    numbers: int, seed: int | None = None) -> Instance:
    """Deal uniform random cards (with replacement) from the full deck."""
    if len(hand_sizes) != players:
        raise ValueError(f"need {players} hand sizes, got {len(hand_sizes)}")
    rng = random.Random(seed)
    hands = tuple(
        tuple(Card(rng.randint(1, colors), rng.randint(1, numbers)) for _ in range(size))
        for size in hand_sizes)
    return Instance(players, colors, numbers, hands)


# Reference hand over four colors and four numbers, with one known full play.
NINE_CARDS = Instance.single(
    [(1, 3), (2, 2), (2, 3), (2, 3), (2, 4), (3, 2), (3, 4), (4, 1), (4, 3)])
NINE_CARD_SEQUENCE = PlayingSequence.of(
    [(1, 3), (2, 3), (2, 4), (3, 4), (3, 2), (2, 2), (2, 3), (4, 3), (4, 1)])
