"""Command-line front end.

Exit codes: 0 = yes / player 1 wins, 1 = no / player 1 loses,
2 = usage or input error. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import TextIO

from .core import (Card, GameMode, Instance, InstanceError, SequenceError, check_sequence,
                   generate_random, matches, parse_instance, parse_sequence, resolve_sequence,
                   serialize_instance, serialize_sequence, winner_condition)
from .dp_uno1 import dp_decide
from .geography import best_move, solve_uno2_uncoop
from .reductions import (GraphFormatError, ReductionWarning, hp_to_uno2, hpc_to_uno1,
                         pad_equal_hands, parse_graph)
from .solver_coop import solve_uno1_exact, solve_uno2_coop
from .unograph import build_uno1_graph, build_uno2_graph, export_dot

DP_COLOR_THRESHOLD = 3
YES, NO, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_instance(path: str) -> Instance:
    try:
        return parse_instance(_read(path))
    except InstanceError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _check_players(inst: Instance, mode: GameMode) -> None:
    want = 1 if mode is GameMode.UNO1 else 2
    if inst.players != want:
        raise UsageError(f"mode {mode.value} needs {want} player(s), file has {inst.players}")


def pick_algo(inst: Instance, mode: GameMode, algo: str) -> str:
    if algo == "auto":
        if mode is GameMode.UNO1:
            return "dp" if inst.colors <= DP_COLOR_THRESHOLD else "backtracking"
        return "matching" if mode is GameMode.UNCOOP2 else "backtracking"
    allowed = {"dp": {GameMode.UNO1}, "matching": {GameMode.UNCOOP2},
               "backtracking": {GameMode.UNO1, GameMode.COOP2}}
    if mode not in allowed[algo]:
        raise UsageError(f"algorithm {algo} does not apply to mode {mode.value}")
    return algo


def cmd_solve(args, out: TextIO) -> int:
    mode = GameMode(args.mode)
    inst = _load_instance(args.file)
    _check_players(inst, mode)
    algo = pick_algo(inst, mode, args.algo)
    if algo == "matching":
        verdict = solve_uno2_uncoop(inst)
        out.write(f"PLAYER {verdict.winner} WINS\n")
        if verdict.opening_move is not None:
            out.write(f"opening {verdict.opening_move}\n")
        out.write(serialize_sequence(verdict.principal_line))
        return YES if verdict.winner == 1 else NO
    if algo == "dp":
        answer = dp_decide(inst.hands[0], inst.colors, keep_layers=False,
                           decision_only=True).answer
        out.write("YES\n" if answer else "NO\n")
        return YES if answer else NO
    cert = solve_uno1_exact(inst) if mode is GameMode.UNO1 else solve_uno2_coop(inst)
    out.write("YES\n" if cert.answer else "NO\n")
    if cert.answer:
        out.write(serialize_sequence(cert.sequence))
    return YES if cert.answer else NO


def cmd_verify(args, out: TextIO) -> int:
    mode = GameMode(args.mode)
    inst = _load_instance(args.file)
    try:
        seq = parse_sequence(_read(args.sequence))
    except InstanceError as exc:
        raise UsageError(f"{args.sequence}: {exc}") from None
    try:
        resolve_sequence(inst, seq)
        problem = check_sequence(inst, seq, mode)
        if problem is None and not winner_condition(inst, seq, mode).player1_wins:
            problem = "sequence is feasible but does not reach the winning condition"
    except SequenceError as exc:
        raise UsageError(str(exc)) from None
    if problem:
        out.write("INVALID\n")
        print(problem, file=sys.stderr)
        return NO
    out.write("VALID\n")
    return YES


def cmd_generate(args, out: TextIO) -> int:
    try:
        sizes = [int(s) for s in args.cards.split(",")]
    except ValueError:
        raise UsageError(f"--cards expects comma-separated counts, got {args.cards!r}") from None
    if len(sizes) != args.players or min(sizes) < 0:
        raise UsageError(f"--cards needs {args.players} non-negative counts")
    if min(args.players, args.colors, args.numbers) < 1:
        raise UsageError("--players, --colors and --numbers must be positive")
    inst = generate_random(args.players, sizes, args.colors, args.numbers, args.seed)
    out.write(serialize_instance(inst))
    return YES


def cmd_reduce(args, out: TextIO) -> int:
    try:
        g = parse_graph(_read(args.graphfile))
    except GraphFormatError as exc:
        raise UsageError(f"{args.graphfile}: {exc}") from None
    if (args.source, args.to) == ("hp", "uno2"):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ReductionWarning)
            inst = hp_to_uno2(g)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        if args.equal_hands:
            if args.start is None:
                raise UsageError("--equal-hands needs --start")
            try:
                inst = pad_equal_hands(inst, args.start, g.n)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    elif (args.source, args.to) == ("hpc", "uno1"):
        if args.equal_hands:
            raise UsageError("--equal-hands applies only to hp -> uno2")
        try:
            cards = hpc_to_uno1(g)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        inst = Instance.single(cards) if cards else Instance(1, 1, 1, ((),))
    else:
        raise UsageError(f"no reduction from {args.source} to {args.to}")
    out.write(serialize_instance(inst))
    return YES


def cmd_graph(args, out: TextIO) -> int:
    inst = _load_instance(args.file)
    if inst.players == 1:
        g = build_uno1_graph(inst.hands[0])
    elif inst.players == 2:
        g = build_uno2_graph(inst)
    else:
        raise UsageError("graph export supports 1 or 2 players")
    out.write(export_dot(g))
    return YES


# -- interactive play ------------------------------------------------------

def _show(inst: Instance, used: set[int], offset: list[int], out: TextIO) -> None:
    for p, hand in enumerate(inst.hands):
        left = [str(c) for k, c in enumerate(hand) if offset[p] + k not in used]
        out.write(f"hand {p + 1}: {' '.join(left)}\n")


def _legal(inst: Instance, player: int, used: set[int], offset: list[int],
           last: Card | None) -> list[int]:
    base = offset[player - 1]
    return [base + k for k, c in enumerate(inst.hands[player - 1])
            if base + k not in used and (last is None or matches(c, last))]


def play_session(inst: Instance, human: int, inp: TextIO, out: TextIO) -> int:
    """Line-oriented uncooperative game against the matching engine.

    Returns the exit code: 0 if player 1 made the last move, 1 otherwise,
    2 if input ran out mid-game.
    """
    g = build_uno2_graph(inst)
    offset = [0, len(inst.hands[0])]
    forecast = solve_uno2_uncoop(inst)
    used: set[int] = set()
    token: int | None = None
    last_player = None
    mover = 1
    while True:
        last = g.labels[token].card if token is not None else None
        legal = _legal(inst, mover, used, offset, last)
        if not legal:
            break
        _show(inst, used, offset, out)
        if mover == human:
            names = " ".join(sorted({str(g.labels[v].card) for v in legal}))
            while True:
                out.write(f"player {mover} to play [{names}]> ")
                out.flush()
                line = inp.readline()
                if not line:
                    out.write("\n")
                    print("input ended; game aborted", file=sys.stderr)
                    return USAGE
                text = line.strip()
                pick = next((v for v in legal if str(g.labels[v].card) == text.replace(" ", "")),
                            None)
                if pick is not None:
                    break
                out.write(f"illegal move {text!r}; legal cards: {names}\n")
        elif token is None:
            pick = _engine_opening(inst, forecast, g, legal)
        else:
            pick = best_move(g, token, used - {token})
        out.write(f"player {mover} plays {g.labels[pick].card}\n")
        used.add(pick)
        token = pick
        last_player = mover
        mover = 3 - mover
    winner = last_player if last_player is not None else 2
    out.write(f"player {mover} cannot play; player {winner} wins\n")
    out.write(f"matching verdict before play: player {forecast.winner} wins with best play\n")
    return YES if winner == 1 else NO


def _engine_opening(inst, forecast, g, legal) -> int:
    if forecast.winner == 1:
        for v in legal:
            if g.labels[v].card == forecast.opening_move:
                return v
    return legal[0]


def cmd_play(args, out: TextIO, inp: TextIO | None = None) -> int:
    inst = _load_instance(args.file)
    _check_players(inst, GameMode.UNCOOP2)
    return play_session(inst, args.human, inp or sys.stdin, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unosolve", description="Solve mathematical UNO instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("--mode", required=True, choices=[m.value for m in GameMode])
    p.add_argument("--algo", default="auto", choices=["auto", "backtracking", "dp", "matching"])
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a playing sequence")
    p.add_argument("--mode", required=True, choices=[m.value for m in GameMode])
    p.add_argument("--sequence", required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="deal a random instance")
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--numbers", type=int, required=True)
    p.add_argument("--cards", required=True, help="hand sizes, e.g. 4,4")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="compile a graph problem into an instance")
    p.add_argument("--from", dest="source", required=True, choices=["hp", "hpc"])
    p.add_argument("--to", required=True, choices=["uno2", "uno1"])
    p.add_argument("--equal-hands", action="store_true")
    p.add_argument("--start", type=int)
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("graph", help="export the UNO graph")
    p.add_argument("file")
    p.add_argument("--out", default="dot", choices=["dot"])
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("play", help="play uncooperative UNO against the engine")
    p.add_argument("file")
    p.add_argument("--human", type=int, required=True, choices=[1, 2])
    p.set_defaults(func=cmd_play)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else YES
    try:
        return args.func(args, sys.stdout)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
