"""Polynomial-time solitaire UNO for a bounded number of colors.

Cards are lattice points (x = color, y = number) and are added one at a
time in row-major order (by number, then color). After each step the DP
holds, for every reachable endpoint profile, the exact number of ways to
cover the points seen so far by vertex-disjoint paths of the UNO-1 graph.
A path is profiled by where its two ends sit: both on the current row
(type h), one on the row (type v, row end first), or neither (type d),
together with the colors of the ends.

Internally the diagonal h/d classes are split into isolated vertices and
real paths whose ends happen to share a color: attaching a new point to
an isolated vertex can be done one way, to a real path two ways, so the
public (h; v; d) profile alone cannot carry exact counts. Tables are
projected back to the public profile on request.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple, Sequence

from .core import Card


class OrderedPoint(NamedTuple):
    card: Card
    occurrence: int

    @property
    def x(self) -> int:
        return self.card.color

    @property
    def y(self) -> int:
        return self.card.number


def order_points(cards: Sequence[Sequence[int]]) -> list[OrderedPoint]:
    pts = [OrderedPoint(Card(*c), k) for k, c in enumerate(cards)]
    return sorted(pts, key=lambda p: (p.y, p.x, p.occurrence))


# -- public profile ------------------------------------------------------

class Signature(NamedTuple):
    """Counts h over unordered color pairs, v over ordered pairs, d over unordered.

    Each tuple follows the pair order (1,1),(1,2),...,(1,c),(2,2),... for h
    and d and (1,1),(1,2),...,(c,c) for v.
    """
    h: tuple[int, ...]
    v: tuple[int, ...]
    d: tuple[int, ...]

    @property
    def colors(self) -> int:
        return int(len(self.v) ** 0.5 + 0.5)

    def entry(self, kind: str, i: int, j: int) -> int:
        c = self.colors
        if kind == "v":
            return self.v[(i - 1) * c + (j - 1)]
        i, j = min(i, j), max(i, j)
        return getattr(self, kind)[_upair_index(c)[(i, j)]]

    def nonzero(self) -> dict[tuple[str, int, int], int]:
        c = self.colors
        out = {}
        for (i, j), pos in _upair_index(c).items():
            if self.h[pos]:
                out[("h", i, j)] = self.h[pos]
            if self.d[pos]:
                out[("d", i, j)] = self.d[pos]
        for i in range(1, c + 1):
            for j in range(1, c + 1):
                val = self.v[(i - 1) * c + (j - 1)]
                if val:
                    out[("v", i, j)] = val
        return out

    def __str__(self) -> str:
        parts = [f"{k}{i}{j}={n}" if self.colors < 10 else f"{k}({i},{j})={n}"
                 for (k, i, j), n in self.nonzero().items()]
        return "[" + " ".join(parts) + "]"


_UPAIR_CACHE: dict[int, dict[tuple[int, int], int]] = {}


def _upair_index(c: int) -> dict[tuple[int, int], int]:
    if c not in _UPAIR_CACHE:
        pairs = [(i, j) for i in range(1, c + 1) for j in range(i, c + 1)]
        _UPAIR_CACHE[c] = {p: k for k, p in enumerate(pairs)}
    return _UPAIR_CACHE[c]


def signature_from_entries(c: int, entries: dict[tuple[str, int, int], int]) -> Signature:
    up = _upair_index(c)
    h = [0] * len(up)
    d = [0] * len(up)
    v = [0] * (c * c)
    for (kind, i, j), n in entries.items():
        if kind == "v":
            v[(i - 1) * c + (j - 1)] += n
        else:
            target = h if kind == "h" else d
            target[up[(min(i, j), max(i, j))]] += n
    return Signature(tuple(h), tuple(v), tuple(d))


def signature_of(pathset: Sequence[Sequence[int]], ell: int,
                 points: Sequence[OrderedPoint], colors: int) -> Signature:
    """Profile of a path cover of the first `ell` ordered points.

    `pathset` lists paths as sequences of indices into `points`; a
    one-element path is an isolated vertex.
    """
    covered = [i for path in pathset for i in path]
    if sorted(covered) != list(range(ell)):
        raise ValueError("path set must cover the first ell points exactly once")
    for path in pathset:
        for a, b in zip(path, path[1:]):
            pa, pb = points[a].card, points[b].card
            if pa.color != pb.color and pa.number != pb.number:
                raise ValueError(f"{pa} and {pb} do not match")
    row = points[ell - 1].y
    entries: Counter = Counter()
    for path in pathset:
        a, b = points[path[0]], points[path[-1]]
        on_a, on_b = a.y == row, b.y == row
        if on_a and on_b:
            entries[("h", a.x, b.x)] += 1
        elif on_a:
            entries[("v", a.x, b.x)] += 1
        elif on_b:
            entries[("v", b.x, a.x)] += 1
        else:
            entries[("d", a.x, b.x)] += 1
    return signature_from_entries(colors, entries)


# -- refined internal state ----------------------------------------------

# End descriptor: (on_row, color).
End = tuple[bool, int]


class _Layout:
    """Maps refined path classes to positions in a state tuple."""

    def __init__(self, c: int):
        self.c = c
        keys = []
        for i in range(1, c + 1):
            for j in range(i + 1, c + 1):
                keys.append(("H", i, j))
                keys.append(("D", i, j))
        for i in range(1, c + 1):
            keys += [("HD", i, i), ("HI", i, i), ("DD", i, i), ("DI", i, i)]
            keys += [("V", i, j) for j in range(1, c + 1)]
        self.keys = keys
        self.pos = {k: n for n, k in enumerate(keys)}
        self.size = len(keys)
        self.migrate = [self.pos[self._migrated(k)] for k in keys]
        self.fold = [self.pos[self._folded(k)] for k in keys]
        # per class: list of (attach requirement, other end) options
        self.options = [self._options(k) for k in keys]

    @staticmethod
    def _migrated(key):
        kind, i, j = key
        if kind == "H":
            return ("D", i, j)
        if kind == "HD":
            return ("DD", i, i)
        if kind == "HI":
            return ("DI", i, i)
        if kind == "V":
            return ("D", min(i, j), max(i, j)) if i != j else ("DD", i, i)
        return key

    @staticmethod
    def _folded(key):
        kind, i, j = key
        return {"HI": ("HD", i, i), "DI": ("DD", i, i)}.get(kind, key)

    @staticmethod
    def _options(key) -> list[tuple[End, End]]:
        """(attached end, opposite end) pairs for one path of this class."""
        kind, i, j = key
        if kind == "H":
            return [((True, i), (True, j)), ((True, j), (True, i))]
        if kind == "HD":
            return [((True, i), (True, i))] * 2
        if kind == "HI":
            return [((True, i), (True, i))]
        if kind == "V":
            return [((True, i), (False, j)), ((False, j), (True, i))]
        if kind == "D":
            return [((False, i), (False, j)), ((False, j), (False, i))]
        if kind == "DD":
            return [((False, i), (False, i))] * 2
        return [((False, i), (False, i))]  # DI

    def classify(self, a: End, b: End) -> int:
        """Class of a real (non-isolated) path with ends a and b."""
        if a[0] and b[0]:
            i, j = sorted((a[1], b[1]))
            return self.pos[("H", i, j) if i != j else ("HD", i, i)]
        if a[0] or b[0]:
            row, off = (a, b) if a[0] else (b, a)
            return self.pos[("V", row[1], off[1])]
        i, j = sorted((a[1], b[1]))
        return self.pos[("D", i, j) if i != j else ("DD", i, i)]

    def project(self, state: tuple[int, ...]) -> Signature:
        entries: Counter = Counter()
        for key, n in zip(self.keys, state):
            if n:
                kind, i, j = key
                entries[(kind[0].lower(), i, j)] += n
        return signature_from_entries(self.c, entries)


def _bump(state: tuple[int, ...], *deltas: tuple[int, int]) -> tuple[int, ...]:
    s = list(state)
    for idx, dv in deltas:
        s[idx] += dv
    return tuple(s)


@dataclass
class DpResult:
    answer: bool
    colors: int
    points: list[OrderedPoint]
    layers: list[dict[tuple[int, ...], int]] = field(repr=False)
    layout: _Layout = field(repr=False)

    @property
    def final(self) -> dict[tuple[int, ...], int]:
        return self.layers[-1] if self.layers else {}

    def signature_table(self, ell: int | None = None) -> Counter:
        """Public-profile counts f(ell, .) (default: last stored layer)."""
        layer = self.layers[-1] if ell is None else self.layers[ell - 1]
        out: Counter = Counter()
        for state, n in layer.items():
            out[self.layout.project(state)] += n
        return out

    def dump(self, ell: int | None = None) -> str:
        table = self.signature_table(ell)
        return "".join(f"{sig} {n}\n" for sig, n in sorted(table.items()))


def dp_decide(cards: Sequence[Sequence[int]], c: int | None = None,
              keep_layers: bool = True, decision_only: bool = False) -> DpResult:
    """Decide solitaire UNO by the endpoint-profile DP.

    `c` is the color bound (defaults to the largest color present). With
    `decision_only`, counts collapse to 1 and profiles that can no longer
    merge into a single path before the cards run out are dropped; the
    answer is unchanged but intermediate tables are no longer exact.
    """
    cards = [Card(*t) for t in cards]
    if c is None:
        c = max((t.color for t in cards), default=1)
    for t in cards:
        if not 1 <= t.color <= c:
            raise ValueError(f"color out of range: {t} (c={c})")
    layout = _Layout(c)
    pts = order_points(cards)
    n = len(pts)
    if n == 0:
        return DpResult(True, c, pts, [], layout)

    # points still to come per column, for pruning dead profiles
    later_in_col = [Counter(p.x for p in pts[ell + 1:]) for ell in range(n)] if decision_only else None

    layers = []
    table: dict[tuple[int, ...], int] = {}
    prev_y = None
    for ell, pt in enumerate(pts):
        k = pt.x
        if prev_y is None or pt.y > prev_y:
            table = _migrate(table, layout) if ell else {(0,) * layout.size: 1}
        table = _add_point(table, layout, k)
        if decision_only:
            table = _prune(table, layout, n - ell - 1, later_in_col[ell])
        prev_y = pt.y
        if keep_layers:
            layers.append(table)
        else:
            layers[:] = [table]
    answer = any(sum(state) == 1 for state in table)
    return DpResult(answer, c, pts, layers, layout)


def _migrate(table, layout: _Layout):
    out: dict[tuple[int, ...], int] = {}
    dest = layout.migrate
    for state, cnt in table.items():
        s = [0] * layout.size
        for idx, n in enumerate(state):
            if n:
                s[dest[idx]] += n
        key = tuple(s)
        out[key] = out.get(key, 0) + cnt
    return out


def _add_point(table, layout: _Layout, k: int):
    out: dict[tuple[int, ...], int] = {}
    iso_new = layout.pos[("HI", k, k)]
    t_end: End = (True, k)

    def put(key, w):
        out[key] = out.get(key, 0) + w

    for state, cnt in table.items():
        put(_bump(state, (iso_new, 1)), cnt)
        # usable (class, other end) attachments, one entry per option
        opts = []
        for idx, n in enumerate(state):
            if not n:
                continue
            for attached, other in layout.options[idx]:
                if attached[0] or attached[1] == k:
                    opts.append((idx, other))
        for idx, other in opts:
            put(_bump(state, (idx, -1), (layout.classify(t_end, other), 1)), cnt * state[idx])
        for a, b in itertools.combinations_with_replacement(range(len(opts)), 2):
            ia, oa = opts[a]
            ib, ob = opts[b]
            if ia == ib:
                m = state[ia]
                ways = comb(m, 2) if a == b else m * (m - 1)
            else:
                ways = state[ia] * state[ib]
            if not ways:
                continue
            put(_bump(state, (ia, -1), (ib, -1), (layout.classify(oa, ob), 1)), cnt * ways)
    return out


def _prune(table, layout: _Layout, remaining: int, later: Counter):
    """Drop profiles that cannot end as one path; collapse counts to 1.

    Isolated vertices are folded into the matching two-ended class, which
    offers the same attachments. Off-row ends in a column need later points
    there to absorb them, two per point, except for the final two ends.
    """
    out = {}
    fold = layout.fold
    for state, _ in table.items():
        paths = sum(state)
        if paths - 1 > remaining:
            continue
        if paths > 1 or remaining:
            s = [0] * layout.size
            for idx, n in enumerate(state):
                if n:
                    s[fold[idx]] += n
            state = tuple(s)
            ends = Counter()
            for key, n in zip(layout.keys, state):
                if n and key[0] != "H":
                    kind, i, j = key
                    if kind == "V":
                        ends[j] += n
                    elif kind == "HD":
                        continue
                    else:
                        ends[i] += n
                        ends[j] += n
            if any(e > 2 * later[x] + 2 for x, e in ends.items()):
                continue
            if any(n and key[0] in ("D", "DD") and not later[key[1]] and not later[key[2]]
                   for key, n in zip(layout.keys, state)):
                continue
        out[state] = 1
    return out


# -- brute-force oracle --------------------------------------------------

def enumerate_pathsets(cards: Sequence[Sequence[int]], ell: int, c: int | None = None,
                       max_points: int = 10) -> Counter:
    """Multiset of profiles over every path cover of the first `ell` points.

    Enumerates edge subsets of the induced UNO-1 graph with all degrees at
    most 2 and no cycle. Exponential; capped at `max_points`.
    """
    if ell > max_points:
        raise ValueError(f"ell={ell} exceeds enumeration cap {max_points}")
    cards = [Card(*t) for t in cards]
    if c is None:
        c = max((t.color for t in cards), default=1)
    pts = order_points(cards)[:ell]
    edges = [(a, b) for a in range(ell) for b in range(a + 1, ell)
             if pts[a].x == pts[b].x or pts[a].y == pts[b].y]
    deg = [0] * ell
    parent = list(range(ell))
    chosen: list[tuple[int, int]] = []
    result: Counter = Counter()

    def root(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def emit():
        nbrs = [[] for _ in range(ell)]
        for a, b in chosen:
            nbrs[a].append(b)
            nbrs[b].append(a)
        seen = [False] * ell
        paths = []
        for s in range(ell):
            if seen[s] or len(nbrs[s]) == 2:
                continue
            path, prev, cur = [], -1, s
            while True:
                path.append(cur)
                seen[cur] = True
                nxt = [w for w in nbrs[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
            paths.append(path)
        result[signature_of(paths, ell, pts, c)] += 1

    def rec(e: int):
        if e == len(edges):
            emit()
            return
        rec(e + 1)
        a, b = edges[e]
        if deg[a] < 2 and deg[b] < 2:
            ra, rb = root(a), root(b)
            if ra != rb:
                parent[ra] = rb
                deg[a] += 1
                deg[b] += 1
                chosen.append((a, b))
                rec(e + 1)
                chosen.pop()
                deg[a] -= 1
                deg[b] -= 1
                parent[ra] = ra

    if ell:
        rec(0)
    return result
