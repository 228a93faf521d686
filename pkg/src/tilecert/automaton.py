"""Deterministic k-shift automata.

States are (k-1)-tuples of letters and every transition ``p --c--> q``
satisfies ``q == (p + (c,))[1:]``, so the automaton is fully described by
its edge set, and each edge ``p --c-->`` is the tile ``p + (c,)``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .errors import WidthMismatch
from .srs import LEFT, RIGHT, Letter, Marker, letter_key, plain
from .tiling import Tile, TileSet

State = tuple


def shift(p: State, c: Letter) -> State:
    return (p + (c,))[1:]


class ShiftAutomaton:
    def __init__(self, k: int, initial: Optional[State] = None):
        if k < 1:
            raise ValueError("tile width must be at least 1")
        self.k = k
        self.initial = (LEFT,) * (k - 1) if initial is None else tuple(initial)
        if len(self.initial) != k - 1:
            raise WidthMismatch(f"state {self.initial!r} does not have length {k - 1}")
        self._delta: dict[State, dict[Letter, State]] = {self.initial: {}}
        self._ntiles = 0

    # -- construction -------------------------------------------------------

    @classmethod
    def from_tiles(cls, T: TileSet, seed: Optional[State] = None) -> "ShiftAutomaton":
        a = cls(T.k, seed)
        for t in T.tiles:
            letters = t.letters
            a._add_edge(letters[:-1], letters[-1])
        return a

    def copy(self) -> "ShiftAutomaton":
        other = ShiftAutomaton.__new__(ShiftAutomaton)
        other.k = self.k
        other.initial = self.initial
        other._delta = {p: dict(out) for p, out in self._delta.items()}
        other._ntiles = self._ntiles
        return other

    def _add_state(self, p: State) -> None:
        if p not in self._delta:
            self._delta[p] = {}

    def _add_edge(self, p: State, c: Letter) -> bool:
        """Insert ``p --c-->``; returns True if the edge is new."""
        out = self._delta.get(p)
        if out is None:
            out = self._delta[p] = {}
        if c in out:
            return False
        q = (p + (c,))[1:]
        out[c] = q
        if q not in self._delta:
            self._delta[q] = {}
        self._ntiles += 1
        return True

    def _add_path(self, p: State, w: Sequence[Letter]) -> int:
        added = 0
        delta = self._delta
        for c in w:
            out = delta.get(p)
            q = out.get(c) if out is not None else None
            if q is None:
                self._add_edge(p, c)
                added += 1
                q = delta[p][c]
            p = q
        return added

    def add_path(self, p: State, w: Sequence[Letter]) -> "ShiftAutomaton":
        a = self.copy()
        a._add_state(tuple(p))
        a._add_path(tuple(p), w)
        return a

    # -- queries -------------------------------------------------------------

    @property
    def states(self) -> frozenset:
        return frozenset(self._delta)

    @property
    def tile_count(self) -> int:
        return self._ntiles

    def edges(self) -> Iterator[tuple[State, Letter, State]]:
        for p, out in self._delta.items():
            for c, q in out.items():
                yield p, c, q

    def successors(self, p: State) -> dict:
        return self._delta.get(p, {})

    def tiles_of(self) -> TileSet:
        return TileSet(self.k, frozenset(Tile(p + (c,)) for p, c, _ in self.edges()))

    def trace(self, p: State, w: Sequence[Letter]) -> Optional[State]:
        delta = self._delta
        for c in w:
            out = delta.get(p)
            if out is None:
                return None
            p = out.get(c)
            if p is None:
                return None
        return p

    def redex_endpoints(self, w: Sequence[Letter]) -> set[tuple[State, State]]:
        found = set()
        for p in self._delta:
            q = self.trace(p, w)
            if q is not None:
                found.add((p, q))
        return found

    def right_contexts(self, q: State, length: int) -> set[tuple]:
        """Label words of ``length`` readable from ``q`` lying in tiles(Σ*▷*)."""
        return set(self.iter_right_contexts(q, length))

    def iter_right_contexts(self, q: State, length: int) -> Iterator[tuple]:
        delta = self._delta

        def walk(p, n, after_end):
            if n == 0:
                yield ()
                return
            for c, nxt in delta.get(p, {}).items():
                if c is LEFT:
                    continue
                if c is RIGHT:
                    for rest in walk(nxt, n - 1, True):
                        yield (c,) + rest
                elif not after_end:
                    for rest in walk(nxt, n - 1, False):
                        yield (c,) + rest

        yield from walk(q, length, False)

    def has_right_context(self, q: State, length: int) -> bool:
        return next(self.iter_right_contexts(q, length), None) is not None

    def check_shift_property(self) -> list[str]:
        """Violations of the shift property (empty list when valid)."""
        problems = []
        for p, c, q in self.edges():
            if len(p) != self.k - 1:
                problems.append(f"state {p!r} has wrong length")
            if q != shift(p, c):
                problems.append(f"edge {p!r} --{c!r}--> {q!r} violates shift")
            if q not in self._delta:
                problems.append(f"target {q!r} is not a state")
        return problems

    def __eq__(self, other):
        if not isinstance(other, ShiftAutomaton):
            return NotImplemented
        return (self.k == other.k and self.initial == other.initial
                and self._delta == other._delta)

    def __repr__(self) -> str:
        return f"ShiftAutomaton(k={self.k}, states={len(self._delta)}, tiles={self._ntiles})"

    def to_dot(self) -> str:
        def name(p):
            return '"' + "".join(plain(c) for c in p).replace('"', '\\"') + '"'

        key = lambda p: tuple(letter_key(c) for c in p)
        lines = ["digraph shift {", "  rankdir=LR;", f"  {name(self.initial)} [shape=doublecircle];"]
        for p in sorted(self._delta, key=key):
            lines.append(f"  {name(p)};")
        for p in sorted(self._delta, key=key):
            out = self._delta[p]
            for c in sorted(out, key=letter_key):
                label = plain(c).replace('"', '\\"')
                lines.append(f'  {name(p)} -> {name(out[c])} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def from_tiles(T: TileSet, seed: Optional[State] = None) -> ShiftAutomaton:
    return ShiftAutomaton.from_tiles(T, seed)


def is_ordinary(c: Letter) -> bool:
    return not isinstance(c, Marker)
