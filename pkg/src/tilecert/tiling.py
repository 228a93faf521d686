"""Tiles, bordered tilings of words, and strictly locally testable languages."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import WidthMismatch
from .srs import LEFT, RIGHT, Letter, Marker, Word, letter_key, plain, token


class Tile:
    """A width-k factor of a bordered word; used as a letter of labelled systems."""

    __slots__ = ("letters", "_hash", "_key")

    def __init__(self, letters: Iterable[Letter]):
        self.letters = tuple(letters)
        self._hash = hash(self.letters)
        self._key = None

    def __reduce__(self):
        return (Tile, (self.letters,))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Tile) and self._hash == other._hash and self.letters == other.letters

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.letters)

    @property
    def width(self) -> int:
        return len(self.letters)

    @property
    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = (4, tuple(letter_key(c) for c in self.letters))
        return self._key

    @property
    def has_loop_junction(self) -> bool:
        return any(a is RIGHT and b is LEFT for a, b in zip(self.letters, self.letters[1:]))

    @property
    def token(self) -> str:
        parts = []
        for c in self.letters:
            t = token(c)
            if not isinstance(c, Marker) and (t in ("L", "R") or any(ch in t for ch in "_[]")):
                t = f"[{t}]"
            parts.append(t)
        return "_".join(parts)

    @property
    def plain(self) -> str:
        return "".join(plain(c) for c in self.letters)

    def __repr__(self) -> str:
        return self.plain


_MARKER_CHARS = {"<": LEFT, "◁": LEFT, ">": RIGHT, "▷": RIGHT}


def tile(text: str) -> Tile:
    """Tile from a compact string, one letter per character, ``<``/``>`` for markers."""
    return Tile(_MARKER_CHARS.get(ch, ch) for ch in text)


@dataclass(frozen=True)
class TileSet:
    k: int
    tiles: frozenset

    def __post_init__(self):
        tiles = frozenset(self.tiles)
        for t in tiles:
            if len(t) != self.k:
                raise WidthMismatch(f"tile {t!r} has width {len(t)}, expected {self.k}")
        object.__setattr__(self, "tiles", tiles)

    @classmethod
    def of(cls, k: int, texts: Iterable[str]) -> "TileSet":
        return cls(k, frozenset(tile(t) for t in texts))

    def __contains__(self, t) -> bool:
        return t in self.tiles

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(sorted(self.tiles, key=letter_key))

    def __le__(self, other: "TileSet") -> bool:
        _check_width(self.k, other.k)
        return self.tiles <= other.tiles

    def union(self, other: "TileSet") -> "TileSet":
        _check_width(self.k, other.k)
        return TileSet(self.k, self.tiles | other.tiles)


def _check_width(k1: int, k2: int) -> None:
    if k1 != k2:
        raise WidthMismatch(f"cannot combine tile widths {k1} and {k2}")


def bord(w: Sequence[Letter], k: int) -> Word:
    return (LEFT,) * k + tuple(w) + (RIGHT,) * k


def tiled(w: Sequence[Letter], k: int) -> list[Tile]:
    if k < 1:
        raise ValueError("tile width must be at least 1")
    w = tuple(w)
    return [Tile(w[i:i + k]) for i in range(len(w) - k + 1)]


def btiled(w: Sequence[Letter], k: int) -> list[Tile]:
    return tiled(bord(w, k - 1), k)


def btiles(w: Sequence[Letter], k: int) -> TileSet:
    return TileSet(k, frozenset(btiled(w, k)))


def lang_member(T: TileSet, w: Sequence[Letter]) -> bool:
    return all(t in T.tiles for t in btiled(w, T.k))
