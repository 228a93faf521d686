"""String rewrite systems: letters, words, rules, relative problems, TPDB I/O."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import TpdbSyntaxError

Letter = Hashable
Word = tuple


class Marker(enum.Enum):
    """End markers; they never occur in rules, only in tiles and paths."""

    LEFT = "◁"
    RIGHT = "▷"

    @property
    def sort_key(self) -> tuple:
        return (0,) if self is Marker.LEFT else (1,)

    @property
    def token(self) -> str:
        return "L" if self is Marker.LEFT else "R"

    @property
    def plain(self) -> str:
        return "<" if self is Marker.LEFT else ">"

    def __repr__(self) -> str:
        return self.value


LEFT = Marker.LEFT
RIGHT = Marker.RIGHT


@dataclass(frozen=True)
class Marked:
    """DP-marked copy of a base letter."""

    base: Letter

    @property
    def sort_key(self) -> tuple:
        return (3, letter_key(self.base))

    @property
    def token(self) -> str:
        return token(self.base) + "#"

    @property
    def plain(self) -> str:
        return plain(self.base) + "#"

    def __repr__(self) -> str:
        return f"{self.base!r}#"


def letter_key(letter: Letter) -> tuple:
    if isinstance(letter, str):
        return (2, letter)
    return letter.sort_key


def word_key(w: Sequence[Letter]) -> tuple:
    return tuple(letter_key(c) for c in w)


def token(letter: Letter) -> str:
    """TPDB token for a letter (injective on the letters tilecert creates)."""
    if isinstance(letter, str):
        return letter
    return letter.token


def plain(letter: Letter) -> str:
    """Compact human-readable rendering used in text traces."""
    if isinstance(letter, str):
        return letter
    return letter.plain


def show_word(w: Sequence[Letter], sep: str = "") -> str:
    return sep.join(plain(c) for c in w)


def word(text: str) -> Word:
    """Build a word from a string: whitespace-separated tokens, or one letter per character."""
    if any(ch.isspace() for ch in text):
        return tuple(text.split())
    return tuple(text)


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    @classmethod
    def of(cls, lhs: str, rhs: str) -> "Rule":
        return cls(word(lhs) if lhs else (), word(rhs) if rhs else ())

    @property
    def sort_key(self) -> tuple:
        return (word_key(self.lhs), word_key(self.rhs))

    def reversed(self) -> "Rule":
        return Rule(self.lhs[::-1], self.rhs[::-1])

    def letters(self) -> set:
        return set(self.lhs) | set(self.rhs)

    def __repr__(self) -> str:
        return f"{show_word(self.lhs) or 'ε'}→{show_word(self.rhs) or 'ε'}"


def canonical_rules(rules: Iterable[Rule]) -> tuple[Rule, ...]:
    return tuple(sorted(set(rules), key=lambda r: r.sort_key))


@dataclass(frozen=True)
class RelProblem:
    """SN(strict/weak); with no weak rules this is plain termination of strict."""

    strict: tuple[Rule, ...] = ()
    weak: tuple[Rule, ...] = ()
    alphabet: frozenset = field(default=frozenset(), compare=False)

    def __post_init__(self):
        strict = canonical_rules(self.strict)
        in_strict = set(strict)
        weak = canonical_rules(r for r in self.weak if r not in in_strict)
        object.__setattr__(self, "strict", strict)
        object.__setattr__(self, "weak", weak)
        letters = set()
        for r in strict + weak:
            letters |= r.letters()
        object.__setattr__(self, "alphabet", frozenset(letters))

    @property
    def rules(self) -> tuple[Rule, ...]:
        return self.strict + self.weak

    @property
    def is_standard(self) -> bool:
        return not self.weak

    def size(self) -> tuple[int, int, int]:
        return size_triple(self)

    def sorted_alphabet(self) -> list:
        return sorted(self.alphabet, key=letter_key)


def size_triple(p: RelProblem) -> tuple[int, int, int]:
    return (len(p.strict), len(p.weak), len(p.alphabet))


def format_size(size: Sequence[int]) -> str:
    r, s, a = size
    return f"({r}/{s},{a})"


def rewrite_steps(rules: Iterable[Rule], w: Sequence[Letter]) -> set[Word]:
    """All one-step reducts of ``w``."""
    w = tuple(w)
    out = set()
    for rule in rules:
        n = len(rule.lhs)
        for i in range(len(w) - n + 1):
            if w[i:i + n] == rule.lhs:
                out.add(w[:i] + rule.rhs + w[i + n:])
    return out


# --- TPDB ------------------------------------------------------------------

_LEXEME = re.compile(r"\s+|\(|\)|,|->=|->|(?:(?!->)[^\s(),])+")


def _lex(text: str):
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _LEXEME.match(text, pos)
        lexeme = m.group()
        col = pos - line_start + 1
        if not lexeme[0].isspace():
            yield lexeme, line, col
        nl = lexeme.count("\n")
        if nl:
            line += nl
            line_start = pos + lexeme.rfind("\n") + 1
        pos = m.end()


def parse_tpdb(text: str) -> RelProblem:
    """Parse the SRS flavour of the TPDB plain-text format."""
    lexemes = list(_lex(text))
    strict: list[Rule] = []
    weak: list[Rule] = []
    i = 0
    end_line = text.count("\n") + 1
    end_col = len(text) - text.rfind("\n")

    def at(j):
        if j < len(lexemes):
            return lexemes[j]
        return (None, end_line, end_col)

    while i < len(lexemes):
        lex, line, col = at(i)
        if lex != "(":
            raise TpdbSyntaxError(f"expected '(' but found {lex!r}", line, col)
        name, line, col = at(i + 1)
        if name is None:
            raise TpdbSyntaxError("unexpected end of input", line, col)
        i += 2
        if name == "COMMENT":
            depth = 1
            while depth:
                lex, line, col = at(i)
                if lex is None:
                    raise TpdbSyntaxError("unterminated COMMENT section", line, col)
                depth += {"(": 1, ")": -1}.get(lex, 0)
                i += 1
        elif name == "RULES":
            i = _parse_rules(lexemes, i, at, strict, weak)
        elif name == "VAR":
            raise TpdbSyntaxError("VAR section not allowed in string rewriting", line, col)
        else:
            raise TpdbSyntaxError(f"unknown section {name!r}", line, col)
    return RelProblem(tuple(strict), tuple(weak))


def _parse_rules(lexemes, i, at, strict, weak) -> int:
    lhs: list[str] = []
    rhs: list[str] = []
    arrow = None
    while True:
        lex, line, col = at(i)
        if lex is None:
            raise TpdbSyntaxError("unterminated RULES section", line, col)
        i += 1
        if lex in (",", ")"):
            if arrow is None:
                if lhs or lex == ",":
                    raise TpdbSyntaxError("rule without arrow", line, col)
            else:
                (strict if arrow == "->" else weak).append(Rule(tuple(lhs), tuple(rhs)))
            if lex == ")":
                return i
            lhs, rhs, arrow = [], [], None
        elif lex in ("->", "->="):
            if arrow is not None:
                raise TpdbSyntaxError("second arrow in rule", line, col)
            arrow = lex
        elif lex == "(":
            raise TpdbSyntaxError("unexpected '(' in RULES", line, col)
        else:
            (lhs if arrow is None else rhs).append(lex)


def render_rule(rule: Rule, arrow: str = "->") -> str:
    parts = [" ".join(token(c) for c in rule.lhs), arrow, " ".join(token(c) for c in rule.rhs)]
    return " ".join(p for p in parts if p)


def render_tpdb(p: RelProblem) -> str:
    rules = [render_rule(r, "->") for r in p.strict] + [render_rule(r, "->=") for r in p.weak]
    return "(RULES " + ", ".join(rules) + ")"
