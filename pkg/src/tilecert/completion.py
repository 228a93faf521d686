"""Least-fixpoint completion of shift automata under closure obligations.

Obligations come in four shapes (``kind``):

* ``CC``     ``(z) lhs y -> (z) rhs y`` for every right context ``y`` of
             length k-1 in tiles(Σ*▷*)
* ``FORW``   ``(z) l1 ▷^m -> (z) r ▷^m``, suffix extension, no context
* ``BACKW``  ``◁^(k-1) l2 y -> ◁^(k-1) r y``, anchored at the state ◁^(k-1)
* ``CCLOOP`` ``(z) x ▷^(k-1) ◁^(k-1) y e -> (z) r e``, bridging two words
             across the loop path of the ROC automaton
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .automaton import ShiftAutomaton, State
from .errors import StepTimeout, TileBudgetExceeded, WidthUnsupported
from .srs import LEFT, RIGHT, RelProblem, Rule, Word, word_key

RFC = "RFC"
ROC = "ROC"
KINDS = ("CC", "FORW", "BACKW", "CCLOOP")


@dataclass(frozen=True)
class ClosureRule:
    kind: str
    lhs: Word
    rhs: Word
    k: int

    @property
    def sort_key(self):
        return (KINDS.index(self.kind), word_key(self.lhs), word_key(self.rhs))

    def __repr__(self) -> str:
        from .srs import show_word

        return f"{self.kind}[{show_word(self.lhs) or 'ε'} -> {show_word(self.rhs) or 'ε'}]"


@dataclass(frozen=True)
class CompletionResult:
    automaton: ShiftAutomaton
    rounds: int
    tile_count: int


def _check_mode(k: int, mode: str) -> None:
    if mode not in (RFC, ROC):
        raise ValueError(f"unknown closure mode {mode!r}")
    if k < 1:
        raise WidthUnsupported("tile width must be at least 1")
    if mode == ROC and k < 2:
        raise WidthUnsupported("overlap-closure tiling needs width at least 2")


def forw_exponent(k: int) -> int:
    return max(1, k - 1)


def closure_rules(p: RelProblem, k: int, mode: str) -> list[ClosureRule]:
    _check_mode(k, mode)
    m = forw_exponent(k)
    ends = (RIGHT,) * m
    out = set()
    for rule in p.rules:
        l, r = rule.lhs, rule.rhs
        out.add(ClosureRule("CC", l, r, k))
        for i in range(1, len(l)):
            out.add(ClosureRule("FORW", l[:i] + ends, r + ends, k))
        if mode == ROC:
            lefts = (LEFT,) * (k - 1)
            rights = (RIGHT,) * (k - 1)
            for i in range(1, len(l)):
                out.add(ClosureRule("BACKW", lefts + l[i:], lefts + r, k))
            for i in range(1, len(l)):
                for j in range(i, len(l)):
                    out.add(ClosureRule("CCLOOP", l[:i] + rights + lefts + l[j:], r, k))
    return sorted(out, key=lambda c: c.sort_key)


def initial_automaton(p: RelProblem, k: int, mode: str) -> ShiftAutomaton:
    """Automaton for btiles_k(rhs(R)); plus the ▷→◁ loop path in ROC mode."""
    _check_mode(k, mode)
    a = ShiftAutomaton(k)
    ends = (RIGHT,) * (k - 1)
    for rule in p.rules:
        a._add_path(a.initial, rule.rhs + ends)
    if k == 1:
        # k=1 words carry no markers; the ▷ loop gives suffix-extension obligations a place to anchor
        a._add_edge((), RIGHT)
    if mode == ROC:
        a._add_path(ends, (LEFT,) * (k - 1))
    return a


class _Completer:
    def __init__(self, a: ShiftAutomaton, tile_cap: Optional[int], deadline: Optional[float],
                 early_cut: bool):
        self.a = a
        self.k = a.k
        self.tile_cap = tile_cap
        self.deadline = deadline
        self.early_cut = early_cut
        self.memo: dict = {}

    def has_completion(self, s: State, n: int, after_end: bool) -> bool:
        if n == 0:
            return True
        key = (s, n, after_end)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        found = False
        for c, nxt in self.a.successors(s).items():
            if c is LEFT or (after_end and c is not RIGHT):
                continue
            if self.has_completion(nxt, n - 1, after_end or c is RIGHT):
                found = True
                break
        self.memo[key] = found
        return found

    def joint(self, qs: State, qr: State, n: int, after_end: bool) -> int:
        # walk contexts from the redex end qs while forcing the same letters from qr
        if n == 0 or qs == qr:
            return 0
        a = self.a
        added = 0
        for c, nxt in list(a.successors(qs).items()):
            if c is LEFT or (after_end and c is not RIGHT):
                continue
            ae = after_end or c is RIGHT
            if not self.has_completion(nxt, n - 1, ae):
                continue
            if a._add_edge(qr, c):
                added += 1
            added += self.joint(nxt, a._delta[qr][c], n - 1, ae)
        return added

    def apply(self, rule: ClosureRule, z: State) -> int:
        a = self.a
        lhs, rhs = rule.lhs, rule.rhs
        if rule.kind == "BACKW":
            lhs, rhs = lhs[self.k - 1:], rhs[self.k - 1:]
        q = a.trace(z, lhs)
        if q is None:
            return 0
        if rule.kind == "FORW":
            return a._add_path(z, rhs)
        n = self.k - 1
        if not self.has_completion(q, n, False):
            return 0
        if self.early_cut:
            added = a._add_path(z, rhs)
            return added + self.joint(q, a.trace(z, rhs), n, False)
        added = 0
        for y in list(a.iter_right_contexts(q, n)):
            added += a._add_path(z, rhs + y)
        return added

    def check_budget(self) -> None:
        if self.tile_cap is not None and self.a.tile_count > self.tile_cap:
            raise TileBudgetExceeded(self.tile_cap)
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise StepTimeout("completion ran past its deadline")


def complete(A: ShiftAutomaton, rules: Sequence[ClosureRule], *, tile_cap: Optional[int] = None,
             deadline: Optional[float] = None, early_cut: bool = True,
             rng: Optional[random.Random] = None) -> CompletionResult:
    """Complete a private copy of ``A`` until every obligation is satisfied.

    Work is done in rounds over all (obligation, start state) pairs, in
    canonical order or shuffled by ``rng``; a round that adds no edge ends
    the loop.
    """
    a = A.copy()
    worker = _Completer(a, tile_cap, deadline, early_cut)
    worker.check_budget()
    anchor = (LEFT,) * (a.k - 1)
    rounds = 0
    while True:
        worker.memo = {}
        items = []
        states = list(a._delta)
        for rule in rules:
            if rule.kind == "BACKW":
                if anchor in a._delta:
                    items.append((rule, anchor))
            else:
                items.extend((rule, z) for z in states)
        if rng is not None:
            rng.shuffle(items)
        rounds += 1
        added = 0
        for rule, z in items:
            added += worker.apply(rule, z)
            worker.check_budget()
        if not added:
            break
    return CompletionResult(a, rounds, a.tile_count)


def default_tile_cap(p: RelProblem, k: int) -> int:
    return 2 * (len(p.alphabet) + 2) ** k


def completed_automaton(p: RelProblem, k: int, mode: str, *, tile_cap: Optional[int] = None,
                        deadline: Optional[float] = None, early_cut: bool = True,
                        rng: Optional[random.Random] = None) -> CompletionResult:
    """Initial automaton for ``p`` completed under its closure obligations."""
    if tile_cap is None:
        tile_cap = default_tile_cap(p, k)
    start = initial_automaton(p, k, mode)
    return complete(start, closure_rules(p, k, mode), tile_cap=tile_cap, deadline=deadline,
                    early_cut=early_cut, rng=rng)
