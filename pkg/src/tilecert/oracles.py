"""Bounded brute-force enumerations of reachability sets, RFC, ROC and OC.

These are ground truth for the automaton over-approximations; they are
deliberately naive and never share code with the completion engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .srs import Rule, Word, rewrite_steps


@dataclass(frozen=True)
class EnumBounds:
    max_length: int = 8
    max_rounds: int = 50
    max_size: int = 20000

    def __post_init__(self):
        if min(self.max_length, self.max_rounds, self.max_size) <= 0:
            raise ValueError("enumeration bounds must be positive")


class EnumResult(frozenset):
    """A frozenset of results that also records whether a bound tripped."""

    truncated: bool

    def __new__(cls, items=(), truncated=False):
        obj = super().__new__(cls, items)
        obj.truncated = truncated
        return obj


def _fixpoint(seeds: Iterable, derive, fits, b: EnumBounds) -> EnumResult:
    found = set()
    truncated = False
    frontier = []
    for s in seeds:
        if not fits(s):
            truncated = True
        elif s not in found:
            found.add(s)
            frontier.append(s)
    for _ in range(b.max_rounds):
        if not frontier:
            return EnumResult(found, truncated)
        new = []
        for item in derive(frontier, found):
            if not fits(item):
                truncated = True
                continue
            if item not in found:
                if len(found) >= b.max_size:
                    return EnumResult(found, True)
                found.add(item)
                new.append(item)
        frontier = new
    return EnumResult(found, truncated or bool(frontier))


def reach_enum(rules: Iterable[Rule], seeds: Iterable[Word], b: EnumBounds) -> EnumResult:
    rules = list(rules)

    def derive(frontier, _found):
        for w in frontier:
            yield from rewrite_steps(rules, w)

    return _fixpoint((tuple(s) for s in seeds), derive, lambda w: len(w) <= b.max_length, b)


def _splits(lhs: Word):
    """Pairs (l1, l2) with l1 l2 == lhs and both non-empty."""
    return [(lhs[:i], lhs[i:]) for i in range(1, len(lhs))]


def rfc_enum(rules: Iterable[Rule], b: EnumBounds) -> EnumResult:
    rules = list(rules)

    def derive(frontier, found):
        for w in frontier:
            yield from rewrite_steps(rules, w)
            for rule in rules:
                for l1, _ in _splits(rule.lhs):
                    if len(l1) <= len(w) and w[len(w) - len(l1):] == l1:
                        yield w[:len(w) - len(l1)] + rule.rhs

    return _fixpoint((r.rhs for r in rules), derive, lambda w: len(w) <= b.max_length, b)


def roc_enum(rules: Iterable[Rule], b: EnumBounds) -> EnumResult:
    """Least set closed under the five left-recursive ROC inference rules."""
    rules = list(rules)
    # (x, w, y) splits of each lhs with x, y non-empty
    bridges = []
    for rule in rules:
        l = rule.lhs
        for i in range(1, len(l)):
            for j in range(i, len(l)):
                bridges.append((l[:i], l[j:], rule.rhs))

    def one_premise(w):
        yield from rewrite_steps(rules, w)
        n = len(w)
        for rule in rules:
            for x, u in _splits(rule.lhs):
                # suffix: t x in S, x u -> v gives t v (t non-empty)
                if len(x) < n and w[n - len(x):] == x:
                    yield w[:n - len(x)] + rule.rhs
            for u, x in _splits(rule.lhs):
                # prefix: x t in S, u x -> v gives v t (t non-empty)
                if len(x) < n and w[:len(x)] == x:
                    yield rule.rhs + w[len(x):]

    def derive(frontier, found):
        for w in frontier:
            yield from one_premise(w)
        # bridging needs pairs with at least one new member
        everything = list(found)
        for x, y, z in bridges:
            lefts = [w for w in everything if len(w) > len(x) and w[len(w) - len(x):] == x]
            rights = [w for w in everything if len(w) > len(y) and w[:len(y)] == y]
            new = set(frontier)
            for tx in lefts:
                for yv in rights:
                    if tx in new or yv in new:
                        yield tx[:len(tx) - len(x)] + z + yv[len(y):]

    rhs = [r.rhs for r in rules]
    return _fixpoint(rhs, derive, lambda w: len(w) <= b.max_length, b)


def oc_pairs_enum(rules: Iterable[Rule], b: EnumBounds) -> EnumResult:
    """Bounded overlap closures, built by overlapping closures with closures."""
    rules = list(rules)

    def combine(c1, c2):
        s, rhs1 = c1
        u2, v2 = c2
        out = []
        # (2): (s, t x), (x u, v) with t, x, u non-empty gives (s u, t v)
        for i in range(1, len(rhs1)):
            t, x = rhs1[:i], rhs1[i:]
            if len(x) < len(u2) and u2[:len(x)] == x:
                out.append((s + u2[len(x):], t + v2))
        # (2'): (s, x t), (u x, v) gives (u s, v t)
        for i in range(1, len(rhs1)):
            x, t = rhs1[:i], rhs1[i:]
            if len(x) < len(u2) and u2[len(u2) - len(x):] == x:
                out.append((u2[:len(u2) - len(x)] + s, v2 + t))
        # (3): (s, t u t'), (u, v) gives (s, t v t')
        for i in range(len(rhs1) - len(u2) + 1):
            if rhs1[i:i + len(u2)] == u2:
                out.append((s, rhs1[:i] + v2 + rhs1[i + len(u2):]))
        # (3'): (u, v), (s v s', t) gives (s u s', t); here c2 plays (u, v), c1 plays (s v s', t)
        for i in range(len(s) - len(v2) + 1):
            if s[i:i + len(v2)] == v2:
                out.append((s[:i] + u2 + s[i + len(v2):], rhs1))
        return out

    def derive(frontier, found):
        everything = list(found)
        new = set(frontier)
        for c1 in everything:
            for c2 in everything:
                if c1 in new or c2 in new:
                    yield from combine(c1, c2)

    def fits(pair):
        return len(pair[0]) <= b.max_length and len(pair[1]) <= b.max_length

    return _fixpoint(((r.lhs, r.rhs) for r in rules), derive, fits, b)
