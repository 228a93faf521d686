"""Semantic labelling by a completed shift automaton: the tiled system btiled_T(R)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .automaton import ShiftAutomaton
from .errors import MissingReductPath
from .srs import RelProblem, Rule, Word, show_word
from .tiling import tiled


@dataclass(frozen=True)
class LabelledProblem:
    strict: tuple[Rule, ...]
    weak: tuple[Rule, ...]
    k: int
    origin: dict = field(compare=False, repr=False)

    def to_problem(self) -> RelProblem:
        return RelProblem(self.strict, self.weak)


def _label_rule(A: ShiftAutomaton, rule: Rule, require_closed: bool) -> list[Rule]:
    k = A.k
    out = []
    for x in A.states:
        q = A.trace(x, rule.lhs)
        if q is None:
            continue
        for y in A.iter_right_contexts(q, k - 1):
            if A.trace(x, rule.rhs + y) is None:
                if not require_closed:
                    continue
                raise MissingReductPath(
                    f"no path for {show_word(x + rule.rhs + y)}; automaton is not closed")
            out.append(Rule(tiled(x + rule.lhs + y, k), tiled(x + rule.rhs + y, k)))
    return out


def btiled_rules(A: ShiftAutomaton, p: RelProblem, require_closed: bool = True) -> LabelledProblem:
    """Labelled rules along redex paths of ``A``.

    With ``require_closed=False`` the automaton may be an arbitrary tile set
    and rules whose reduct leaves it are dropped (intersection with T* x T*).
    """
    origin = {}
    strict, weak = [], []
    for rules, sink in ((p.strict, strict), (p.weak, weak)):
        for rule in rules:
            for lab in _label_rule(A, rule, require_closed):
                origin.setdefault(lab, rule)
                sink.append(lab)
    problem = RelProblem(tuple(strict), tuple(weak))
    return LabelledProblem(problem.strict, problem.weak, A.k, origin)


def has_covered_redex(A: ShiftAutomaton, lhs: Word) -> bool:
    for x in A.states:
        q = A.trace(x, lhs)
        if q is not None and A.has_right_context(q, A.k - 1):
            return True
    return False


def untile(rule: Rule, k: int) -> Rule:
    """Project a labelled rule back to the plain rule it came from."""
    def strip(tiles):
        return tuple(t.letters[-1] for t in tiles[:len(tiles) - (k - 1)])

    return Rule(strip(rule.lhs), strip(rule.rhs))
