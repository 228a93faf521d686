"""Property checks shared by the hypothesis suite and the acceptance gate.

Each check raises AssertionError on a violation and returns normally otherwise.
"""

import itertools
import random

from tilecert.completion import RFC, ROC, completed_automaton
from tilecert.labelling import btiled_rules
from tilecert.oracles import EnumBounds, rfc_enum, roc_enum
from tilecert.srs import RelProblem, Rule
from tilecert.strategy import replay, run_strategy
from tilecert.tiling import btiled, lang_member
from tilecert.traceio import from_json, to_json
from tilecert.transforms import apply_weights, find_weights, trfcu, trocu, validate_weights

ORACLE_BOUNDS = EnumBounds(max_length=7, max_rounds=8, max_size=3000)


def draw_instance(rng: random.Random):
    """Random (problem, k, mode) with |Σ| <= 3, <= 3 rules, sides <= 4, k in {1,2,3}."""
    relative = rng.random() < 0.5
    letters = "abc"[:rng.randint(1, 3)]
    rules = []
    for _ in range(rng.randint(1, 3)):
        lhs = tuple(rng.choice(letters) for _ in range(rng.randint(1, 4)))
        rhs = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
        rules.append(Rule(lhs, rhs))
    if relative:
        strict = [r for i, r in enumerate(rules) if i == 0 or rng.random() < 0.5]
        p = RelProblem(tuple(strict), tuple(r for r in rules if r not in strict))
        return p, rng.choice([2, 3]), ROC
    return RelProblem(tuple(rules)), rng.choice([1, 2, 3]), RFC


def oracle_words(p, mode):
    enum = rfc_enum if mode == RFC else roc_enum
    return sorted(enum(p.rules, ORACLE_BOUNDS), key=lambda w: (len(w), w))


def check_shift_property(p, k, mode):
    a = completed_automaton(p, k, mode).automaton
    assert a.check_shift_property() == []


def check_order_independence(p, k, mode, seed=0):
    ref = completed_automaton(p, k, mode).automaton
    shuffled = completed_automaton(p, k, mode, rng=random.Random(seed)).automaton
    assert shuffled == ref
    assert completed_automaton(p, k, mode, early_cut=False).automaton == ref


def check_oracle_in_lang(p, k, mode):
    T = completed_automaton(p, k, mode).automaton.tiles_of()
    for w in oracle_words(p, mode):
        assert lang_member(T, w), w


def check_simulation(p, k, mode, max_words=40):
    """Each step u -> v on a covered word is a labelled step btiled(u) -> btiled(v)."""
    a = completed_automaton(p, k, mode).automaton
    lab = btiled_rules(a, p)
    strict, weak = set(lab.strict), set(lab.strict) | set(lab.weak)
    T = a.tiles_of()
    for u in oracle_words(p, mode)[:max_words]:
        if not lang_member(T, u):
            continue
        bu = btiled(u, k)
        for rules, allowed in ((p.strict, strict), (p.weak, weak)):
            for r in rules:
                n = len(r.lhs)
                for i in range(len(u) - n + 1):
                    if u[i:i + n] != r.lhs:
                        continue
                    v = u[:i] + r.rhs + u[i + n:]
                    bv = btiled(v, k)
                    nl, nr = n + k - 1, len(r.rhs) + k - 1
                    assert Rule(tuple(bu[i:i + nl]), tuple(bv[i:i + nr])) in allowed
                    assert bu[:i] == bv[:i] and bu[i + nl:] == bv[i + nr:]


def check_untile_subset(p, k, mode):
    out, _ = (trfcu if mode == RFC else trocu)(p, k)
    assert set(out.strict) <= set(p.strict)
    assert set(out.weak) <= set(p.weak)


def check_weights(p, k, mode):
    labelled = btiled_rules(completed_automaton(p, k, mode).automaton, p).to_problem()
    for q in (p, labelled):
        w = find_weights(q)
        if w is None:
            continue
        _, removed = apply_weights(q, w)
        assert removed and validate_weights(q, removed, w)


def check_replay(p, k, mode, rng):
    if mode == RFC:
        pool = [f"trfc:{k}; weights", f"trfcu:{k}; mirror; trfcu:{k}", "dp; weights", "mirror; weights"]
    else:
        pool = [f"troc:{k}; weights", f"trocu:{k}; weights; mirror"]
    trace = run_strategy(p, rng.choice(pool))
    assert replay(trace)
    assert replay(from_json(to_json(trace)))


def embeds_loop(p: RelProblem, rule: Rule, max_len=7, depth=7) -> bool:
    """Bounded search for w ->+ x w y using ``rule`` at least once."""
    letters = sorted(p.alphabet)
    every = [(r, r == rule) for r in p.rules]
    for n in range(1, 4):
        for w in itertools.product(letters, repeat=n):
            frontier = {(w, False)}
            seen = set(frontier)
            for _ in range(depth):
                nxt = set()
                for u, used in frontier:
                    for r, hit in every:
                        m = len(r.lhs)
                        for i in range(len(u) - m + 1):
                            if u[i:i + m] != r.lhs:
                                continue
                            v = u[:i] + r.rhs + u[i + m:]
                            if len(v) > max_len:
                                continue
                            state = (v, used or hit)
                            if state[1] and any(v[j:j + n] == w for j in range(len(v) - n + 1)):
                                return True
                            if state not in seen:
                                seen.add(state)
                                nxt.add(state)
                frontier = nxt
    return False


def check_removal_sound(p, k, mode):
    if mode == RFC and k < 2:
        return
    out, _ = (trfcu if mode == RFC else trocu)(p, k)
    for r in set(p.strict) - set(out.strict):
        assert not embeds_loop(p, r), r
