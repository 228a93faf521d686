"""Problem-to-problem transformations, each returning the new problem and a proof step."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np
from scipy import optimize, sparse

from .completion import RFC, ROC, completed_automaton
from .errors import Collapsing, NotStandard
from .labelling import btiled_rules, has_covered_redex
from .srs import Letter, Marked, RelProblem, Rule, letter_key, size_triple

STEP_NAMES = ("TRFC", "TRFCU", "TROC", "TROCU", "MIRROR", "DP", "WEIGHTS")

WeightMap = dict  # Letter -> non-negative int; absent letters weigh 0


@dataclass(frozen=True)
class ProofStep:
    name: str
    params: dict
    before: tuple[int, int, int]
    after: tuple[int, int, int]
    certificate: dict = field(default_factory=dict)


def _tiling(p: RelProblem, k: int, mode: str, name: str, untile: bool,
            tile_cap: Optional[int], deadline: Optional[float]):
    res = completed_automaton(p, k, mode, tile_cap=tile_cap, deadline=deadline)
    a = res.automaton
    if untile:
        out = RelProblem(
            tuple(r for r in p.strict if has_covered_redex(a, r.lhs)),
            tuple(r for r in p.weak if has_covered_redex(a, r.lhs)),
        )
    else:
        out = btiled_rules(a, p).to_problem()
    cert = {"tiles": res.tile_count, "rounds": res.rounds}
    return out, ProofStep(name, {"k": k}, size_triple(p), size_triple(out), cert)


def trfc(p: RelProblem, k: int, *, tile_cap=None, deadline=None):
    if not p.is_standard:
        raise NotStandard("forward-closure tiling is unsound for relative problems")
    return _tiling(p, k, RFC, "TRFC", False, tile_cap, deadline)


def trfcu(p: RelProblem, k: int, *, tile_cap=None, deadline=None):
    if not p.is_standard:
        raise NotStandard("forward-closure tiling is unsound for relative problems")
    return _tiling(p, k, RFC, "TRFCU", True, tile_cap, deadline)


def troc(p: RelProblem, k: int, *, tile_cap=None, deadline=None):
    return _tiling(p, k, ROC, "TROC", False, tile_cap, deadline)


def trocu(p: RelProblem, k: int, *, tile_cap=None, deadline=None):
    return _tiling(p, k, ROC, "TROCU", True, tile_cap, deadline)


def mirror(p: RelProblem):
    out = RelProblem(tuple(r.reversed() for r in p.strict), tuple(r.reversed() for r in p.weak))
    return out, ProofStep("MIRROR", {}, size_triple(p), size_triple(out))


def dp(p: RelProblem):
    """Dependency pairs with the rightmost letter as the top symbol."""
    if not p.is_standard:
        raise NotStandard("dependency pairs need a standard problem")
    if any(not r.rhs for r in p.strict):
        raise Collapsing("dependency pairs need non-collapsing rules")
    defined = {r.lhs[-1] for r in p.strict if r.lhs}
    pairs = []
    for r in p.strict:
        if not r.lhs:
            continue
        top = r.lhs[:-1] + (Marked(r.lhs[-1]),)
        for i in range(1, len(r.rhs) + 1):
            if r.rhs[i - 1] in defined:
                pairs.append(Rule(top, r.rhs[:i - 1] + (Marked(r.rhs[i - 1]),)))
    out = RelProblem(tuple(pairs), p.strict)
    return out, ProofStep("DP", {}, size_triple(p), size_triple(out))


# --- weights ---------------------------------------------------------------

def weight(w: Mapping[Letter, int], word) -> int:
    return sum(w.get(c, 0) for c in word)


def validate_weights(p: RelProblem, removed, w: Mapping[Letter, int]) -> bool:
    if any(v < 0 for v in w.values()):
        return False
    for r in p.rules:
        if weight(w, r.lhs) < weight(w, r.rhs):
            return False
    return all(weight(w, r.lhs) > weight(w, r.rhs) for r in removed)


def apply_weights(p: RelProblem, w: Mapping[Letter, int]) -> tuple[RelProblem, tuple[Rule, ...]]:
    """Drop every strictly decreasing rule; the caller checks the weak decrease."""
    keep = lambda r: weight(w, r.lhs) == weight(w, r.rhs)
    removed = tuple(r for r in p.rules if not keep(r))
    return RelProblem(tuple(filter(keep, p.strict)), tuple(filter(keep, p.weak))), removed


def _difference_matrix(rules, index):
    # row i: weight(lhs_i) - weight(rhs_i) as a linear form
    rows, cols, vals = [], [], []
    for i, r in enumerate(rules):
        counts: dict[int, int] = {}
        for c in r.lhs:
            counts[index[c]] = counts.get(index[c], 0) + 1
        for c in r.rhs:
            counts[index[c]] = counts.get(index[c], 0) - 1
        for j, v in counts.items():
            if v:
                rows.append(i)
                cols.append(j)
                vals.append(v)
    return sparse.csr_matrix((vals, (rows, cols)), shape=(len(rules), len(index)))


def _max_strict_set(D, n_letters) -> np.ndarray:
    """Largest set of rules that can decrease strictly together (unique by additivity)."""
    m = D.shape[0]
    # variables: weights (n), slack s_i in [0, 1]; maximise sum s with D w >= s
    c = np.concatenate([np.zeros(n_letters), -np.ones(m)])
    A = sparse.hstack([-D, sparse.identity(m)]).tocsr()
    bounds = [(0, None)] * n_letters + [(0, 1)] * m
    res = optimize.linprog(c, A_ub=A, b_ub=np.zeros(m), bounds=bounds, method="highs")
    if res.status != 0:
        return np.zeros(m, dtype=bool)
    return res.x[n_letters:] > 0.5


def _integer_weights(D, strict_mask, n_letters, cap) -> Optional[np.ndarray]:
    m = D.shape[0]
    lower = strict_mask.astype(float)
    # smallest rational weights with D w >= 1 on the strict set, >= 0 elsewhere
    res = optimize.linprog(np.ones(n_letters), A_ub=-D, b_ub=-lower,
                           bounds=[(0, None)] * n_letters, method="highs")
    if res.status == 0:
        fracs = [Fraction(v).limit_denominator(1000) if v > 1e-9 else Fraction(0) for v in res.x]
        scale = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        ints = np.array([int(f * scale) for f in fracs], dtype=np.int64)
        diffs = D @ ints
        if np.all(diffs >= lower) and (ints.max(initial=0) <= cap):
            return ints
    res = optimize.milp(np.ones(n_letters),
                        constraints=optimize.LinearConstraint(D, lb=lower, ub=np.inf),
                        integrality=np.ones(n_letters), bounds=optimize.Bounds(0, cap))
    if res.status != 0:
        return None
    ints = np.rint(res.x).astype(np.int64)
    return ints if np.all(D @ ints >= lower) else None


def find_weights(p: RelProblem, cap: int = 64) -> Optional[WeightMap]:
    """Integer weights making all rules weakly and as many as possible strictly decrease."""
    rules = p.rules
    letters = p.sorted_alphabet()
    if not rules:
        return None
    index = {c: j for j, c in enumerate(letters)}
    D = _difference_matrix(rules, index)
    mask = _max_strict_set(D, len(letters))
    while mask.any():
        ints = _integer_weights(D, mask, len(letters), cap)
        if ints is not None:
            return {c: int(v) for c, v in zip(letters, ints) if v}
        # the cap is too tight for the whole set: give up the last strict rule in canonical order
        mask[np.flatnonzero(mask)[-1]] = False
    return None


def weight_removal(p: RelProblem, cap: int = 64):
    w = find_weights(p, cap)
    if w is None:
        return p, ProofStep("WEIGHTS", {}, size_triple(p), size_triple(p), {"weights": {}})
    out, removed = apply_weights(p, w)
    assert validate_weights(p, removed, w)
    ordered = {c: w[c] for c in sorted(w, key=letter_key)}
    return out, ProofStep("WEIGHTS", {}, size_triple(p), size_triple(out), {"weights": ordered})
