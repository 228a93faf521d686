"""Strategy language, proof traces, replay and the portfolio prover."""

from __future__ import annotations

import multiprocessing as mp
import os
import re
import time
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from . import transforms as tx
from .errors import StrategySyntaxError, TilecertError
from .srs import RelProblem, render_rule, size_triple, token
from .transforms import ProofStep

YES = "YES"
MAYBE = "MAYBE"

TILING = {"trfc": tx.trfc, "trfcu": tx.trfcu, "troc": tx.troc, "trocu": tx.trocu}
MIN_WIDTH = {"trfc": 1, "trfcu": 1, "troc": 2, "trocu": 2}
NAMES = tuple(TILING) + ("mirror", "dp", "weights")


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple[int, ...] = ()

    def __str__(self) -> str:
        return ":".join((self.name,) + tuple(map(str, self.args)))


@dataclass(frozen=True)
class Repeat:
    body: tuple

    def __str__(self) -> str:
        return "repeat(" + "; ".join(map(str, self.body)) + ")"


Node = Union[Atom, Repeat]


@dataclass(frozen=True)
class Strategy:
    nodes: tuple

    def __str__(self) -> str:
        return "; ".join(map(str, self.nodes))


@dataclass(frozen=True)
class Budget:
    timeout: Optional[float] = None
    tile_cap: Optional[int] = None
    max_steps: int = 64


# --- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(repeat)\s*\(|(\))|(;)|([A-Za-z]+(?:\s*:\s*-?\d+)*)|(\S))")


def parse_strategy(text: str) -> Strategy:
    """Parse ``atom; atom; repeat(atom; ...)`` with ``atom = name(:int)*``."""
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if m.group(5) is not None:
            raise StrategySyntaxError(f"unexpected {m.group(5)!r} at offset {m.start(5)}")
        pos = m.end()
        if m.group(1):
            tokens.append(("(", None))
        elif m.group(2):
            tokens.append((")", None))
        elif m.group(3):
            tokens.append((";", None))
        elif m.group(4):
            tokens.append(("atom", m.group(4)))
    if text[pos:].strip():
        raise StrategySyntaxError(f"trailing input {text[pos:]!r}")

    def seq(i, depth):
        nodes = []
        expect_item = True
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == ")":
                if depth == 0:
                    raise StrategySyntaxError("unbalanced ')'")
                break
            if kind == ";":
                if expect_item:
                    raise StrategySyntaxError("empty strategy item")
                expect_item = True
                i += 1
                continue
            if not expect_item:
                raise StrategySyntaxError("items must be separated by ';'")
            if kind == "(":
                body, i = seq(i + 1, depth + 1)
                if i >= len(tokens) or tokens[i][0] != ")":
                    raise StrategySyntaxError("missing ')' after repeat body")
                if not body:
                    raise StrategySyntaxError("empty repeat body")
                nodes.append(Repeat(tuple(body)))
            else:
                nodes.append(_atom(val))
            i += 1
            expect_item = False
        if expect_item and nodes:
            raise StrategySyntaxError("strategy ends with ';'")
        return nodes, i

    nodes, i = seq(0, 0)
    if i != len(tokens):
        raise StrategySyntaxError("unbalanced ')'")
    if not nodes:
        raise StrategySyntaxError("empty strategy")
    return Strategy(tuple(nodes))


def _atom(text: str) -> Atom:
    parts = [s.strip() for s in text.split(":")]
    name, args = parts[0].lower(), tuple(int(s) for s in parts[1:])
    if name not in NAMES:
        raise StrategySyntaxError(f"unknown transform {parts[0]!r}")
    if name in TILING:
        if not args:
            raise StrategySyntaxError(f"{name} needs a width, e.g. {name}:3")
        bad = [k for k in args if k < MIN_WIDTH[name]]
        if bad:
            raise StrategySyntaxError(f"{name} needs width >= {MIN_WIDTH[name]}, got {bad[0]}")
    elif name == "weights":
        if len(args) > 1 or (args and args[0] < 1):
            raise StrategySyntaxError("weights takes at most one positive cap")
    elif args:
        raise StrategySyntaxError(f"{name} takes no parameters")
    return Atom(name, args)


# --- traces ------------------------------------------------------------------

@dataclass(frozen=True)
class ProofTrace:
    initial: RelProblem
    steps: tuple[ProofStep, ...]
    final: RelProblem
    verdict: str
    note: str = ""
    strategy: str = ""

    @property
    def sizes(self) -> list[tuple[int, int, int]]:
        return [size_triple(self.initial)] + [s.after for s in self.steps]


class _Stop(Exception):
    def __init__(self, note: str):
        self.note = note


class _Runner:
    def __init__(self, p: RelProblem, budget: Budget):
        self.cur = p
        self.steps: list[ProofStep] = []
        self.budget = budget
        self.deadline = None if budget.timeout is None else time.monotonic() + budget.timeout

    def _guard(self):
        if not self.cur.strict:
            raise _Stop("")
        if len(self.steps) >= self.budget.max_steps:
            raise _Stop(f"step limit {self.budget.max_steps} reached")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Stop("time budget exhausted")

    def _record(self, out: RelProblem, step: ProofStep):
        self.cur = out
        self.steps.append(step)

    def atom(self, a: Atom):
        self._guard()
        if a.name == "mirror":
            self._record(*tx.mirror(self.cur))
        elif a.name == "dp":
            self._record(*tx.dp(self.cur))
        elif a.name == "weights":
            cap = a.args[0] if a.args else 64
            out, step = tx.weight_removal(self.cur, cap)
            self._record(out, replace(step, params={"cap": cap}))
        else:
            self.tiling(a)

    def tiling(self, a: Atom):
        fn = TILING[a.name]
        untile = a.name.endswith("u")
        last_error = None
        for k in a.args:
            self._guard()
            try:
                out, step = fn(self.cur, k, tile_cap=self.budget.tile_cap, deadline=self.deadline)
            except TilecertError as e:
                last_error = e
                continue
            # with several widths, an untiling step must remove something to be taken
            if len(a.args) == 1 or not untile or out != self.cur:
                self._record(out, step)
                return
        if len(a.args) == 1 and last_error is not None:
            raise last_error

    def seq(self, nodes):
        for node in nodes:
            if isinstance(node, Atom):
                self.atom(node)
            else:
                self.repeat(node)

    def repeat(self, r: Repeat):
        while True:
            before = size_triple(self.cur)
            self.seq(r.body)
            after = size_triple(self.cur)
            if not (after[0] < before[0] or (after[0] == before[0] and after[1] < before[1])):
                return


def run_strategy(p: RelProblem, s: Union[Strategy, str], budget: Budget = Budget()) -> ProofTrace:
    """Apply ``s`` to ``p``; errors and exhausted budgets end the run with MAYBE."""
    if isinstance(s, str):
        s = parse_strategy(s)
    run = _Runner(p, budget)
    note = ""
    try:
        run.seq(s.nodes)
    except _Stop as stop:
        note = stop.note
    except TilecertError as e:
        note = f"{type(e).__name__}: {e}"
    verdict = YES if not run.cur.strict else MAYBE
    return ProofTrace(p, tuple(run.steps), run.cur, verdict, note if verdict == MAYBE else "",
                      str(s))


# --- replay --------------------------------------------------------------------

@dataclass(frozen=True)
class ReplayReport:
    ok: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _resolve_weights(p: RelProblem, cert: dict) -> Optional[dict]:
    by_token = {}
    for c in p.alphabet:
        by_token[token(c)] = c
    w = {}
    for key, v in cert.items():
        if key in p.alphabet:
            w[key] = v
        elif key in by_token:
            w[by_token[key]] = v
        else:
            return None
        if not isinstance(v, int) or isinstance(v, bool):
            return None
    return w


def replay_step(cur: RelProblem, step: ProofStep) -> tuple[Optional[RelProblem], str]:
    if step.before != size_triple(cur):
        return None, "input size does not match"
    name = step.name
    if name == "WEIGHTS":
        w = _resolve_weights(cur, step.certificate.get("weights", {}))
        if w is None:
            return None, "weight certificate names unknown letters"
        out, removed = tx.apply_weights(cur, w)
        if not tx.validate_weights(cur, removed, w):
            return None, "weight certificate does not validate"
    elif name == "MIRROR":
        out, _ = tx.mirror(cur)
    elif name == "DP":
        out, _ = tx.dp(cur)
    elif name.lower() in TILING:
        k = step.params.get("k")
        tiles = step.certificate.get("tiles")
        if not isinstance(k, int):
            return None, "tiling step lacks a width"
        cap = tiles if isinstance(tiles, int) else None
        try:
            out, redo = TILING[name.lower()](cur, k, tile_cap=cap)
        except TilecertError as e:
            return None, f"re-execution failed: {e}"
        if tiles is not None and redo.certificate["tiles"] != tiles:
            return None, "tile count does not match"
    else:
        return None, f"unknown step {name!r}"
    if step.after != size_triple(out):
        return None, "output size does not match"
    return out, ""


def same_problem(a: RelProblem, b: RelProblem) -> bool:
    """Equality up to letter representation (tiles versus their TPDB tokens)."""
    if a == b:
        return True
    view = lambda p: ({render_rule(r) for r in p.strict}, {render_rule(r) for r in p.weak})
    return view(a) == view(b)


def replay(trace: ProofTrace) -> ReplayReport:
    """Re-execute every step; the first mismatch is reported."""
    cur = trace.initial
    try:
        for i, step in enumerate(trace.steps):
            cur, reason = replay_step(cur, step)
            if cur is None:
                return ReplayReport(False, i, reason)
    except TilecertError as e:
        return ReplayReport(False, i, str(e))
    n = len(trace.steps)
    if not same_problem(cur, trace.final):
        return ReplayReport(False, n, "final problem differs")
    if (trace.verdict == YES) != (not cur.strict):
        return ReplayReport(False, n, "verdict does not match final problem")
    return ReplayReport(True)


# --- portfolio -------------------------------------------------------------------

STANDARD_PORTFOLIO = (
    "repeat(weights; trfcu:2; trfcu:2; mirror)",
    "repeat(weights; trfcu:3:5; trfcu:3:5; mirror)",
    "trfc:2; repeat(weights)",
    "trfc:3; repeat(weights)",
    "mirror; trfc:3; repeat(weights)",
    "trfc:5; repeat(weights)",
    "dp; repeat(weights); troc:3; repeat(weights)",
)

RELATIVE_PORTFOLIO = (
    "repeat(weights; trocu:2:3:5:8; mirror)",
    "troc:2; repeat(weights)",
    "troc:3; repeat(weights)",
    "mirror; troc:3; repeat(weights)",
    "troc:5; repeat(weights)",
    "troc:8; repeat(weights)",
)


def portfolio(p: RelProblem) -> tuple[str, ...]:
    return STANDARD_PORTFOLIO if p.is_standard else RELATIVE_PORTFOLIO


def _worker(p, text, budget, queue, idx):
    try:
        queue.put((idx, run_strategy(p, text, budget)))
    except BaseException as e:  # never leave the parent waiting
        queue.put((idx, ProofTrace(p, (), p, MAYBE, f"worker failed: {e!r}", text)))


def _best(traces):
    return min(traces, key=lambda t: (t[1].final.size()[:2], t[0]))[1]


def auto_prove(p: RelProblem, budget: Budget = Budget(timeout=60.0), *,
               strategies: Optional[tuple[str, ...]] = None,
               jobs: Optional[int] = None) -> ProofTrace:
    """Race the portfolio; the first YES wins, otherwise the most reduced MAYBE."""
    strategies = tuple(strategies or portfolio(p))
    if not p.strict:
        return ProofTrace(p, (), p, YES, "", "")
    jobs = jobs or max(2, min(len(strategies), os.cpu_count() or 2))
    ctx = mp.get_context("fork" if "fork" in mp.get_all_start_methods() else "spawn")
    queue = ctx.Queue()
    pending = list(enumerate(strategies))
    running: dict[int, mp.Process] = {}
    results: list[tuple[int, ProofTrace]] = []
    hard_stop = None if budget.timeout is None else time.monotonic() + budget.timeout + 5.0
    try:
        while pending or running:
            while pending and len(running) < jobs:
                idx, text = pending.pop(0)
                proc = ctx.Process(target=_worker, args=(p, text, budget, queue, idx), daemon=True)
                proc.start()
                running[idx] = proc
            wait = 0.5 if hard_stop is None else max(0.05, min(0.5, hard_stop - time.monotonic()))
            try:
                idx, trace = queue.get(timeout=wait)
            except Exception:
                for idx2, proc in list(running.items()):
                    if not proc.is_alive() and proc.exitcode not in (None, 0):
                        running.pop(idx2)
                if hard_stop is not None and time.monotonic() > hard_stop:
                    break
                continue
            running.pop(idx, None)
            results.append((idx, trace))
            if trace.verdict == YES:
                return trace
    finally:
        for proc in running.values():
            proc.terminate()
        for proc in running.values():
            proc.join(timeout=1.0)
        queue.close()
    if not results:
        return ProofTrace(p, (), p, MAYBE, "no strategy finished within the budget", "")
    return _best(results)
