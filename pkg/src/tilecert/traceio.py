"""Text and JSON renderings of proof traces."""

from __future__ import annotations

import json

from .srs import format_size, letter_key, parse_tpdb, plain, render_tpdb, token
from .strategy import ProofTrace
from .transforms import ProofStep


def step_header(step: ProofStep) -> str:
    name = step.name
    if "k" in step.params:
        name += f":{step.params['k']}"
    return f"STEP {name} {format_size(step.before)} -> {format_size(step.after)}"


def to_text(trace: ProofTrace) -> str:
    lines = [f"PROBLEM {format_size(trace.initial.size())}"]
    for step in trace.steps:
        lines.append(step_header(step))
        if "tiles" in step.certificate:
            lines.append(f"  TILES {step.certificate['tiles']}")
        weights = step.certificate.get("weights", {})
        for c in sorted(weights, key=letter_key):
            if weights[c]:
                lines.append(f"  WEIGHT {plain(c)} {weights[c]}")
    lines.append(f"VERDICT {trace.verdict}")
    if trace.note:
        lines.append(f"NOTE {trace.note}")
    return "\n".join(lines) + "\n"


def _certificate_json(cert: dict) -> dict:
    out = dict(cert)
    if "weights" in cert:
        w = cert["weights"]
        out["weights"] = {token(c): w[c] for c in sorted(w, key=letter_key) if w[c]}
    return out


def to_json_obj(trace: ProofTrace) -> dict:
    return {
        "problem": render_tpdb(trace.initial),
        "strategy": trace.strategy,
        "steps": [
            {
                "name": s.name,
                "params": dict(s.params),
                "sizes": {"before": list(s.before), "after": list(s.after)},
                "certificate": _certificate_json(s.certificate),
            }
            for s in trace.steps
        ],
        "final": render_tpdb(trace.final),
        "verdict": trace.verdict,
        "note": trace.note,
    }


def to_json(trace: ProofTrace) -> str:
    return json.dumps(to_json_obj(trace), indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> ProofTrace:
    """Load a JSON trace; weight keys stay tokens and are resolved during replay.

    The final problem is parsed from TPDB, so its letters are plain tokens;
    replay compares it by rendering rather than by letter identity.
    """
    obj = json.loads(text)
    steps = tuple(
        ProofStep(
            s["name"],
            dict(s.get("params", {})),
            tuple(s["sizes"]["before"]),
            tuple(s["sizes"]["after"]),
            dict(s.get("certificate", {})),
        )
        for s in obj["steps"]
    )
    initial = parse_tpdb(obj["problem"])
    final = parse_tpdb(obj.get("final", obj["problem"]))
    return ProofTrace(initial, steps, final, obj["verdict"], obj.get("note", ""),
                      obj.get("strategy", ""))
