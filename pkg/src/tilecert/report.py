"""Figure of the (rules, alphabet) size chain of a proof trace."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .srs import format_size  # noqa: E402
from .strategy import ProofTrace  # noqa: E402
from .traceio import step_header  # noqa: E402


def plot_sizes(trace: ProofTrace, path: str) -> None:
    sizes = trace.sizes
    xs = range(len(sizes))
    labels = ["input"] + [step_header(s).split()[1] for s in trace.steps]
    fig, ax = plt.subplots(figsize=(max(4.0, 1.1 * len(sizes)), 3.2))
    ax.plot(xs, [s[0] for s in sizes], marker="o", label="strict rules")
    ax.plot(xs, [s[1] for s in sizes], marker="s", label="weak rules")
    ax.plot(xs, [s[2] for s in sizes], marker="^", linestyle="--", label="letters")
    for x, s in zip(xs, sizes):
        ax.annotate(format_size(s), (x, s[0]), textcoords="offset points", xytext=(0, 6),
                    ha="center", fontsize=7)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("count")
    ax.set_yscale("symlog")
    ax.set_title(f"{trace.verdict}: {trace.strategy}" if trace.strategy else trace.verdict,
                 fontsize=9)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
