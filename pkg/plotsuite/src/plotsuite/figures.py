"""Figure rendering.  Every function writes an image file and returns the
exact data series it drew, so callers and tests can check the numbers
without decoding pixels."""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .loader import CampaignLog, SchemaError


def _savefig(fig, output: Path, fmt: "str | None") -> None:
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output, format=fmt, dpi=150, bbox_inches="tight")
    plt.close(fig)


def plot_average_distance(
    logs: Sequence[CampaignLog], output: Path, fmt: "str | None" = None
) -> Dict[str, List[float]]:
    """Mean final code distance per trial, one labeled curve per campaign."""
    if not logs:
        raise SchemaError("no campaign logs given")
    first = logs[0].config
    for log in logs[1:]:
        if log.config["seeds"] != first["seeds"] or log.config["steps"] != first["steps"]:
            raise SchemaError(
                "refusing to overlay campaigns with different seeds or step counts"
            )
    fig, ax = plt.subplots(figsize=(7, 4.5))
    series: Dict[str, List[float]] = {}
    for log in logs:
        ys = [float(v) for v in log.summary["mean_final_distance"]]
        xs = range(1, len(ys) + 1)
        ax.plot(xs, ys, label=log.label())
        series[log.label()] = ys
    ax.set_xlabel("trial")
    ax.set_ylabel("mean final code distance")
    ax.legend()
    _savefig(fig, output, fmt)
    return series


def plot_probability_comparison(
    summary: dict, brute_force_report: dict, output: Path, fmt: "str | None" = None
) -> Dict[str, List[float]]:
    """RL optimal-state frequency vs the analytic random-search curve."""
    for key in ("optimal_sequence_count", "total_sequences"):
        if key not in brute_force_report:
            raise SchemaError(f"brute-force report is missing {key!r}")
    n_opt = brute_force_report["optimal_sequence_count"]
    big_n = brute_force_report["total_sequences"]
    rl = [float(v) for v in summary["optimal_frequency"]]
    analytic = [
        1.0 - (1.0 - n_opt / big_n) ** t for t in range(1, len(rl) + 1)
    ]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs = range(1, len(rl) + 1)
    ax.plot(xs, rl, label="RL optimal-state frequency")
    ax.plot(xs, analytic, label=f"random search ({n_opt}/{big_n} per trial)")
    ax.set_xlabel("trial")
    ax.set_ylabel("probability of holding the optimal code")
    ax.legend()
    _savefig(fig, output, fmt)
    return {"rl_frequency": rl, "random_search_probability": analytic}


def plot_weight_histograms(
    hist_a: Dict[str, Dict[int, int]],
    hist_b: Dict[str, Dict[int, int]],
    output: Path,
    fmt: "str | None" = None,
    include_stabilizers: bool = False,
) -> Dict[str, Dict[int, int]]:
    """Grouped bars of logical operator weights for two codes."""
    for name, hist in (("A", hist_a), ("B", hist_b)):
        if "logical" not in hist or not hist["logical"]:
            raise SchemaError(f"histogram {name} has no logical weight counts")
    weights = sorted(set(hist_a["logical"]) | set(hist_b["logical"]))
    a_counts = [hist_a["logical"].get(w, 0) for w in weights]
    b_counts = [hist_b["logical"].get(w, 0) for w in weights]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    width = 0.4
    ax.bar([w - width / 2 for w in weights], a_counts, width=width, label="code A")
    ax.bar([w + width / 2 for w in weights], b_counts, width=width, label="code B")
    if include_stabilizers:
        sw = sorted(set(hist_a["stabilizer"]) | set(hist_b["stabilizer"]))
        ax.plot(sw, [hist_a["stabilizer"].get(w, 0) for w in sw], "o--",
                label="code A stabilizers")
        ax.plot(sw, [hist_b["stabilizer"].get(w, 0) for w in sw], "s--",
                label="code B stabilizers")
    ax.set_xlabel("operator weight")
    ax.set_ylabel("count")
    ax.legend()
    _savefig(fig, output, fmt)
    return {
        "weights": {w: i for i, w in enumerate(weights)},
        "a_logical": dict(zip(weights, a_counts)),
        "b_logical": dict(zip(weights, b_counts)),
    }
