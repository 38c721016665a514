"""Experiment runner: RL campaigns, baselines, distance queries, reports."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import click
import numpy as np

from . import __version__
from . import distance as dist
from .agent import AgentConfig, AgentNetwork
from .codes import CatalogError, StabilizerCode, format_code, parse_code, seed, verify
from .environment import (
    STEP_LOG_COLUMNS,
    CodeTables,
    Environment,
    EnvironmentConfig,
    TableMissError,
    percept_key,
)
from .search import (
    PartialResultError,
    brute_force,
    random_baseline,
    random_search_probability,
    sequence_count,
)
from .tncode import FusionFailure, combine, fuse

EXIT_CONFIG_ERROR = 2
EXIT_BUDGET_ERROR = 3
EXIT_TABLE_MISS = 4


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    seeds: Tuple[str, ...]
    steps: int
    trials: int = 1000
    simulations: int = 20
    beta: float = 1.0
    eta: float = 0.05
    gamma: float = 0.0
    rng_seed: int = 0
    output_dir: str = "out"
    distance_budget_bits: int = 30

    def __post_init__(self):
        if self.trials < 1 or self.simulations < 1:
            raise ConfigError("trials and simulations must both be at least 1")
        if self.steps < 1:
            raise ConfigError("steps must be at least 1")
        for name in self.seeds:
            try:
                seed(name)
            except CatalogError as exc:
                raise ConfigError(str(exc)) from None


_CONFIG_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def parse_config_file(text: str) -> Dict[str, object]:
    """Flat key=value config; keys are exactly the ExperimentConfig fields."""
    values: Dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        if key == "seeds":
            values[key] = tuple(s.strip() for s in value.split(",") if s.strip())
        elif key in ("beta", "eta", "gamma"):
            values[key] = float(value)
        elif key == "output_dir":
            values[key] = value
        else:
            values[key] = int(value)
    return values


def _tables_hash() -> str:
    data = resources.files("codefusion.data").joinpath("best_distances.tsv").read_bytes()
    return hashlib.sha256(data).hexdigest()


def write_manifest(cfg: ExperimentConfig, out_dir: Path) -> None:
    manifest = {
        "config": asdict(cfg),
        "code_tables_sha256": _tables_hash(),
        "codefusion_version": __version__,
        "python_version": platform.python_version(),
        "numpy_version": np.__version__,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _run_simulation(args) -> dict:
    """One full simulation: fresh agent, `trials` trials of `steps` fusions."""
    cfg_dict, simulation = args
    cfg = ExperimentConfig(**cfg_dict)
    env_cfg = EnvironmentConfig(seeds=cfg.seeds, steps=cfg.steps, rng_seed=cfg.rng_seed)
    env = Environment(env_cfg, budget_bits=cfg.distance_budget_bits)
    agent_cfg = AgentConfig(beta=cfg.beta, eta=cfg.eta, gamma=cfg.gamma)
    agent = AgentNetwork(env.initial_network.node_count, agent_cfg)
    rng = np.random.default_rng(cfg.rng_seed + simulation)
    records: List[dict] = []
    final_signatures: List[Tuple[int, int, int]] = []
    for trial in range(cfg.trials):
        outcome = env.reset()
        step = 0
        while not outcome.done:
            step += 1
            action = agent.select_action(outcome.percept, outcome.allowed, rng)
            agent.record_step(outcome.percept, action)
            outcome = env.step(action)
            agent.update(outcome.reward)
            n, k, d = outcome.signature
            records.append(
                {
                    "simulation": simulation,
                    "trial": trial,
                    "step": step,
                    "action_i": action.i,
                    "action_j": action.j,
                    "n": n,
                    "k": k,
                    "d": d,
                    "reward": outcome.reward,
                    "done": outcome.done,
                }
            )
        agent.end_trial()
        final_signatures.append(outcome.signature)
    snapshot = io.StringIO()
    agent.write_snapshot(snapshot)
    final_code = format_code(env.state.code)
    return {
        "simulation": simulation,
        "records": records,
        "final_signatures": final_signatures,
        "snapshot": snapshot.getvalue(),
        "final_code": final_code,
    }


def run_rl(cfg: ExperimentConfig, workers: int = 1) -> dict:
    """Run the full campaign; writes steps.csv, summary.json, manifest.json."""
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_manifest(cfg, out_dir)
    jobs = [(asdict(cfg), i) for i in range(cfg.simulations)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_simulation, jobs))
    else:
        results = [_run_simulation(job) for job in jobs]
    results.sort(key=lambda r: r["simulation"])

    with open(out_dir / "steps.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=STEP_LOG_COLUMNS)
        writer.writeheader()
        for res in results:
            writer.writerows(res["records"])
    for res in results:
        (out_dir / f"agent_{res['simulation']:03d}.snapshot").write_text(
            res["snapshot"]
        )

    # Per-trial statistics across simulations.
    finals = [res["final_signatures"] for res in results]
    best_signature = max(
        (sig for sims in finals for sig in sims), key=lambda sig: sig[2]
    )
    mean_distance = [
        float(np.mean([sims[t][2] for sims in finals])) for t in range(cfg.trials)
    ]
    optimal_frequency = [
        float(np.mean([sims[t] == best_signature for sims in finals]))
        for t in range(cfg.trials)
    ]
    summary = {
        "config": asdict(cfg),
        "best_signature": list(best_signature),
        "mean_final_distance": mean_distance,
        "optimal_frequency": optimal_frequency,
        "final_codes": [res["final_code"] for res in results],
    }
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary


def _load_code(spec_arg: str) -> StabilizerCode:
    """Seed name or path to a code file."""
    try:
        return seed(spec_arg)
    except CatalogError:
        pass
    path = Path(spec_arg)
    if not path.exists():
        raise ConfigError(f"{spec_arg!r} is neither a seed name nor a code file")
    return parse_code(path.read_text())


@click.group()
def cli():
    """Search for high-distance stabilizer codes by fusing seed codes."""


def _config_from_options(config, seeds, **overrides) -> ExperimentConfig:
    values: Dict[str, object] = {}
    if config is not None:
        values.update(parse_config_file(Path(config).read_text()))
    if seeds:
        values["seeds"] = tuple(seeds.split(","))
    for key, val in overrides.items():
        if val is not None:
            values[key] = val
    if "seeds" not in values or "steps" not in values:
        raise ConfigError("seeds and steps are required (flag or config file)")
    return ExperimentConfig(**values)


@cli.command("run-rl")
@click.option("--config", type=click.Path(exists=True), default=None)
@click.option("--seeds", default=None, help="comma-separated seed names")
@click.option("--steps", type=int, default=None)
@click.option("--trials", type=int, default=None)
@click.option("--simulations", type=int, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--eta", type=float, default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--rng-seed", "rng_seed", type=int, default=None)
@click.option("--output-dir", "output_dir", default=None)
@click.option("--distance-budget-bits", "distance_budget_bits", type=int, default=None)
@click.option("--workers", type=int, default=1)
def run_rl_cmd(config, seeds, workers, **overrides):
    """Run an RL campaign and write step logs plus a summary."""
    cfg = _config_from_options(config, seeds, **overrides)
    summary = run_rl(cfg, workers=workers)
    best = summary["best_signature"]
    click.echo(
        f"best signature [[{best[0]},{best[1]},{best[2]}]], "
        f"final optimal frequency {summary['optimal_frequency'][-1]:.3f}"
    )


@cli.command("brute-force")
@click.option("--seeds", required=True, help="comma-separated seed names")
@click.option("--steps", type=int, required=True)
@click.option("--distance-budget-bits", type=int, default=30)
@click.option("--output", type=click.Path(), default=None, help="JSON report path")
@click.option("--histograms-dir", type=click.Path(), default=None,
              help="also write a weight-histogram CSV per best code")
def brute_force_cmd(seeds, steps, distance_budget_bits, output, histograms_dir):
    """Exhaustively search all fusion-action multisets."""
    cfg = EnvironmentConfig(seeds=tuple(seeds.split(",")), steps=steps)
    for name in cfg.seeds:
        seed(name)
    result = brute_force(cfg, budget_bits=distance_budget_bits)
    report = result.as_dict()
    text = json.dumps(report, indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    click.echo(text.rstrip("\n"))
    if histograms_dir:
        hdir = Path(histograms_dir)
        hdir.mkdir(parents=True, exist_ok=True)
        for idx, (key, code) in enumerate(sorted(result.best_codes.items())):
            hist = dist.weight_histograms(code)
            with open(hdir / f"best_{idx:02d}.csv", "w", newline="") as fh:
                dist.write_histogram_csv(hist, fh)


@cli.command("random-baseline")
@click.option("--seeds", required=True)
@click.option("--steps", type=int, required=True)
@click.option("--trials", type=int, default=1000)
@click.option("--rng-seed", type=int, default=0)
@click.option("--distance-budget-bits", type=int, default=30)
@click.option("--output", type=click.Path(), required=True, help="step-log CSV path")
def random_baseline_cmd(seeds, steps, trials, rng_seed, distance_budget_bits, output):
    """Uniform random sequence search with the RL step-log schema."""
    cfg = EnvironmentConfig(seeds=tuple(seeds.split(",")), steps=steps)
    for name in cfg.seeds:
        seed(name)
    rng = np.random.default_rng(rng_seed)
    records = random_baseline(
        cfg, trials, rng, budget_bits=distance_budget_bits
    )
    with open(output, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=STEP_LOG_COLUMNS)
        writer.writeheader()
        writer.writerows(records)
    click.echo(f"wrote {len(records)} step records to {output}")


@cli.command("distance")
@click.argument("code_spec")
@click.option("--budget-bits", type=int, default=30)
@click.option("--oracle", is_flag=True, help="cross-check with the naive search")
def distance_cmd(code_spec, budget_bits, oracle):
    """Exact distance of a seed name or code file."""
    code = _load_code(code_spec)
    d = dist.distance(code, budget_bits=budget_bits)
    click.echo(f"[[{code.n},{code.k},{d}]]")
    if oracle:
        d2 = dist.distance_oracle(code)
        click.echo(f"oracle: {d2} ({'agree' if d2 == d else 'MISMATCH'})")


@cli.command("fuse-demo")
@click.option("--output", type=click.Path(), default=None, help="network file path")
def fuse_demo_cmd(output):
    """Fuse two five-qubit codes over all leg pairs (the worked example)."""
    tn = combine([seed("five_qubit"), seed("five_qubit")])
    best = None
    for qa in range(1, 6):
        for qb in range(6, 11):
            fused = fuse(tn, qa, qb)
            if isinstance(fused, FusionFailure):
                click.echo(f"legs ({qa},{qb}): failure ({fused.reason})")
                continue
            d = dist.distance(fused.code)
            click.echo(f"legs ({qa},{qb}): [[{fused.code.n},{fused.code.k},{d}]]")
            if best is None or d > best[0]:
                best = (d, fused)
    if output and best is not None:
        from .tncode import format_network

        Path(output).write_text(format_network(best[1]))


@cli.command("histogram")
@click.argument("code_spec")
@click.option("--budget-bits", type=int, default=30)
@click.option("--output", type=click.Path(), required=True, help="CSV path")
def histogram_cmd(code_spec, budget_bits, output):
    """Operator-weight histogram of a seed name or code file."""
    code = _load_code(code_spec)
    hist = dist.weight_histograms(code, budget_bits=budget_bits)
    with open(output, "w", newline="") as fh:
        dist.write_histogram_csv(hist, fh)
    click.echo(f"wrote histogram to {output}")


@cli.command("compare")
@click.option("--summary", type=click.Path(exists=True), required=True,
              help="RL campaign summary.json")
@click.option("--brute-force-report", type=click.Path(exists=True), required=True)
@click.option("--output", type=click.Path(), required=True, help="CSV path")
def compare_cmd(summary, brute_force_report, output):
    """Join RL optimal frequency with the analytic random-search curve."""
    summary_data = json.loads(Path(summary).read_text())
    report = json.loads(Path(brute_force_report).read_text())
    n_opt = report["optimal_sequence_count"]
    big_n = report["total_sequences"]
    freq = summary_data["optimal_frequency"]
    with open(output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["trial", "rl_frequency", "random_search_probability"])
        for t, f in enumerate(freq, start=1):
            writer.writerow([t, f, random_search_probability(n_opt, big_n, t)])
    click.echo(f"wrote comparison to {output}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except (ConfigError, CatalogError, click.UsageError) as exc:
        click.echo(f"config error: {exc}", err=True)
        return EXIT_CONFIG_ERROR
    except (dist.BudgetError, PartialResultError) as exc:
        click.echo(f"budget error: {exc}", err=True)
        return EXIT_BUDGET_ERROR
    except TableMissError as exc:
        click.echo(f"table miss: {exc}", err=True)
        return EXIT_TABLE_MISS
    except click.exceptions.Exit as exc:
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
