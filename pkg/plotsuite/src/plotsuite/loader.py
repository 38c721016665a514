"""Schema-validated readers for the codefusion CSV/JSON file contract."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List


class SchemaError(ValueError):
    """Input file does not follow the documented log schema."""


STEP_COLUMNS = [
    "simulation",
    "trial",
    "step",
    "action_i",
    "action_j",
    "n",
    "k",
    "d",
    "reward",
    "done",
]

SUMMARY_KEYS = [
    "config",
    "best_signature",
    "mean_final_distance",
    "optimal_frequency",
    "final_codes",
]

HISTOGRAM_COLUMNS = ["class", "weight", "count"]


@dataclass
class CampaignLog:
    """One RL campaign: the summary JSON plus (optionally) step records."""

    summary: dict
    steps: List[dict]

    @property
    def config(self) -> dict:
        return self.summary["config"]

    @property
    def trials(self) -> int:
        return len(self.summary["mean_final_distance"])

    def label(self) -> str:
        cfg = self.config
        return f"beta={cfg['beta']}, eta={cfg['eta']}, gamma={cfg['gamma']}"


def load_summary(path: Path) -> dict:
    data = json.loads(Path(path).read_text())
    missing = [key for key in SUMMARY_KEYS if key not in data]
    if missing:
        raise SchemaError(f"{path}: summary is missing keys {missing}")
    if len(data["mean_final_distance"]) != len(data["optimal_frequency"]):
        raise SchemaError(f"{path}: per-trial series lengths disagree")
    if not data["mean_final_distance"]:
        raise SchemaError(f"{path}: summary holds no trials")
    return data


def load_steps_csv(path: Path) -> List[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != STEP_COLUMNS:
            raise SchemaError(
                f"{path}: expected columns {STEP_COLUMNS}, got {reader.fieldnames}"
            )
        return list(reader)


def load_campaign(summary_path: Path, steps_path: "Path | None" = None) -> CampaignLog:
    summary = load_summary(Path(summary_path))
    steps = load_steps_csv(Path(steps_path)) if steps_path else []
    return CampaignLog(summary=summary, steps=steps)


def load_brute_force_report(path: Path) -> dict:
    data = json.loads(Path(path).read_text())
    for key in ("optimal_sequence_count", "total_sequences"):
        if key not in data:
            raise SchemaError(f"{path}: brute-force report is missing {key!r}")
    return data


def load_histogram_csv(path: Path) -> Dict[str, Dict[int, int]]:
    """{'stabilizer': {weight: count}, 'logical': {weight: count}}."""
    out: Dict[str, Dict[int, int]] = {"stabilizer": {}, "logical": {}}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != HISTOGRAM_COLUMNS:
            raise SchemaError(
                f"{path}: expected columns {HISTOGRAM_COLUMNS}, got {reader.fieldnames}"
            )
        for row in reader:
            cls = row["class"]
            if cls not in out:
                raise SchemaError(f"{path}: unknown operator class {cls!r}")
            out[cls][int(row["weight"])] = int(row["count"])
    return out
