"""CSV run records and JSON summaries."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict
from importlib import metadata
from pathlib import Path

from ..postulate_tests import PATTERN_NAMES
from .aggregate import CampaignSummary
from .config import ExperimentConfig
from .experiment import RunRecord

RECORD_COLUMNS = (
    "run_index",
    *(f"n_{name}" for name in PATTERN_NAMES),
    "epsilon",
    "delta",
    "kappa",
    "cos_BC",
    "cos_CA",
    "cos_AB",
    "F",
    "G_AB",
    "G_AC",
    "G_BC",
    "G_ABC",
    "filtered",
)


def artifact_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _cell(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def record_row(record: RunRecord, filtered: bool) -> list[str]:
    numbers = record.photon_numbers or (None,) * 8
    stats = ["epsilon", "delta", "kappa", "cos_BC", "cos_CA", "cos_AB", "F", "G_AB", "G_AC", "G_BC", "G_ABC"]
    return [
        str(record.run_index),
        *(_cell(n) for n in numbers),
        *(_cell(record.statistic(name)) for name in stats),
        "1" if filtered else "0",
    ]


def write_records_csv(path: str | Path, records, summary: CampaignSummary | None = None) -> None:
    filtered = set(summary.filtered_runs) if summary is not None else set()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORD_COLUMNS)
        for rec in sorted(records, key=lambda r: r.run_index):
            writer.writerow(record_row(rec, rec.failed or rec.run_index in filtered))


def read_records_csv(path: str | Path) -> list[dict]:
    """Rows as dicts of floats (``None`` for empty cells); the run index stays an int."""
    rows = []
    with open(path, newline="") as fh:
        for raw in csv.DictReader(fh):
            row = {k: (float(v) if v != "" else None) for k, v in raw.items()}
            row["run_index"] = int(raw["run_index"])
            row["filtered"] = raw["filtered"] == "1"
            rows.append(row)
    return rows


def summary_document(cfg: ExperimentConfig, summary: CampaignSummary) -> dict:
    return {
        "artifact": {"name": "qpostulates", "version": artifact_version()},
        "config": cfg.to_dict(),
        "campaign": {
            "runs_total": summary.runs_total,
            "lock_lost": summary.lock_lost,
            "failed": summary.failed,
            "filtered_runs": len(summary.filtered_runs),
        },
        "statistics": {name: asdict(stat) for name, stat in summary.statistics.items()},
    }


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def dumps_json(document: dict) -> str:
    return json.dumps(_jsonable(document), indent=2, allow_nan=False) + "\n"


def write_json(path: str | Path, document: dict) -> None:
    Path(path).write_text(dumps_json(document))
