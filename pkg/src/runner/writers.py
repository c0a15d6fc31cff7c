"""Artifact writers: errors.csv, reports.json and summary.txt.

Floats are written with 17 significant digits so reloaded curves match the
in-memory ones exactly. Nothing time-dependent is written.
"""

import json
import logging
from collections import defaultdict
from pathlib import Path

import pandas as pd

from src.analysis.approximants import CSV_COLUMNS, ErrorCurve
from src.bounds.models import BoundReport, summary_line
from src.bounds.registry import describe

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def curves_frame(curves: list[ErrorCurve]) -> pd.DataFrame:
    frames = [curve.to_frame() for curve in curves]
    frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame()
    return frame.reindex(columns=CSV_COLUMNS)


def write_error_csv(curves: list[ErrorCurve], path: Path) -> None:
    curves_frame(curves).to_csv(path, index=False, float_format=FLOAT_FORMAT)


def read_error_csv(path: Path) -> list[ErrorCurve]:
    frame = pd.read_csv(path, dtype={"family_id": str}, float_precision="round_trip")
    return [
        ErrorCurve.from_frame(group)
        for _, group in frame.groupby("family_id", sort=False)
    ]


def write_reports_json(reports: list[BoundReport], path: Path) -> None:
    payload = [report.to_json_dict() for report in reports]
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def write_frame_csv(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)


def summarize(name: str, curves: list[ErrorCurve], reports: list[BoundReport]) -> str:
    lines = [f"scenario: {name}"]
    for curve in curves:
        if curve.fitted is not None:
            fit = curve.fitted
            lines.append(
                f"curve {curve.family_id} t={curve.t}: rho={fit.rho:.6g} "
                f"C={fit.C:.6g} residual={fit.residual:.3g}"
            )
        else:
            lines.append(f"curve {curve.family_id} t={curve.t}: no rate fit")

    by_bound: dict[str, list[BoundReport]] = defaultdict(list)
    for report in reports:
        by_bound[report.bound_id.value].append(report)
    for bound_id, group in by_bound.items():
        passed = sum(r.passed for r in group)
        worst = min(r.margin for r in group)
        constants: dict[str, float] = {}
        for r in group:
            for key, value in r.constants.items():
                constants[key] = max(constants.get(key, value), value)
        rendered = " ".join(f"{k}={v:.6g}" for k, v in sorted(constants.items()))
        description = describe(group[0].bound_id)
        lines.append(
            f"bound {bound_id} [{description}]: {passed}/{len(group)} pass, "
            f"min margin {worst:.6g}" + (f", {rendered}" if rendered else "")
        )
    lines.append(summary_line(reports))
    return "\n".join(lines) + "\n"


def write_summary(
    name: str, curves: list[ErrorCurve], reports: list[BoundReport], path: Path
) -> None:
    path.write_text(summarize(name, curves, reports), encoding="utf-8")


def write_artifacts(
    out_dir: Path, name: str, curves: list[ErrorCurve], reports: list[BoundReport]
) -> None:
    """errors.csv, reports.json and summary.txt under ``out_dir``."""
    out_dir.mkdir(parents=True, exist_ok=True)
    write_error_csv(curves, out_dir / "errors.csv")
    write_reports_json(reports, out_dir / "reports.json")
    write_summary(name, curves, reports, out_dir / "summary.txt")
    logger.info("Wrote artifacts to %s", out_dir)
