"""Report rendering: delimited tables plus matplotlib figures on disk.

Every report writer emits a machine-readable delimited file and a rendered
figure side by side, so results can be both diffed and eyeballed.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .event_fusion import SweepResult
from .metrics import ConfusionMatrix, confusion_csv


def sweep_table(result: SweepResult, delimiter: str = ",") -> str:
    """Delimited sweep table: threshold, success/failure/overall accuracy."""
    lines = [delimiter.join(["threshold", "success_accuracy", "failure_accuracy", "overall_accuracy"])]
    for row in result.rows:
        lines.append(
            delimiter.join(
                [
                    f"{row.threshold:.2f}",
                    _fmt(row.success_accuracy),
                    _fmt(row.failure_accuracy),
                    _fmt(row.overall_accuracy),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _fmt(value: float) -> str:
    return "nan" if math.isnan(value) else f"{value:.6f}"


def save_sweep_report(result: SweepResult, out_dir, stem: str = "sweep") -> dict[str, Path]:
    """Write ``<stem>.csv`` and ``<stem>.png`` under ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}.csv"
    csv_path.write_text(sweep_table(result), encoding="ascii")

    thresholds = [row.threshold for row in result.rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for attr, label, style in (
        ("success_accuracy", "success clips", "o-"),
        ("failure_accuracy", "failure clips", "s-"),
        ("overall_accuracy", "overall", "d-"),
    ):
        ax.plot(thresholds, [getattr(r, attr) for r in result.rows], style, label=label)
    ax.axvline(result.best_threshold, color="gray", linestyle=":", linewidth=1)
    ax.set_xlabel("frame success threshold")
    ax.set_ylabel("accuracy")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="best")
    ax.set_title(f"clip success/failure accuracy (best threshold {result.best_threshold:.2f})")
    fig.tight_layout()
    png_path = out_dir / f"{stem}.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return {"csv": csv_path, "png": png_path}


def save_confusion_report(
    cm: ConfusionMatrix,
    class_names,
    summary: dict[str, float],
    out_dir,
    stem: str = "confusion",
) -> dict[str, Path]:
    """Write ``<stem>.csv``, ``<stem>.png``, and ``<stem>_metrics.txt``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}.csv"
    csv_path.write_text(confusion_csv(cm, class_names), encoding="ascii")

    metrics_path = out_dir / f"{stem}_metrics.txt"
    metrics_path.write_text(
        "".join(f"{key} {value:.6f}\n" for key, value in summary.items()), encoding="ascii"
    )

    counts = cm.counts
    n = cm.num_classes
    fig, ax = plt.subplots(figsize=(1.0 + 0.55 * n, 0.8 + 0.55 * n))
    image = ax.imshow(counts, cmap="Blues")
    ax.set_xticks(range(n), class_names, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(n), class_names, fontsize=8)
    ax.set_xlabel("predicted")
    ax.set_ylabel("true")
    threshold = counts.max() / 2 if counts.max() else 0.5
    for i in range(n):
        for j in range(n):
            ax.text(
                j,
                i,
                str(int(counts[i, j])),
                ha="center",
                va="center",
                fontsize=7,
                color="white" if counts[i, j] > threshold else "black",
            )
    fig.colorbar(image, ax=ax, fraction=0.046)
    fig.tight_layout()
    png_path = out_dir / f"{stem}.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return {"csv": csv_path, "png": png_path, "metrics": metrics_path}


def format_sweep_text(result: SweepResult) -> str:
    """Human-readable sweep table for stdout."""
    lines = [f"{'threshold':>9}  {'succ_acc':>8}  {'fail_acc':>8}  {'overall':>8}"]
    for row in result.rows:
        lines.append(
            f"{row.threshold:>9.2f}  {_fmt(row.success_accuracy):>8}  "
            f"{_fmt(row.failure_accuracy):>8}  {_fmt(row.overall_accuracy):>8}"
        )
    lines.append(f"best threshold: {result.best_threshold:.2f}")
    return "\n".join(lines)


def format_confusion_text(cm: ConfusionMatrix, class_names) -> str:
    """Aligned confusion matrix for stdout (rows true, columns predicted)."""
    width = max(len(name) for name in class_names)
    width = max(width, int(np.ceil(np.log10(cm.counts.max() + 1))) if cm.total else 1, 5)
    header = " " * (width + 2) + " ".join(f"{name:>{width}}" for name in class_names)
    lines = [header]
    for name, row in zip(class_names, cm.counts):
        lines.append(f"{name:>{width}}: " + " ".join(f"{int(v):>{width}}" for v in row))
    return "\n".join(lines)
