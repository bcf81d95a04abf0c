"""PNG figures for detection reports and evaluation results."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
from matplotlib.figure import Figure

from .corpus import ReportRow


def detection_figure(rows: Sequence[ReportRow], threshold: float = 0.9) -> Figure:
    fig = Figure(figsize=(10, 3.6), layout="constrained")
    ax_lab, ax_conf, ax_res = fig.subplots(1, 3)

    labels = ("ambiguous", "unambiguous")
    counts = [sum(r.detection_label == lab for r in rows) for lab in labels]
    ax_lab.bar(labels, counts, color=("#c44e52", "#4c72b0"))
    ax_lab.set_title("Detection verdicts")
    ax_lab.set_ylabel("pronouns")

    bins = np.linspace(0.0, 1.0, 11)
    for lab, color in zip(labels, ("#c44e52", "#4c72b0")):
        ax_conf.hist([r.detection_confidence for r in rows if r.detection_label == lab], bins=bins,
                     alpha=0.7, label=lab, color=color)
    ax_conf.set_title("Detection confidence")
    ax_conf.set_xlabel("confidence")
    ax_conf.legend(fontsize="small")

    ax_res.hist([r.resolution_probability for r in rows if r.resolution_flag != "none"], bins=bins, color="#55a868")
    ax_res.axvline(threshold, color="black", linestyle="--", linewidth=1)
    ax_res.set_title("Top antecedent probability")
    ax_res.set_xlabel("probability")
    return fig


def confusion_figure(tp: int, fp: int, fn: int, tn: int) -> Figure:
    fig = Figure(figsize=(4, 3.6), layout="constrained")
    ax = fig.subplots()
    m = np.array([[tp, fn], [fp, tn]])
    ax.imshow(m, cmap="Blues")
    for (i, j), v in np.ndenumerate(m):
        ax.text(j, i, str(v), ha="center", va="center", color="white" if v > m.max() / 2 else "black")
    ax.set_xticks([0, 1], ["ambiguous", "unambiguous"])
    ax.set_yticks([0, 1], ["ambiguous", "unambiguous"])
    ax.set_xlabel("predicted")
    ax.set_ylabel("gold")
    ax.set_title("Detection confusion matrix")
    return fig


def save(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=100)
    return path


def write_detection_figures(rows: Sequence[ReportRow], directory: str | Path, stem: str, threshold: float = 0.9) -> list[Path]:
    return [save(detection_figure(rows, threshold), Path(directory) / f"{stem}_detection.png")]


def write_eval_figures(report, directory: str | Path, stem: str = "eval") -> list[Path]:
    return [save(confusion_figure(report.tp, report.fp, report.fn, report.tn), Path(directory) / f"{stem}_confusion.png")]
