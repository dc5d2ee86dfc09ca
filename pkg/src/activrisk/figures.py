"""Render evaluation reports as figure files (headless backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .evaluation import EvalReport


def save_confusion_matrix(report: EvalReport, path: str) -> None:
    """2x2 count heatmap, truth on rows, prediction on columns."""
    c = report.counts
    grid = np.array([[c.tp, c.fn], [c.fp, c.tn]], dtype=float)
    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    im = ax.imshow(grid, cmap="Blues")
    ax.set_xticks([0, 1], ["at_risk", "not_at_risk"])
    ax.set_yticks([0, 1], ["at_risk", "not_at_risk"])
    ax.set_xlabel("predicted")
    ax.set_ylabel("actual")
    threshold = grid.max() / 2 if grid.max() else 0.5
    for i in range(2):
        for j in range(2):
            color = "white" if grid[i, j] > threshold else "black"
            ax.text(j, i, f"{int(grid[i, j])}", ha="center", va="center", color=color)
    fig.colorbar(im, ax=ax, shrink=0.85)
    ax.set_title(f"pooled confusion (n={c.total})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_rate_bars(report: EvalReport, path: str) -> None:
    """Accuracy and the four class-conditional rates as a bar chart."""
    names = ["accuracy", "tp_rate", "tn_rate", "fp_rate", "fn_rate"]
    values = [report.accuracy, report.tp_rate, report.tn_rate, report.fp_rate, report.fn_rate]
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    bars = ax.bar(names, values, color=["#444444", "#2166ac", "#2166ac", "#b2182b", "#b2182b"])
    ax.bar_label(bars, fmt="%.3f")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("rate")
    ax.set_title("evaluation rates (at_risk positive)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_fold_accuracy(report: EvalReport, path: str) -> None:
    """Per-fold accuracy bars with the pooled accuracy as a reference line."""
    folds = report.fold_counts or ()
    accuracies = [(c.tp + c.tn) / c.total if c.total else 0.0 for c in folds]
    labels = [f"fold {i}" for i in range(len(folds))]
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    bars = ax.bar(labels, accuracies, color="#4393c3")
    ax.bar_label(bars, fmt="%.3f")
    ax.axhline(report.accuracy, color="#b2182b", linestyle="--", label="pooled")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("accuracy")
    ax.set_title("held-out accuracy per fold")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
