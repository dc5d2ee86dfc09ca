"""Stratified k-fold cross-validation and confusion-matrix rates.

AT_RISK is the positive class everywhere: tp_rate is sensitivity,
tn_rate specificity.  Held-out predictions from all folds are pooled
into one confusion matrix (micro-averaging) rather than averaging
per-fold rates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .encoding import encode, infer_schema
from .errors import (
    DimensionMismatch,
    EmptyEvaluation,
    MissingLabel,
    TooFewExamples,
    UnknownCategory,
)
from .network import TrainingConfig, predict, train
from .survey import RiskLabel, SurveyResponse

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            self.tp + other.tp,
            self.tn + other.tn,
            self.fp + other.fp,
            self.fn + other.fn,
        )


@dataclass(frozen=True)
class EvalReport:
    """Pooled confusion counts plus accuracy and class-conditional rates."""

    counts: ConfusionCounts
    accuracy: float
    tp_rate: float
    tn_rate: float
    fp_rate: float
    fn_rate: float
    degenerate: bool = False  # a class was absent; its rates report as 0
    fold_counts: tuple[ConfusionCounts, ...] | None = None


def stratified_folds(
    data: Sequence[SurveyResponse], k: int, seed: int
) -> list[list[int]]:
    """Partition record indices into k folds balanced per class within 1.

    Within each class the indices are shuffled by a seeded generator and
    dealt round-robin; each fold list comes back sorted so the output is a
    canonical partition of range(len(data)).
    """
    if k < 2:
        raise ValueError(f"need at least 2 folds, got k={k}")
    if k > len(data):
        raise TooFewExamples(f"cannot make {k} folds from {len(data)} examples")
    for i, record in enumerate(data):
        if record.label is None:
            raise MissingLabel(f"record {i} has no label")

    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    start = 0  # continue dealing where the previous class stopped, so fold
    # sizes stay balanced overall and no fold is left empty when k = n
    for label in RiskLabel:
        indices = np.array([i for i, r in enumerate(data) if r.label is label])
        if indices.size == 0:
            continue
        rng.shuffle(indices)
        for position, index in enumerate(indices):
            folds[(start + position) % k].append(int(index))
        start = (start + indices.size) % k
    return [sorted(fold) for fold in folds]


def confusion(
    predictions: Sequence[RiskLabel], truth: Sequence[RiskLabel]
) -> ConfusionCounts:
    """Count the four cells with AT_RISK as the positive class."""
    if len(predictions) != len(truth):
        raise DimensionMismatch(
            f"{len(predictions)} predictions vs {len(truth)} truth labels"
        )
    tp = tn = fp = fn = 0
    for pred, true in zip(predictions, truth):
        if true is RiskLabel.AT_RISK:
            if pred is RiskLabel.AT_RISK:
                tp += 1
            else:
                fn += 1
        else:
            if pred is RiskLabel.AT_RISK:
                fp += 1
            else:
                tn += 1
    return ConfusionCounts(tp, tn, fp, fn)


def rates(counts: ConfusionCounts) -> EvalReport:
    """Accuracy and TP/TN/FP/FN rates; empty-class rates report as 0."""
    total = counts.total
    if total == 0:
        raise EmptyEvaluation("no evaluated examples")
    positives = counts.tp + counts.fn
    negatives = counts.tn + counts.fp
    degenerate = positives == 0 or negatives == 0
    return EvalReport(
        counts=counts,
        accuracy=(counts.tp + counts.tn) / total,
        tp_rate=counts.tp / positives if positives else 0.0,
        fn_rate=counts.fn / positives if positives else 0.0,
        tn_rate=counts.tn / negatives if negatives else 0.0,
        fp_rate=counts.fp / negatives if negatives else 0.0,
        degenerate=degenerate,
    )


def _fold_seed(seed: int, fold_index: int) -> int:
    """Derive an independent training seed for one fold."""
    return int(np.random.SeedSequence([seed, fold_index]).generate_state(1, np.uint64)[0])


def cross_validate(
    data: Sequence[SurveyResponse], k: int, config: TrainingConfig
) -> EvalReport:
    """k-fold CV: fresh schema and fresh network per fold, pooled report.

    The encoding schema is re-inferred from each fold's training split only,
    so held-out records can carry values the schema cannot encode; those are
    scored as AT_RISK predictions (with a warning) instead of being dropped,
    which would inflate accuracy.
    """
    folds = stratified_folds(data, k, config.seed)
    predictions: list[RiskLabel | None] = [None] * len(data)
    fold_counts = []
    for fold_index, holdout in enumerate(folds):
        holdout_set = set(holdout)
        train_records = [r for i, r in enumerate(data) if i not in holdout_set]
        schema = infer_schema(train_records)
        samples = [(encode(r, schema), r.label) for r in train_records]
        fold_config = replace(config, seed=_fold_seed(config.seed, fold_index))
        net = train(samples, fold_config)

        fold_preds = []
        fold_truth = []
        for i in holdout:
            record = data[i]
            try:
                label, _ = predict(net, encode(record, schema))
            except UnknownCategory as exc:
                logger.warning(
                    "fold %d record %d: %s; scoring as at_risk", fold_index, i, exc
                )
                label = RiskLabel.AT_RISK
            predictions[i] = label
            fold_preds.append(label)
            fold_truth.append(record.label)
        fold_counts.append(confusion(fold_preds, fold_truth))

    pooled = confusion(predictions, [r.label for r in data])
    return replace(rates(pooled), fold_counts=tuple(fold_counts))
