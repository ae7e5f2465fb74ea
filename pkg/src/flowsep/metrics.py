"""Classification metrics: confusion matrices, accuracy, and per-class MAP.

MAP here is the mean over classes of per-class precision, where a class's
precision is the fraction of samples predicted into it that truly belong to
it.  Classes that attract no predictions contribute precision 0 (they are
counted, not skipped).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyMatrix, LabelOutOfRange, LengthMismatch


@dataclass(frozen=True)
class ConfusionMatrix:
    """k x k count grid; rows index the true class, columns the predicted class."""

    counts: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.counts, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"confusion matrix must be square, got shape {arr.shape}")
        if (arr < 0).any():
            raise ValueError("confusion matrix counts must be non-negative")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)

    @property
    def num_classes(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def confusion(true_labels, predicted_labels, num_classes: int) -> ConfusionMatrix:
    """Tally (true, predicted) pairs into a num_classes x num_classes matrix."""
    true_arr = np.asarray(true_labels, dtype=np.int64)
    pred_arr = np.asarray(predicted_labels, dtype=np.int64)
    if true_arr.shape != pred_arr.shape or true_arr.ndim != 1:
        raise LengthMismatch(f"{true_arr.shape} true labels vs {pred_arr.shape} predicted")
    for name, arr in (("true", true_arr), ("predicted", pred_arr)):
        if arr.size and (arr.min() < 0 or arr.max() >= num_classes):
            raise LabelOutOfRange(f"{name} labels must lie in [0, {num_classes})")
    counts = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(counts, (true_arr, pred_arr), 1)
    return ConfusionMatrix(counts=counts)


def accuracy(cm: ConfusionMatrix) -> float:
    """Trace over total."""
    if cm.total == 0:
        raise EmptyMatrix("accuracy of an empty confusion matrix")
    return float(np.trace(cm.counts)) / float(cm.total)


def mean_average_precision(cm: ConfusionMatrix) -> float:
    """Mean per-class precision; never-predicted classes contribute 0."""
    if cm.total == 0:
        raise EmptyMatrix("MAP of an empty confusion matrix")
    column_totals = cm.counts.sum(axis=0)
    diag = np.diag(cm.counts)
    precisions = np.zeros(cm.num_classes)
    predicted = column_totals > 0
    precisions[predicted] = diag[predicted] / column_totals[predicted]
    return float(precisions.mean())


def confusion_csv(cm: ConfusionMatrix, class_names=None, delimiter: str = ",") -> str:
    """Delimiter-separated grid with a header row of predicted-class names."""
    if class_names is None:
        class_names = [str(i) for i in range(cm.num_classes)]
    if len(class_names) != cm.num_classes:
        raise LengthMismatch(f"{len(class_names)} names for {cm.num_classes} classes")
    lines = [delimiter.join(["true\\pred", *class_names])]
    for name, row in zip(class_names, cm.counts):
        lines.append(delimiter.join([name, *(str(int(v)) for v in row)]))
    return "\n".join(lines) + "\n"
