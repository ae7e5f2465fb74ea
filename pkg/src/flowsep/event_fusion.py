"""Event-level fusion of activity and success/failure predictions.

Activity (6-d) and outcome (2-d) distributions are binarized to one-hot
vectors and combined by their Kronecker product into a 12-d event vector
laid out activity-major (event index = 2 * activity + outcome).  Steal
success and steal failure are then merged into a single terminal class,
giving the 11-class event vocabulary.  Clip-level success is decided by an
any-frame rule over per-frame success scores, and a threshold sweep
tabulates its accuracy over thresholds 0.50..1.00 in steps of 0.05.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .classifier import ProbVector
from .errors import EmptyDataset, EmptyScores, NotOneHot
from .labels import Outcome


class EventKind(enum.Enum):
    ACTIVITY6 = 6
    SF2 = 2
    EVENT12 = 12
    EVENT11 = 11


_KIND_BY_LENGTH = {kind.value: kind for kind in EventKind}


@dataclass(frozen=True)
class EventVector:
    """Fixed-length event vector; the kind pins the expected length."""

    values: np.ndarray
    kind: EventKind

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.shape != (self.kind.value,):
            raise ValueError(f"{self.kind.name} vector must have shape ({self.kind.value},), got {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("event vector must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def is_one_hot(self) -> bool:
        return np.count_nonzero(self.values == 1.0) == 1 and np.count_nonzero(self.values) == 1

    def hot_index(self) -> int:
        if not self.is_one_hot():
            raise NotOneHot(f"{self.kind.name} vector {self.values} is not one-hot")
        return int(np.argmax(self.values))

    @staticmethod
    def one_hot(index: int, kind: EventKind) -> "EventVector":
        values = np.zeros(kind.value)
        values[index] = 1.0
        return EventVector(values=values, kind=kind)


@dataclass(frozen=True)
class FrameSuccessScores:
    """Per-frame success-neuron responses, each in [0, 1]."""

    scores: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.scores, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"scores must be a 1-d sequence, got shape {arr.shape}")
        if arr.size and (not np.isfinite(arr).all() or arr.min() < 0.0 or arr.max() > 1.0):
            raise ValueError("scores must be finite and within [0, 1]")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "scores", arr)

    def __len__(self) -> int:
        return self.scores.size


def binarize(probs: ProbVector) -> EventVector:
    """One-hot at the highest probability; ties break toward the lowest index."""
    kind = _KIND_BY_LENGTH.get(len(probs))
    if kind is None:
        raise ValueError(f"no event kind of length {len(probs)}")
    return EventVector.one_hot(probs.argmax(), kind)


def kronecker_fuse(activity: EventVector, sf: EventVector) -> EventVector:
    """Kronecker product of one-hot activity (6) and outcome (2) vectors.

    Activity index a and outcome index s land on event index 2*a + s.
    """
    if activity.kind is not EventKind.ACTIVITY6 or sf.kind is not EventKind.SF2:
        raise ValueError(f"expected (ACTIVITY6, SF2), got ({activity.kind.name}, {sf.kind.name})")
    if not activity.is_one_hot():
        raise NotOneHot(f"activity vector {activity.values} is not one-hot")
    if not sf.is_one_hot():
        raise NotOneHot(f"outcome vector {sf.values} is not one-hot")
    return EventVector(values=np.kron(activity.values, sf.values), kind=EventKind.EVENT12)


def merge_steal(event12: EventVector) -> EventVector:
    """Collapse steal success (10) and steal failure (11) into final index 10."""
    if event12.kind is not EventKind.EVENT12:
        raise ValueError(f"expected EVENT12, got {event12.kind.name}")
    if not event12.is_one_hot():
        raise NotOneHot(f"event vector {event12.values} is not one-hot")
    merged = np.concatenate([event12.values[:10], [event12.values[10] + event12.values[11]]])
    return EventVector(values=merged, kind=EventKind.EVENT11)


def clip_success(scores: FrameSuccessScores, threshold: float) -> EventVector:
    """Any-frame rule: success iff some frame score strictly exceeds the threshold."""
    if len(scores) == 0:
        raise EmptyScores("clip has no frame scores")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    success = bool((scores.scores > threshold).any())
    return EventVector.one_hot(Outcome.SUCCESS if success else Outcome.FAILURE, EventKind.SF2)


SWEEP_THRESHOLDS = tuple(round(0.50 + 0.05 * i, 2) for i in range(11))


@dataclass(frozen=True)
class SweepRow:
    """Per-threshold accuracy over success clips, failure clips, and all clips.

    A per-class accuracy is NaN when that class is absent from the data.
    """

    threshold: float
    success_accuracy: float
    failure_accuracy: float
    overall_accuracy: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    best_threshold: float   # lowest threshold attaining the best overall accuracy


def threshold_sweep(clips: list[tuple[FrameSuccessScores, Outcome]]) -> SweepResult:
    """Evaluate the any-frame success rule over thresholds 0.50..1.00 step 0.05."""
    if not clips:
        raise EmptyDataset("threshold sweep needs at least one scored clip")
    truths = np.array([outcome for _, outcome in clips], dtype=np.int64)
    rows = []
    best_threshold = SWEEP_THRESHOLDS[0]
    best_overall = -1.0
    for threshold in SWEEP_THRESHOLDS:
        predicted = np.array(
            [clip_success(scores, threshold).hot_index() for scores, _ in clips],
            dtype=np.int64,
        )
        correct = predicted == truths
        success_mask = truths == Outcome.SUCCESS
        failure_mask = ~success_mask
        success_acc = float(correct[success_mask].mean()) if success_mask.any() else float("nan")
        failure_acc = float(correct[failure_mask].mean()) if failure_mask.any() else float("nan")
        overall = float(correct.mean())
        rows.append(SweepRow(threshold, success_acc, failure_acc, overall))
        if overall > best_overall:
            best_overall = overall
            best_threshold = threshold
    return SweepResult(rows=tuple(rows), best_threshold=best_threshold)
