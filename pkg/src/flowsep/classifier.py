"""Linear softmax classifier over motion descriptors, with two-stream fusion.

Each motion stream gets its own classifier trained by plain mini-batch
gradient descent on the categorical cross-entropy loss.  Mini-batches are
class balanced: every batch holds the same number of samples from each class
(drawn with replacement when a class is scarce), which counters class
imbalance in the training set.  Stream predictions are fused by a weighted
average of the softmax outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .descriptor import DEFAULT_BINS, DEFAULT_GRID, DEFAULT_SEGMENTS, ClipStream, MotionDescriptor, descriptor_matrix
from .errors import DimensionMismatch, EmptyDataset, MissingClass
from .labels import NUM_ACTIVITIES


@dataclass(frozen=True)
class ProbVector:
    """Probability distribution over classes: entries in [0, 1], summing to 1."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.probs, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError(f"probability vector must be 1-d and non-empty, got shape {arr.shape}")
        if not np.isfinite(arr).all() or arr.min() < 0.0 or arr.max() > 1.0 + 1e-9:
            raise ValueError("probabilities must be finite and within [0, 1]")
        if abs(float(arr.sum()) - 1.0) > 1e-6:
            raise ValueError(f"probabilities sum to {arr.sum()}, expected 1 within 1e-6")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    def __len__(self) -> int:
        return self.probs.size

    def argmax(self) -> int:
        return int(np.argmax(self.probs))


@dataclass(frozen=True)
class SoftmaxModel:
    """Linear classifier: class scores are weights @ descriptor + bias."""

    weights: np.ndarray  # (C, D)
    bias: np.ndarray     # (C,)

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64)
        b = np.asarray(self.bias, dtype=np.float64)
        if w.ndim != 2 or b.shape != (w.shape[0],):
            raise DimensionMismatch(f"weights {w.shape} and bias {b.shape} are inconsistent")
        if not (np.isfinite(w).all() and np.isfinite(b).all()):
            raise ValueError("model parameters must be finite")
        w = w.copy(); w.setflags(write=False)
        b = b.copy(); b.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", b)

    @property
    def num_classes(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.weights.shape[1]


@dataclass(frozen=True)
class TrainConfig:
    """Gradient-descent settings; defaults favor determinism over speed."""

    learning_rate: float = 0.001
    epochs: int = 200
    seed: int = 0
    samples_per_class: int = 3     # batch size = classes * samples_per_class
    full_batch: bool = False       # one whole-dataset step per epoch instead
    grid: int = DEFAULT_GRID
    segments: int = DEFAULT_SEGMENTS
    bins: int = DEFAULT_BINS


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax, shifted for numerical stability."""
    shifted = logits - logits.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def cross_entropy_loss_and_grad(
    weights: np.ndarray,
    bias: np.ndarray,
    features: np.ndarray,
    labels: np.ndarray,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean categorical cross-entropy and its analytic gradient.

    loss = -(1/N) sum_n log p[n, labels[n]] with p the softmax of
    features @ weights.T + bias; returns (loss, d/dweights, d/dbias).
    """
    n = features.shape[0]
    probs = softmax(features @ weights.T + bias)
    loss = float(-np.log(probs[np.arange(n), labels]).mean())
    delta = probs
    delta[np.arange(n), labels] -= 1.0
    delta /= n
    return loss, delta.T @ features, delta.sum(axis=0)


def balanced_batch_indices(
    class_indices: list[np.ndarray],
    samples_per_class: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """One balanced batch: exactly samples_per_class draws from every class.

    Classes with at least samples_per_class examples are drawn without
    replacement inside the batch; scarcer classes are drawn with replacement.
    """
    picks = []
    for pool in class_indices:
        replace = pool.size < samples_per_class
        picks.append(rng.choice(pool, size=samples_per_class, replace=replace))
    return np.concatenate(picks)


def fit_softmax(
    features: np.ndarray,
    labels: np.ndarray,
    num_classes: int,
    config: TrainConfig,
) -> tuple[SoftmaxModel, list[float]]:
    """Train one stream's classifier; returns the model and per-epoch mean loss.

    Deterministic given config.seed.  With sane step sizes the mean loss of
    the final epoch does not exceed that of the first (the objective is
    convex).
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if features.shape[0] == 0:
        raise EmptyDataset("no training samples")
    if features.shape[0] != labels.shape[0]:
        raise DimensionMismatch(f"{features.shape[0]} feature rows vs {labels.shape[0]} labels")
    class_indices = [np.flatnonzero(labels == c) for c in range(num_classes)]
    for c, pool in enumerate(class_indices):
        if pool.size == 0:
            raise MissingClass(f"class {c} has no training examples")

    rng = np.random.default_rng(config.seed)
    dim = features.shape[1]
    weights = np.zeros((num_classes, dim))
    bias = np.zeros(num_classes)
    batch_size = num_classes * config.samples_per_class
    batches_per_epoch = max(1, -(-features.shape[0] // batch_size))

    epoch_losses: list[float] = []
    for _ in range(config.epochs):
        if config.full_batch:
            loss, grad_w, grad_b = cross_entropy_loss_and_grad(weights, bias, features, labels)
            weights = weights - config.learning_rate * grad_w
            bias = bias - config.learning_rate * grad_b
            epoch_losses.append(loss)
            continue
        total = 0.0
        for _ in range(batches_per_epoch):
            idx = balanced_batch_indices(class_indices, config.samples_per_class, rng)
            loss, grad_w, grad_b = cross_entropy_loss_and_grad(weights, bias, features[idx], labels[idx])
            weights = weights - config.learning_rate * grad_w
            bias = bias - config.learning_rate * grad_b
            total += loss
        epoch_losses.append(total / batches_per_epoch)
    return SoftmaxModel(weights=weights, bias=bias), epoch_losses


def train(
    dataset: list[tuple[ClipStream, ClipStream, int]],
    config: TrainConfig = TrainConfig(),
) -> tuple[SoftmaxModel, SoftmaxModel]:
    """Train independent global- and local-stream classifiers.

    ``dataset`` holds (global clip, local clip, activity label) triples; both
    returned models share the descriptor configuration in ``config``.
    """
    if not dataset:
        raise EmptyDataset("no training clips")
    labels = np.array([label for _, _, label in dataset], dtype=np.int64)
    x_global = descriptor_matrix([g for g, _, _ in dataset], config.grid, config.segments, config.bins)
    x_local = descriptor_matrix([l for _, l, _ in dataset], config.grid, config.segments, config.bins)
    model_global, _ = fit_softmax(x_global, labels, NUM_ACTIVITIES, config)
    model_local, _ = fit_softmax(x_local, labels, NUM_ACTIVITIES, config)
    return model_global, model_local


def predict(model: SoftmaxModel, desc: MotionDescriptor | np.ndarray) -> ProbVector:
    """Class distribution softmax(weights @ descriptor + bias)."""
    vec = desc.vector if isinstance(desc, MotionDescriptor) else np.asarray(desc, dtype=np.float64)
    if vec.shape != (model.dim,):
        raise DimensionMismatch(f"descriptor shape {vec.shape} vs model dim ({model.dim},)")
    return ProbVector(softmax(model.weights @ vec + model.bias))


def fuse_streams(p_global: ProbVector, p_local: ProbVector, weight_ratio: float = 1.0) -> ProbVector:
    """Late fusion: (w * p_global + p_local) / (w + 1), renormalized."""
    if len(p_global) != len(p_local):
        raise DimensionMismatch(f"stream outputs differ in length: {len(p_global)} vs {len(p_local)}")
    if weight_ratio <= 0.0:
        raise ValueError(f"weight_ratio must be positive, got {weight_ratio}")
    fused = (weight_ratio * p_global.probs + p_local.probs) / (weight_ratio + 1.0)
    return ProbVector(fused / fused.sum())


@dataclass(frozen=True)
class ModelBundle:
    """One or two trained stream models plus the descriptor layout they expect."""

    streams: dict[str, SoftmaxModel]   # keyed by stream name ('global', 'local', 'mixed')
    grid: int = DEFAULT_GRID
    segments: int = DEFAULT_SEGMENTS
    bins: int = DEFAULT_BINS

    def __post_init__(self) -> None:
        if not self.streams:
            raise ValueError("model bundle must hold at least one stream model")


_MODEL_HEADER = "flowsep-model v1"


def save_model_bundle(bundle: ModelBundle, path) -> None:
    """Write a bundle as a versioned text record (exact float round-trip)."""
    lines = [_MODEL_HEADER, f"descriptor {bundle.grid} {bundle.segments} {bundle.bins}"]
    for name, model in bundle.streams.items():
        lines.append(f"stream {name} {model.num_classes} {model.dim}")
        for row in model.weights:
            lines.append(" ".join(repr(x) for x in row))
        lines.append(" ".join(repr(x) for x in model.bias))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model_bundle(path) -> ModelBundle:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != _MODEL_HEADER:
        raise ValueError(f"{path}: not a {_MODEL_HEADER!r} file")
    parts = lines[1].split()
    if len(parts) != 4 or parts[0] != "descriptor":
        raise ValueError(f"{path}: malformed descriptor line {lines[1]!r}")
    grid, segments, bins = (int(p) for p in parts[1:])
    streams: dict[str, SoftmaxModel] = {}
    i = 2
    while i < len(lines):
        if not lines[i].strip():
            i += 1
            continue
        head = lines[i].split()
        if head[0] != "stream" or len(head) != 4:
            raise ValueError(f"{path}: expected a stream header at line {i + 1}")
        name, classes, dim = head[1], int(head[2]), int(head[3])
        rows = lines[i + 1:i + 1 + classes]
        weights = np.array([[float(x) for x in row.split()] for row in rows])
        bias = np.array([float(x) for x in lines[i + 1 + classes].split()])
        if weights.shape != (classes, dim) or bias.shape != (classes,):
            raise ValueError(f"{path}: stream {name!r} payload does not match its header")
        streams[name] = SoftmaxModel(weights=weights, bias=bias)
        i += 2 + classes
    return ModelBundle(streams=streams, grid=grid, segments=segments, bins=bins)
