"""Clip-level motion-pattern descriptors.

A clip is an ordered run of flow fields from one stream (global, local, or
mixed).  Its descriptor is a spatiotemporal histogram: frames are partitioned
into T contiguous temporal segments, each frame into an S x S grid of cells,
and within every (cell, segment) block moving pixels vote their direction
into B uniform angular bins weighted by amplitude, with one extra channel
accumulating total amplitude.  Each block is L2-normalized (zero blocks stay
zero), giving a fixed S*S*T*(B+1) vector that is invariant to frame order
inside a segment.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ClipTooShort, DimensionMismatch
from .flow_core import FlowField

DEFAULT_GRID = 4
DEFAULT_SEGMENTS = 4
DEFAULT_BINS = 8


class StreamKind(enum.Enum):
    GLOBAL = "global"
    LOCAL = "local"
    MIXED = "mixed"


@dataclass(frozen=True)
class ClipStream:
    """Ordered, uniformly sized flow fields from one motion stream."""

    frames: tuple[FlowField, ...]
    kind: StreamKind

    def __post_init__(self) -> None:
        if not self.frames:
            raise ValueError("clip must contain at least one frame")
        shape = self.frames[0].data.shape
        for i, frame in enumerate(self.frames):
            if frame.data.shape != shape:
                raise DimensionMismatch(f"frame {i} has shape {frame.data.shape}, expected {shape}")
        object.__setattr__(self, "frames", tuple(self.frames))

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def width(self) -> int:
        return self.frames[0].width

    @property
    def height(self) -> int:
        return self.frames[0].height


@dataclass(frozen=True)
class MotionDescriptor:
    """Flat non-negative descriptor of length grid*grid*segments*(bins+1).

    Layout: blocks ordered by (segment, cell_row, cell_col), each block the
    B direction bins followed by the amplitude channel.
    """

    vector: np.ndarray
    grid: int
    segments: int
    bins: int

    def __post_init__(self) -> None:
        vec = np.asarray(self.vector, dtype=np.float64)
        expected = self.grid * self.grid * self.segments * (self.bins + 1)
        if vec.shape != (expected,):
            raise DimensionMismatch(f"descriptor length {vec.shape} != expected ({expected},)")
        vec = vec.copy()
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)

    def __len__(self) -> int:
        return self.vector.size


def _partition_bounds(total: int, parts: int) -> list[tuple[int, int]]:
    """Contiguous [start, stop) spans of total//parts items, remainder into the last."""
    base = total // parts
    bounds = [(i * base, (i + 1) * base) for i in range(parts - 1)]
    bounds.append(((parts - 1) * base, total))
    return bounds


def _cell_index_map(height: int, width: int, grid: int) -> np.ndarray:
    """Per-pixel flat cell index (row-major over the S x S grid)."""
    row_cell = np.zeros(height, dtype=np.int64)
    for c, (lo, hi) in enumerate(_partition_bounds(height, grid)):
        row_cell[lo:hi] = c
    col_cell = np.zeros(width, dtype=np.int64)
    for c, (lo, hi) in enumerate(_partition_bounds(width, grid)):
        col_cell[lo:hi] = c
    return row_cell[:, None] * grid + col_cell[None, :]


def compute_descriptor(
    clip: ClipStream,
    grid: int = DEFAULT_GRID,
    segments: int = DEFAULT_SEGMENTS,
    bins: int = DEFAULT_BINS,
) -> MotionDescriptor:
    """Spatiotemporal direction/amplitude histogram of one clip stream.

    Direction bins are centered on angles 2*pi*k/bins of atan2(dy, dx); only
    pixels with positive amplitude vote, weighted by amplitude.  Each
    (cell, segment) block is L2-normalized independently.
    """
    if grid < 1 or segments < 1 or bins < 1:
        raise ValueError("grid, segments, and bins must all be >= 1")
    if len(clip) < segments:
        raise ClipTooShort(f"clip has {len(clip)} frames, needs >= {segments} for {segments} segments")

    n_cells = grid * grid
    block = bins + 1
    cell_map = _cell_index_map(clip.height, clip.width, grid).ravel()
    hist = np.zeros((segments, n_cells, block))

    size = n_cells * block
    for seg, (lo, hi) in enumerate(_partition_bounds(len(clip), segments)):
        flat = hist[seg].reshape(-1)
        for frame in clip.frames[lo:hi]:
            dx = frame.dx.ravel()
            dy = frame.dy.ravel()
            mag = np.hypot(dx, dy)
            moving = mag > 0.0
            if not moving.any():
                continue
            mag_m = mag[moving]
            cell_m = cell_map[moving]
            angle = np.arctan2(dy[moving], dx[moving])
            direction = np.rint(angle * (bins / (2.0 * np.pi))).astype(np.int64) % bins
            flat += np.bincount(cell_m * block + direction, weights=mag_m, minlength=size)
            flat += np.bincount(cell_m * block + bins, weights=mag_m, minlength=size)

    norms = np.linalg.norm(hist, axis=2, keepdims=True)
    np.divide(hist, norms, out=hist, where=norms > 0.0)
    return MotionDescriptor(vector=hist.ravel(), grid=grid, segments=segments, bins=bins)


def descriptor_matrix(
    clips: list[ClipStream] | tuple[ClipStream, ...],
    grid: int = DEFAULT_GRID,
    segments: int = DEFAULT_SEGMENTS,
    bins: int = DEFAULT_BINS,
) -> np.ndarray:
    """Stack descriptors of many clips into an (N, D) matrix."""
    return np.stack([compute_descriptor(c, grid, segments, bins).vector for c in clips])
