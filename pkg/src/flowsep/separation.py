"""Global/local motion separation for mixed flow fields.

The camera-induced (global) part of a mixed field is recovered from its edge
lines: dx is constant down each column and dy constant along each row for a
camera field, and frame borders are rarely covered by moving players, so a
middle-60% trimmed mean of each outermost edge line gives robust corner
components.  Linear interpolation between the corners then fills the whole
global field in one separable pass.  The local (object) part is the
thresholded residual: a pixel keeps mixed - global only when the mixed
amplitude exceeds the threshold and the amplitude difference against the
global estimate does too; everything else is treated as camera motion or
noise and zeroed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyInput
from .flow_core import FlowField

DEFAULT_THRESHOLD = 1.0


@dataclass(frozen=True)
class CornerEstimates:
    """Edge-line statistics: dx at the left/right columns, dy at the top/bottom rows.

    Corner vectors assemble as (x_left, y_top), (x_right, y_top),
    (x_left, y_bottom), (x_right, y_bottom).
    """

    x_left: float
    x_right: float
    y_top: float
    y_bottom: float


@dataclass(frozen=True)
class SeparationResult:
    """Global/local decomposition of one mixed field."""

    global_flow: FlowField
    local_flow: FlowField
    corners: CornerEstimates
    threshold: float


def trimmed_mean_middle60(values) -> float:
    """Mean of the middle 60% of a sequence: sort, drop floor(0.2*n) per tail.

    Never empty: 2*floor(0.2*n) < n for all n >= 1.
    """
    arr = np.sort(np.asarray(values, dtype=np.float64), axis=None)
    if arr.size == 0:
        raise EmptyInput("trimmed mean of an empty sequence")
    drop = int(0.2 * arr.size)
    return float(arr[drop:arr.size - drop].mean())


def estimate_corners(mixed: FlowField) -> CornerEstimates:
    """Trimmed-mean edge statistics of a mixed field's outermost lines."""
    return CornerEstimates(
        x_left=trimmed_mean_middle60(mixed.dx[:, 0]),
        x_right=trimmed_mean_middle60(mixed.dx[:, -1]),
        y_top=trimmed_mean_middle60(mixed.dy[0, :]),
        y_bottom=trimmed_mean_middle60(mixed.dy[-1, :]),
    )


def estimate_global(mixed: FlowField) -> FlowField:
    """Camera-motion field interpolated from the corner estimates.

    Column x gets dx = x_left + (x / (width-1)) * (x_right - x_left) in every
    row, and symmetrically for dy; edge-line and interior interpolation
    collapse to this separable form.  Exact (to rounding) when the mixed
    field is itself a camera field.
    """
    corners = estimate_corners(mixed)
    return _interpolate(corners, mixed.width, mixed.height)


def _interpolate(corners: CornerEstimates, width: int, height: int) -> FlowField:
    xs = np.arange(width, dtype=np.float64) / max(width - 1, 1)
    ys = np.arange(height, dtype=np.float64) / max(height - 1, 1)
    dx = corners.x_left + xs * (corners.x_right - corners.x_left)
    dy = corners.y_top + ys * (corners.y_bottom - corners.y_top)
    data = np.empty((height, width, 2))
    data[:, :, 0] = dx[None, :]
    data[:, :, 1] = dy[:, None]
    return FlowField(data)


def estimate_local(mixed: FlowField, global_flow: FlowField, threshold: float) -> FlowField:
    """Thresholded residual field; dx and dy share one branch decision per pixel.

    A pixel is (0, 0) when its mixed amplitude is <= threshold, keeps
    mixed - global when |r_mixed - r_global| > threshold, and is (0, 0)
    otherwise.
    """
    if mixed.data.shape != global_flow.data.shape:
        raise DimensionMismatch(
            f"mixed {mixed.width}x{mixed.height} vs global {global_flow.width}x{global_flow.height}"
        )
    if threshold < 0:
        raise ValueError(f"threshold must be non-negative, got {threshold}")
    r_mixed = mixed.magnitudes()
    r_global = global_flow.magnitudes()
    active = (r_mixed > threshold) & (np.abs(r_mixed - r_global) > threshold)
    residual = mixed.data - global_flow.data
    return FlowField(np.where(active[:, :, None], residual, 0.0))


def separate(mixed: FlowField, threshold: float = DEFAULT_THRESHOLD) -> SeparationResult:
    """Full separation of one mixed field into global and local components."""
    corners = estimate_corners(mixed)
    global_flow = _interpolate(corners, mixed.width, mixed.height)
    local_flow = estimate_local(mixed, global_flow, threshold)
    return SeparationResult(
        global_flow=global_flow,
        local_flow=local_flow,
        corners=corners,
        threshold=threshold,
    )
