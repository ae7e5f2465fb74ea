"""Per-axis affine camera-motion model.

A camera adjustment maps pixel (x, y) to (m0*x + m1, m2*y + m3), so the
induced displacement field is dx = (m0-1)*x + m1, dy = (m2-1)*y + m3: dx is
constant along each column and linear across columns, and symmetrically for
dy.  This module synthesizes such fields, recovers the parameters from a
field by per-axis line fits, composes adjustments, and names the basic
camera motions (static / pan / tilt / zoom).

Pixel coordinates are zero-based with x rightward and y downward.  Direction
labels use the image-motion convention: a camera panning right makes scene
content slide left (dx < 0), so m1 < 0 reads PAN_RIGHT; likewise upward
image motion (dy < 0) reads TILT_UP.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFit, NonFinite
from .flow_core import FlowField

DEFAULT_TRANSLATION_TOL = 0.5
DEFAULT_SCALE_TOL = 0.005


@dataclass(frozen=True)
class GlobalMotionModel:
    """Parameters (m0, m1, m2, m3) of the per-axis affine camera map.

    m0 and m2 are dimensionless scale factors and must be positive
    (orientation-preserving per axis); m1 and m3 are translations in pixels.
    """

    m0: float
    m1: float
    m2: float
    m3: float

    def __post_init__(self) -> None:
        params = (self.m0, self.m1, self.m2, self.m3)
        if not all(np.isfinite(params)):
            raise NonFinite(f"model parameters must be finite, got {params}")
        if self.m0 <= 0.0 or self.m2 <= 0.0:
            raise ValueError(f"scale factors must be positive, got m0={self.m0}, m2={self.m2}")

    @staticmethod
    def identity() -> "GlobalMotionModel":
        return GlobalMotionModel(1.0, 0.0, 1.0, 0.0)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.m0, self.m1, self.m2, self.m3)


class CameraMotionLabel(enum.Enum):
    STATIC = "static"
    PAN_LEFT = "pan-left"
    PAN_RIGHT = "pan-right"
    TILT_UP = "tilt-up"
    TILT_DOWN = "tilt-down"
    ZOOM_IN = "zoom-in"
    ZOOM_OUT = "zoom-out"
    COMPOSITE = "composite"


def displacement_field(model: GlobalMotionModel, width: int, height: int) -> FlowField:
    """Camera-induced flow over a width x height grid.

    Pixel (x, y) holds exactly ((m0-1)*x + m1, (m2-1)*y + m3).
    """
    if width < 2 or height < 2:
        raise ValueError(f"grid must be at least 2x2, got {width}x{height}")
    xs = np.arange(width, dtype=np.float64)
    ys = np.arange(height, dtype=np.float64)
    dx = (model.m0 - 1.0) * xs + model.m1
    dy = (model.m2 - 1.0) * ys + model.m3
    data = np.empty((height, width, 2))
    data[:, :, 0] = dx[None, :]
    data[:, :, 1] = dy[:, None]
    return FlowField(data)


def _line_fit(coords: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Least-squares slope/intercept of values against coords (centered form)."""
    c_mean = coords.mean()
    v_mean = values.mean()
    centered = coords - c_mean
    denom = float(centered @ centered)
    if denom == 0.0:
        raise DegenerateFit("need at least two distinct coordinates for a line fit")
    slope = float(centered @ (values - v_mean)) / denom
    return slope, float(v_mean - slope * c_mean)


def fit_model(fld: FlowField) -> GlobalMotionModel:
    """Recover the camera model that best explains a field, least squares.

    Fits mean-per-column dx against x and mean-per-row dy against y; exact
    (to rounding) on fields produced by :func:`displacement_field`.
    """
    col_dx = fld.dx.mean(axis=0)
    row_dy = fld.dy.mean(axis=1)
    sx, ix = _line_fit(np.arange(fld.width, dtype=np.float64), col_dx)
    sy, iy = _line_fit(np.arange(fld.height, dtype=np.float64), row_dy)
    return GlobalMotionModel(sx + 1.0, ix, sy + 1.0, iy)


def compose(first: GlobalMotionModel, second: GlobalMotionModel) -> GlobalMotionModel:
    """Model of applying ``first`` then ``second``; associative with identity neutral."""
    return GlobalMotionModel(
        second.m0 * first.m0,
        second.m0 * first.m1 + second.m1,
        second.m2 * first.m2,
        second.m2 * first.m3 + second.m3,
    )


def classify_camera_motion(
    model: GlobalMotionModel,
    width: int,
    height: int,
    translation_tol: float = DEFAULT_TRANSLATION_TOL,
    scale_tol: float = DEFAULT_SCALE_TOL,
) -> CameraMotionLabel:
    """Name the basic camera motion a model represents on a width x height field.

    Static when both scales sit within ``scale_tol`` of 1 and both
    translations within ``translation_tol`` of 0.  Pan/tilt when scales are
    near 1 and exactly one translation exceeds its tolerance.  Zoom when both
    scale deviations exceed the tolerance with matching sign and the map's
    fixed point lies inside the field (ZOOM_IN for scales above 1: content
    magnifies).  Everything else is COMPOSITE.
    """
    if translation_tol <= 0.0 or scale_tol <= 0.0:
        raise ValueError("tolerances must be positive")
    scale_x = model.m0 - 1.0
    scale_y = model.m2 - 1.0
    scales_near_one = abs(scale_x) <= scale_tol and abs(scale_y) <= scale_tol
    x_shift = abs(model.m1) > translation_tol
    y_shift = abs(model.m3) > translation_tol

    if scales_near_one:
        if not x_shift and not y_shift:
            return CameraMotionLabel.STATIC
        if x_shift and not y_shift:
            return CameraMotionLabel.PAN_RIGHT if model.m1 < 0 else CameraMotionLabel.PAN_LEFT
        if y_shift and not x_shift:
            return CameraMotionLabel.TILT_UP if model.m3 < 0 else CameraMotionLabel.TILT_DOWN
        return CameraMotionLabel.COMPOSITE

    if abs(scale_x) > scale_tol and abs(scale_y) > scale_tol and scale_x * scale_y > 0:
        fixed_x = model.m1 / (1.0 - model.m0)
        fixed_y = model.m3 / (1.0 - model.m2)
        if 0.0 <= fixed_x <= width - 1 and 0.0 <= fixed_y <= height - 1:
            return CameraMotionLabel.ZOOM_IN if scale_x > 0 else CameraMotionLabel.ZOOM_OUT
    return CameraMotionLabel.COMPOSITE


def zoom_about(scale: float, center_x: float, center_y: float) -> GlobalMotionModel:
    """Uniform zoom with the given fixed point: m1 = (1-s)*cx, m3 = (1-s)*cy."""
    return GlobalMotionModel(scale, (1.0 - scale) * center_x, scale, (1.0 - scale) * center_y)


def pan(dx: float, dy: float = 0.0) -> GlobalMotionModel:
    """Pure translation model producing a uniform (dx, dy) field."""
    return GlobalMotionModel(1.0, dx, 1.0, dy)
