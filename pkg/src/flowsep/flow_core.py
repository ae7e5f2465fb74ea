"""Dense flow fields: the core data type, binary I/O, and color-wheel rendering.

A flow field is an H x W grid of (dx, dy) pixel displacements.  Fields are
stored as float64 and serialized in the widely used little-endian float32
container (magic tag 202021.25, then width and height as int32, then the
interleaved row-major payload).  Visualization follows the common color-wheel
convention: hue encodes direction, saturation encodes amplitude, and zero
motion renders white.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import BadDimensions, BadMagic, NonFinite, Truncated

FLO_MAGIC = 202021.25
MAX_DIMENSION = 2 ** 15

_HEADER = struct.Struct("<fii")


@dataclass(frozen=True)
class FlowField:
    """Immutable H x W grid of (dx, dy) displacements in pixels/frame.

    ``data`` has shape (height, width, 2) with dx in channel 0 and dy in
    channel 1.  Every component must be finite.  The backing array is copied
    and frozen at construction, so instances are safe to share across workers.
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 2:
            raise BadDimensions(f"flow data must have shape (H, W, 2), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise BadDimensions(f"flow field must be at least 1x1, got {arr.shape[1]}x{arr.shape[0]}")
        if not np.isfinite(arr).all():
            raise NonFinite("flow field contains NaN or infinite components")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def dx(self) -> np.ndarray:
        """x-displacement plane, shape (H, W)."""
        return self.data[:, :, 0]

    @property
    def dy(self) -> np.ndarray:
        """y-displacement plane, shape (H, W)."""
        return self.data[:, :, 1]

    def magnitudes(self) -> np.ndarray:
        """Per-pixel Euclidean amplitude sqrt(dx^2 + dy^2), shape (H, W)."""
        return np.hypot(self.dx, self.dy)

    @staticmethod
    def zeros(width: int, height: int) -> "FlowField":
        return FlowField(np.zeros((height, width, 2)))

    @staticmethod
    def from_components(dx: np.ndarray, dy: np.ndarray) -> "FlowField":
        return FlowField(np.stack([dx, dy], axis=-1))


@dataclass(frozen=True)
class FlowStats:
    """Amplitude summary of one field: min/mean/max plus the tail profile."""

    min_magnitude: float
    max_magnitude: float
    mean_magnitude: float
    _sorted_magnitudes: np.ndarray = field(repr=False)

    def fraction_above(self, threshold: float) -> float:
        """Fraction of pixels with amplitude strictly above ``threshold``."""
        mags = self._sorted_magnitudes
        idx = np.searchsorted(mags, threshold, side="right")
        return float(mags.size - idx) / float(mags.size)


def read_flow(data: bytes) -> FlowField:
    """Parse a binary flow stream into a :class:`FlowField`.

    The stream must begin with the float32 tag 202021.25, followed by width
    and height as little-endian int32, then height*width interleaved (dx, dy)
    little-endian float32 pairs in row-major order.  Parsing is bit-exact;
    bytes past the encoded field are ignored.

    Raises :class:`BadMagic`, :class:`BadDimensions`, :class:`Truncated`, or
    :class:`NonFinite`.
    """
    if len(data) < _HEADER.size:
        raise Truncated(f"stream has {len(data)} bytes, header needs {_HEADER.size}")
    magic, width, height = _HEADER.unpack_from(data, 0)
    if magic != FLO_MAGIC:
        raise BadMagic(f"bad magic tag {magic!r}, expected {FLO_MAGIC}")
    if width <= 0 or height <= 0 or width > MAX_DIMENSION or height > MAX_DIMENSION:
        raise BadDimensions(f"implausible dimensions {width}x{height}")
    expected = _HEADER.size + 8 * width * height
    if len(data) < expected:
        raise Truncated(f"stream has {len(data)} bytes, {width}x{height} field needs {expected}")
    payload = np.frombuffer(data, dtype="<f4", count=2 * width * height, offset=_HEADER.size)
    if not np.isfinite(payload).all():
        raise NonFinite("flow payload contains NaN or infinite components")
    return FlowField(payload.astype(np.float64).reshape(height, width, 2))


def write_flow(fld: FlowField) -> bytes:
    """Serialize a field to the binary container read by :func:`read_flow`.

    Components are stored as float32; fields parsed by :func:`read_flow`
    round-trip bit-exactly.
    """
    header = _HEADER.pack(FLO_MAGIC, fld.width, fld.height)
    payload = fld.data.astype("<f4").tobytes()
    return header + payload


def read_flow_file(path) -> FlowField:
    with open(path, "rb") as fh:
        return read_flow(fh.read())


def write_flow_file(fld: FlowField, path) -> None:
    with open(path, "wb") as fh:
        fh.write(write_flow(fld))


def flow_stats(fld: FlowField) -> FlowStats:
    """Amplitude statistics of a field, r = sqrt(dx^2 + dy^2) per pixel."""
    mags = np.sort(fld.magnitudes(), axis=None)
    return FlowStats(
        min_magnitude=float(mags[0]),
        max_magnitude=float(mags[-1]),
        mean_magnitude=float(mags.mean()),
        _sorted_magnitudes=mags,
    )


def make_color_wheel() -> np.ndarray:
    """55-color direction wheel with RY/YG/GC/CB/BM/MR transitions, values in [0, 1]."""
    RY, YG, GC, CB, BM, MR = 15, 6, 4, 11, 13, 6
    wheel = np.zeros((RY + YG + GC + CB + BM + MR, 3))
    i = 0
    wheel[i:i + RY, 0] = 1.0
    wheel[i:i + RY, 1] = np.arange(RY) / RY
    i += RY
    wheel[i:i + YG, 0] = 1.0 - np.arange(YG) / YG
    wheel[i:i + YG, 1] = 1.0
    i += YG
    wheel[i:i + GC, 1] = 1.0
    wheel[i:i + GC, 2] = np.arange(GC) / GC
    i += GC
    wheel[i:i + CB, 1] = 1.0 - np.arange(CB) / CB
    wheel[i:i + CB, 2] = 1.0
    i += CB
    wheel[i:i + BM, 0] = np.arange(BM) / BM
    wheel[i:i + BM, 2] = 1.0
    i += BM
    wheel[i:i + MR, 0] = 1.0
    wheel[i:i + MR, 2] = 1.0 - np.arange(MR) / MR
    return wheel


_WHEEL = make_color_wheel()


def color_code(fld: FlowField, max_magnitude: float | None = None) -> np.ndarray:
    """Render a field as an (H, W, 3) uint8 RGB image.

    Hue follows the direction wheel evaluated at atan2(dy, dx); saturation
    grows linearly with amplitude / max_magnitude, clamped to [0, 1].  Zero
    motion renders white.  When ``max_magnitude`` is omitted the field's own
    maximum is used (1.0 for an all-zero field).
    """
    u = fld.dx
    v = fld.dy
    rad = np.hypot(u, v)
    if max_magnitude is None:
        max_magnitude = float(rad.max())
        if max_magnitude == 0.0:
            max_magnitude = 1.0
    elif max_magnitude <= 0.0:
        raise ValueError(f"max_magnitude must be positive, got {max_magnitude}")
    rad = np.clip(rad / max_magnitude, 0.0, 1.0)

    ncols = _WHEEL.shape[0]
    angle = np.arctan2(-v, -u) / np.pi          # in [-1, 1]
    fk = (angle + 1.0) / 2.0 * (ncols - 1)
    k0 = np.floor(fk).astype(np.int64)
    k1 = k0 + 1
    k1[k1 == ncols] = 0
    frac = (fk - k0)[:, :, None]
    col = (1.0 - frac) * _WHEEL[k0] + frac * _WHEEL[k1]
    col = 1.0 - rad[:, :, None] * (1.0 - col)   # desaturate toward white
    return np.rint(255.0 * col).astype(np.uint8)


def ppm_bytes(image: np.ndarray) -> bytes:
    """Encode an (H, W, 3) uint8 image as binary PPM (P6, maxval 255)."""
    image = np.ascontiguousarray(image, dtype=np.uint8)
    if image.ndim != 3 or image.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) image, got shape {image.shape}")
    height, width = image.shape[:2]
    return b"P6\n%d %d\n255\n" % (width, height) + image.tobytes()


def write_ppm(image: np.ndarray, path) -> None:
    with open(path, "wb") as fh:
        fh.write(ppm_bytes(image))
