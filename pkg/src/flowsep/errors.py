"""Exception types shared across the toolkit.

All data-level failures derive from :class:`FlowSepError` so callers (and the
CLI) can distinguish bad input from programming errors.
"""

from __future__ import annotations


class FlowSepError(ValueError):
    """Base class for all data and format errors raised by this package."""


# --- flow file I/O ---------------------------------------------------------

class BadMagic(FlowSepError):
    """Flow stream does not start with the expected magic tag."""


class BadDimensions(FlowSepError):
    """Flow header declares a non-positive or implausibly large size."""


class Truncated(FlowSepError):
    """Flow stream ends before the header-implied payload is complete."""


class NonFinite(FlowSepError):
    """A flow component is NaN or infinite."""


# --- model fitting and separation ------------------------------------------

class DegenerateFit(FlowSepError):
    """Line-fit design matrix is rank deficient (fewer than two distinct coordinates)."""


class EmptyInput(FlowSepError):
    """An operation that needs at least one value received none."""


class DimensionMismatch(FlowSepError):
    """Two operands that must share a shape or length do not."""


# --- classification ---------------------------------------------------------

class ClipTooShort(FlowSepError):
    """Clip has fewer frames than the requested temporal segmentation."""


class MissingClass(FlowSepError):
    """Training data lacks at least one example of some class."""


class EmptyDataset(FlowSepError):
    """A dataset-level operation received no records."""


# --- event fusion ------------------------------------------------------------

class NotOneHot(FlowSepError):
    """Vector expected to be one-hot has zero or multiple active entries."""


class EmptyScores(FlowSepError):
    """Clip-level decision requested on an empty frame-score sequence."""


# --- metrics -----------------------------------------------------------------

class LabelOutOfRange(FlowSepError):
    """A class label falls outside [0, k)."""


class LengthMismatch(FlowSepError):
    """Paired label sequences differ in length."""


class EmptyMatrix(FlowSepError):
    """Metric requested on a confusion matrix with no tallied samples."""


# --- synthesis ----------------------------------------------------------------

class InvalidSpec(FlowSepError):
    """Synthetic clip specification violates its own constraints."""


# --- manifests -----------------------------------------------------------------

class ManifestError(FlowSepError):
    """Clip manifest is malformed or references unresolvable files."""
