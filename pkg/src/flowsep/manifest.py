"""Line-oriented clip manifests binding flow files to labels and scores.

One clip per line, five pipe-separated fields::

    <clip id>|<activity>|<sf>|<scores>|<frame paths>

- activity: index 0-5 or a name (3-point, free-throw, layup, 2-point,
  slam-dunk, steal)
- sf: success, failure, or none
- scores: comma-separated per-frame success scores, or '-' when absent
- frame paths: comma-separated .flo paths, relative to the manifest file

Lines starting with '#' and blank lines are ignored.  Frame paths name the
mixed stream; sibling global/local files follow the ``<stem>.global.flo`` /
``<stem>.local.flo`` convention used by the ``separate`` command, where the
stem is the path minus a trailing ``.mixed.flo`` or ``.flo``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .descriptor import ClipStream, StreamKind
from .errors import ManifestError
from .event_fusion import FrameSuccessScores
from .flow_core import read_flow_file
from .labels import ACTIVITY_NAMES, Outcome, activity_index, outcome_from_token

MANIFEST_HEADER = "# flowsep-manifest v1"


@dataclass(frozen=True)
class ClipRecord:
    """One manifest row; ``frame_paths`` are resolved absolute paths."""

    clip_id: str
    activity: int
    sf: Outcome | None
    scores: FrameSuccessScores | None
    frame_paths: tuple[Path, ...]

    def __post_init__(self) -> None:
        if not self.frame_paths:
            raise ManifestError(f"clip {self.clip_id!r} lists no frames")
        if self.scores is not None and len(self.scores) != len(self.frame_paths):
            raise ManifestError(
                f"clip {self.clip_id!r} has {len(self.scores)} scores for {len(self.frame_paths)} frames"
            )


def _stream_path(path: Path, kind: StreamKind) -> Path:
    if kind is StreamKind.MIXED:
        return path
    name = path.name
    for suffix in (".mixed.flo", ".flo"):
        if name.endswith(suffix):
            return path.with_name(name[: -len(suffix)] + f".{kind.value}.flo")
    raise ManifestError(f"cannot derive {kind.value} stream path from {path}")


def load_clip_stream(record: ClipRecord, kind: StreamKind) -> ClipStream:
    """Read one stream of a clip, deriving sibling paths for global/local."""
    frames = []
    for path in record.frame_paths:
        stream_file = _stream_path(path, kind)
        if not stream_file.exists():
            raise ManifestError(f"clip {record.clip_id!r}: missing flow file {stream_file}")
        frames.append(read_flow_file(stream_file))
    return ClipStream(tuple(frames), kind)


def _format_scores(scores: FrameSuccessScores | None) -> str:
    if scores is None:
        return "-"
    return ",".join(repr(float(s)) for s in scores.scores)


def save_manifest(records: list[ClipRecord], path) -> None:
    """Write records with frame paths relative to the manifest's directory."""
    path = Path(path)
    base = path.parent.resolve()
    lines = [MANIFEST_HEADER]
    for rec in records:
        sf = "none" if rec.sf is None else ("success" if rec.sf is Outcome.SUCCESS else "failure")
        rel_paths = []
        for frame in rec.frame_paths:
            frame = Path(frame)
            try:
                rel = frame.resolve().relative_to(base)
            except ValueError:
                rel = frame
            rel_paths.append(str(rel))
        lines.append(
            "|".join(
                [
                    rec.clip_id,
                    ACTIVITY_NAMES[rec.activity],
                    sf,
                    _format_scores(rec.scores),
                    ",".join(rel_paths),
                ]
            )
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_manifest(path, check_files: bool = True) -> list[ClipRecord]:
    """Parse a manifest; raises :class:`ManifestError` naming the offending line."""
    path = Path(path)
    if not path.exists():
        raise ManifestError(f"manifest not found: {path}")
    base = path.parent.resolve()
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("|")
            if len(parts) != 5:
                raise ManifestError(f"{path}:{lineno}: expected 5 '|'-separated fields, got {len(parts)}")
            clip_id, activity_tok, sf_tok, scores_tok, frames_tok = parts
            try:
                activity = activity_index(activity_tok)
                sf = outcome_from_token(sf_tok)
            except ValueError as exc:
                raise ManifestError(f"{path}:{lineno}: {exc}") from None
            if scores_tok.strip() in ("-", ""):
                scores = None
            else:
                try:
                    values = np.array([float(tok) for tok in scores_tok.split(",")])
                    scores = FrameSuccessScores(values)
                except ValueError as exc:
                    raise ManifestError(f"{path}:{lineno}: bad scores: {exc}") from None
            frame_paths = tuple(base / p.strip() for p in frames_tok.split(",") if p.strip())
            if check_files:
                for frame in frame_paths:
                    if not frame.exists():
                        raise ManifestError(f"{path}:{lineno}: frame file not found: {frame}")
            try:
                records.append(
                    ClipRecord(
                        clip_id=clip_id.strip(),
                        activity=activity,
                        sf=sf,
                        scores=scores,
                        frame_paths=frame_paths,
                    )
                )
            except ManifestError as exc:
                raise ManifestError(f"{path}:{lineno}: {exc}") from None
    return records
