"""Synthetic labeled clips with exact global/local ground truth.

Every clip is driven by a camera script (a sequence of global-motion models,
each active for a span of frames) plus a set of rigid disk actors moving at
constant velocity over their active spans.  The global stream is the exact
camera field per frame, the local stream paints each actor's velocity on its
disk, and the mixed stream is their sum plus optional zero-mean noise (noise
never touches the ground-truth streams).  Per-frame success scores sit at a
low baseline, with one frame near the clip end bumped high for clips labeled
success.

The six built-in motif templates mirror how broadcast basketball activities
move: a shot sequence pans then zooms in (3-point and 2-point share the
camera script and differ only in how densely the actors cluster), free throws
keep the camera still, layups pan over the same calm actor pattern as free
throws, slam dunks zoom fast over a single fast actor, and steals reverse
both camera and actor directions mid-clip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .camera_model import GlobalMotionModel, displacement_field, pan, zoom_about
from .descriptor import ClipStream, StreamKind
from .errors import InvalidSpec
from .event_fusion import FrameSuccessScores
from .flow_core import FlowField
from .labels import NUM_ACTIVITIES, STEAL, Outcome

DEFAULT_FRAME_SIZE = 32
DEFAULT_CLIP_FRAMES = 16
DEFAULT_NOISE_SIGMA = 0.5

SCORE_BASELINE_MAX = 0.3
SCORE_BUMP_MIN = 0.75
SCORE_BUMP_WINDOW = 6   # success bump lands in the final frames


@dataclass(frozen=True)
class Actor:
    """Rigid disk moving at constant velocity over [start_frame, end_frame)."""

    x: float
    y: float
    vx: float
    vy: float
    radius: float
    start_frame: int
    end_frame: int

    def center_at(self, frame: int) -> tuple[float, float]:
        dt = frame - self.start_frame
        return (self.x + self.vx * dt, self.y + self.vy * dt)

    def active(self, frame: int) -> bool:
        return self.start_frame <= frame < self.end_frame


@dataclass(frozen=True)
class SynthClipSpec:
    """Full recipe for one clip; generation is deterministic given ``seed``."""

    width: int
    height: int
    frames: int
    camera_script: tuple[tuple[GlobalMotionModel, int], ...]
    actors: tuple[Actor, ...]
    activity_label: int
    sf_label: Outcome | None
    noise_sigma: float
    seed: int
    clean_edges: bool = True   # require a 1-pixel actor-free margin on every edge

    def __post_init__(self) -> None:
        if self.width < 2 or self.height < 2:
            raise InvalidSpec(f"frame size must be at least 2x2, got {self.width}x{self.height}")
        if self.frames < 1:
            raise InvalidSpec("clip must have at least one frame")
        if not 0 <= self.activity_label < NUM_ACTIVITIES:
            raise InvalidSpec(f"activity label {self.activity_label} out of range")
        if self.noise_sigma < 0:
            raise InvalidSpec(f"noise sigma must be non-negative, got {self.noise_sigma}")
        if sum(span for _, span in self.camera_script) != self.frames or any(
            span < 1 for _, span in self.camera_script
        ):
            raise InvalidSpec("camera script spans must partition the clip's frames")
        for actor in self.actors:
            if not 0 <= actor.start_frame < actor.end_frame <= self.frames:
                raise InvalidSpec(f"actor span [{actor.start_frame}, {actor.end_frame}) out of clip range")
            if actor.radius <= 0:
                raise InvalidSpec("actor radius must be positive")
            if self.clean_edges:
                self._check_margin(actor)

    def _check_margin(self, actor: Actor) -> None:
        # Linear paths attain their extremes at the span endpoints.
        for frame in (actor.start_frame, actor.end_frame - 1):
            cx, cy = actor.center_at(frame)
            if (
                cx - actor.radius < 1.0
                or cx + actor.radius > self.width - 2
                or cy - actor.radius < 1.0
                or cy + actor.radius > self.height - 2
            ):
                raise InvalidSpec(
                    f"actor at ({cx:.1f}, {cy:.1f}) r={actor.radius} leaves the interior margin "
                    f"on frame {frame}; set clean_edges=False to allow this"
                )

    def model_at(self, frame: int) -> GlobalMotionModel:
        offset = 0
        for model, span in self.camera_script:
            offset += span
            if frame < offset:
                return model
        raise InvalidSpec(f"frame {frame} beyond scripted range")


@dataclass(frozen=True)
class SynthClip:
    """One generated clip: ground-truth streams, labels, and frame scores."""

    global_stream: ClipStream
    local_stream: ClipStream
    mixed_stream: ClipStream
    activity_label: int
    sf_label: Outcome | None
    scores: FrameSuccessScores


@dataclass(frozen=True)
class SynthDataset:
    clips: tuple[SynthClip, ...]

    def __len__(self) -> int:
        return len(self.clips)


def _paint_actors(spec: SynthClipSpec, frame: int) -> np.ndarray:
    local = np.zeros((spec.height, spec.width, 2))
    ys = np.arange(spec.height, dtype=np.float64)[:, None]
    xs = np.arange(spec.width, dtype=np.float64)[None, :]
    for actor in spec.actors:
        if not actor.active(frame):
            continue
        cx, cy = actor.center_at(frame)
        disk = (xs - cx) ** 2 + (ys - cy) ** 2 <= actor.radius ** 2
        local[disk] = (actor.vx, actor.vy)
    return local


def _draw_scores(spec: SynthClipSpec, rng: np.random.Generator) -> FrameSuccessScores:
    scores = rng.uniform(0.05, SCORE_BASELINE_MAX, size=spec.frames)
    if spec.sf_label is Outcome.SUCCESS:
        window = min(SCORE_BUMP_WINDOW, spec.frames)
        bump_frame = spec.frames - window + int(rng.integers(window))
        scores[bump_frame] = rng.uniform(0.8, 0.95)
    return FrameSuccessScores(scores)


def generate_clip(spec: SynthClipSpec) -> SynthClip:
    """Render one clip from its spec; mixed = global + local (+ noise)."""
    rng = np.random.default_rng(spec.seed)
    scores = _draw_scores(spec, rng)
    global_frames = []
    local_frames = []
    mixed_frames = []
    for frame in range(spec.frames):
        global_data = displacement_field(spec.model_at(frame), spec.width, spec.height).data
        local_data = _paint_actors(spec, frame)
        mixed_data = global_data + local_data
        if spec.noise_sigma > 0:
            mixed_data = mixed_data + rng.normal(0.0, spec.noise_sigma, size=mixed_data.shape)
        global_frames.append(FlowField(global_data))
        local_frames.append(FlowField(local_data))
        mixed_frames.append(FlowField(mixed_data))
    return SynthClip(
        global_stream=ClipStream(tuple(global_frames), StreamKind.GLOBAL),
        local_stream=ClipStream(tuple(local_frames), StreamKind.LOCAL),
        mixed_stream=ClipStream(tuple(mixed_frames), StreamKind.MIXED),
        activity_label=spec.activity_label,
        sf_label=spec.sf_label,
        scores=scores,
    )


# --- motif templates ---------------------------------------------------------


def _drifting_actor(
    rng: np.random.Generator,
    mid_x: float,
    mid_y: float,
    speed: float,
    angle: float,
    start_frame: int,
    end_frame: int,
    radius: float,
    pos_jitter: float,
) -> Actor:
    """Actor whose linear path is centered on a jittered midpoint."""
    mx = mid_x + rng.uniform(-pos_jitter, pos_jitter)
    my = mid_y + rng.uniform(-pos_jitter, pos_jitter)
    vx = speed * math.cos(angle)
    vy = speed * math.sin(angle)
    half = (end_frame - 1 - start_frame) / 2.0
    return Actor(mx - vx * half, my - vy * half, vx, vy, radius, start_frame, end_frame)


def _toward(rng: np.random.Generator, x: float, y: float, tx: float, ty: float, spread: float) -> float:
    """Angle pointing from (x, y) toward (tx, ty), jittered by +-spread radians."""
    return math.atan2(ty - y, tx - x) + rng.uniform(-spread, spread)


def _jittered_speed(rng: np.random.Generator, base: float) -> float:
    return base * rng.uniform(0.9, 1.1)


@dataclass(frozen=True)
class MotifTemplate:
    """Named per-activity recipe; ``build`` draws one jittered clip spec."""

    name: str
    activity_label: int
    builder: object   # callable(rng, width, height, frames) -> (camera_script, actors)

    def build(
        self,
        rng: np.random.Generator,
        width: int,
        height: int,
        frames: int,
        sf_label: Outcome | None,
        noise_sigma: float,
        seed: int,
    ) -> SynthClipSpec:
        camera_script, actors = self.builder(rng, width, height, frames)
        return SynthClipSpec(
            width=width,
            height=height,
            frames=frames,
            camera_script=tuple(camera_script),
            actors=tuple(actors),
            activity_label=self.activity_label,
            sf_label=sf_label,
            noise_sigma=noise_sigma,
            seed=seed,
        )


def _shot_camera(width: int, height: int, frames: int) -> list[tuple[GlobalMotionModel, int]]:
    # Pan across the court, then zoom in around the basket.
    first = frames // 2
    center_x = (width - 1) / 2.0
    center_y = (height - 1) / 2.0
    return [(pan(-2.0), first), (zoom_about(1.03, center_x, center_y), frames - first)]


def _cluster_actors(
    rng: np.random.Generator,
    positions: list[tuple[float, float]],
    width: int,
    height: int,
    frames: int,
    speed: float,
    pos_jitter: float,
) -> list[Actor]:
    # Velocities aim toward the basket area with directional spread.
    target = (0.5 * width, 0.62 * height)
    start = frames // 4
    end = start + frames // 2
    actors = []
    for px, py in positions:
        angle = _toward(rng, px, py, target[0], target[1], spread=0.45)
        actors.append(
            _drifting_actor(rng, px, py, _jittered_speed(rng, speed), angle, start, end, 2.0, pos_jitter)
        )
    return actors


def _three_point_builder(rng, width, height, frames):
    positions = [(0.35 * width, 0.35 * height), (0.65 * width, 0.35 * height), (0.5 * width, 0.64 * height)]
    return _shot_camera(width, height, frames), _cluster_actors(
        rng, positions, width, height, frames, speed=1.3, pos_jitter=1.5
    )


def _two_point_builder(rng, width, height, frames):
    # Same camera script as 3-point; only the actor density differs.
    cx, cy = 0.5 * width, 0.55 * height
    positions = [
        (cx + rng.uniform(-3.0, 3.0), cy + rng.uniform(-3.0, 3.0)) for _ in range(8)
    ]
    return _shot_camera(width, height, frames), _cluster_actors(
        rng, positions, width, height, frames, speed=1.3, pos_jitter=0.5
    )


def _calm_actors(rng, width, height, frames):
    # Two slow near-vertical actors; shared by free-throw and layup.
    start = frames // 4
    end = start + frames // 2
    actors = []
    for px, direction in ((0.375 * width, 0.5 * math.pi), (0.625 * width, -0.5 * math.pi)):
        angle = direction + rng.uniform(-0.17, 0.17)
        actors.append(
            _drifting_actor(rng, px, 0.5 * height, _jittered_speed(rng, 1.25), angle, start, end, 2.0, 1.5)
        )
    return actors


def _free_throw_builder(rng, width, height, frames):
    return [(GlobalMotionModel.identity(), frames)], _calm_actors(rng, width, height, frames)


def _layup_builder(rng, width, height, frames):
    return [(pan(2.0, 0.5), frames)], _calm_actors(rng, width, height, frames)


def _slam_dunk_builder(rng, width, height, frames):
    center_x = (width - 1) / 2.0
    center_y = (height - 1) / 2.0
    camera = [(zoom_about(1.08, center_x, center_y), frames)]
    start = max(0, frames // 8)
    end = min(frames, start + frames // 2)
    angle = 0.5 * math.pi + rng.uniform(-0.17, 0.17)
    actor = _drifting_actor(
        rng, 0.5 * width, 0.45 * height, _jittered_speed(rng, 2.0), angle, start, end, 3.0, 2.0
    )
    return camera, [actor]


def _steal_builder(rng, width, height, frames):
    # Camera and actors both reverse direction mid-clip.
    first = frames // 2
    camera = [(pan(-2.2), first), (pan(2.2), frames - first)]
    actors = []
    for py in (0.45 * height, 0.6 * height):
        for phase, (t0, t1) in enumerate(((1, first), (first, frames - 1))):
            direction = math.pi if phase == 0 else 0.0   # -x then +x
            angle = direction + rng.uniform(-0.12, 0.12)
            actors.append(
                _drifting_actor(
                    rng, 0.5 * width, py, _jittered_speed(rng, 1.6), angle, t0, t1, 2.0, 1.5
                )
            )
    return camera, actors


def default_motifs() -> tuple[MotifTemplate, ...]:
    """The six built-in activity motifs, indexed by activity label."""
    return (
        MotifTemplate("3-point", 0, _three_point_builder),
        MotifTemplate("free-throw", 1, _free_throw_builder),
        MotifTemplate("layup", 2, _layup_builder),
        MotifTemplate("2-point", 3, _two_point_builder),
        MotifTemplate("slam-dunk", 4, _slam_dunk_builder),
        MotifTemplate("steal", 5, _steal_builder),
    )


def generate_dataset(
    per_class: int,
    motifs: tuple[MotifTemplate, ...] | None = None,
    seed: int = 0,
    width: int = DEFAULT_FRAME_SIZE,
    height: int = DEFAULT_FRAME_SIZE,
    frames: int = DEFAULT_CLIP_FRAMES,
    noise_sigma: float = DEFAULT_NOISE_SIGMA,
) -> SynthDataset:
    """Balanced dataset: per_class clips per activity, reproducible from seed.

    Non-steal clips alternate success/failure; steal clips carry no outcome
    label (their scores stay at baseline).
    """
    if per_class < 1:
        raise InvalidSpec(f"per_class must be >= 1, got {per_class}")
    if motifs is None:
        motifs = default_motifs()
    if len(motifs) != NUM_ACTIVITIES:
        raise InvalidSpec(f"expected {NUM_ACTIVITIES} motif templates, got {len(motifs)}")
    root = np.random.SeedSequence(seed)
    clips = []
    for motif in motifs:
        for index, child in enumerate(root.spawn(per_class)):
            rng = np.random.default_rng(child)
            clip_seed = int(rng.integers(0, 2 ** 63))
            if motif.activity_label == STEAL:
                sf_label = None
            else:
                sf_label = Outcome.SUCCESS if index % 2 == 0 else Outcome.FAILURE
            spec = motif.build(rng, width, height, frames, sf_label, noise_sigma, clip_seed)
            clips.append(generate_clip(spec))
    return SynthDataset(clips=tuple(clips))
