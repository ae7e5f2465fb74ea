"""flowsep: global/local motion separation and motion-pattern event recognition.

The toolkit decomposes dense optical-flow fields into a camera-induced
(global) part and a residual object (local) part, classifies clips of either
stream with spatiotemporal motion histograms and a linear softmax, fuses the
two streams plus a clip-level success signal into semantic events, and ships
a synthetic camera-motion oracle for end-to-end verification.
"""

from .camera_model import (
    CameraMotionLabel,
    GlobalMotionModel,
    classify_camera_motion,
    compose,
    displacement_field,
    fit_model,
    pan,
    zoom_about,
)
from .classifier import (
    ModelBundle,
    ProbVector,
    SoftmaxModel,
    TrainConfig,
    cross_entropy_loss_and_grad,
    fit_softmax,
    fuse_streams,
    load_model_bundle,
    predict,
    save_model_bundle,
    softmax,
    train,
)
from .descriptor import ClipStream, MotionDescriptor, StreamKind, compute_descriptor, descriptor_matrix
from .errors import FlowSepError
from .event_fusion import (
    EventKind,
    EventVector,
    FrameSuccessScores,
    SweepResult,
    SweepRow,
    binarize,
    clip_success,
    kronecker_fuse,
    merge_steal,
    threshold_sweep,
)
from .flow_core import (
    FlowField,
    FlowStats,
    color_code,
    flow_stats,
    ppm_bytes,
    read_flow,
    read_flow_file,
    write_flow,
    write_flow_file,
    write_ppm,
)
from .labels import ACTIVITY_NAMES, EVENT11_NAMES, EVENT12_NAMES, NUM_ACTIVITIES, Outcome
from .metrics import ConfusionMatrix, accuracy, confusion, confusion_csv, mean_average_precision
from .separation import (
    CornerEstimates,
    SeparationResult,
    estimate_corners,
    estimate_global,
    estimate_local,
    separate,
    trimmed_mean_middle60,
)
from .synth import (
    Actor,
    MotifTemplate,
    SynthClip,
    SynthClipSpec,
    SynthDataset,
    default_motifs,
    generate_clip,
    generate_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVITY_NAMES",
    "Actor",
    "CameraMotionLabel",
    "ClipStream",
    "ConfusionMatrix",
    "CornerEstimates",
    "EVENT11_NAMES",
    "EVENT12_NAMES",
    "EventKind",
    "EventVector",
    "FlowField",
    "FlowSepError",
    "FlowStats",
    "FrameSuccessScores",
    "GlobalMotionModel",
    "ModelBundle",
    "MotifTemplate",
    "MotionDescriptor",
    "NUM_ACTIVITIES",
    "Outcome",
    "ProbVector",
    "SeparationResult",
    "SoftmaxModel",
    "StreamKind",
    "SweepResult",
    "SweepRow",
    "SynthClip",
    "SynthClipSpec",
    "SynthDataset",
    "TrainConfig",
    "accuracy",
    "binarize",
    "classify_camera_motion",
    "clip_success",
    "color_code",
    "compose",
    "compute_descriptor",
    "confusion",
    "confusion_csv",
    "cross_entropy_loss_and_grad",
    "default_motifs",
    "descriptor_matrix",
    "displacement_field",
    "estimate_corners",
    "estimate_global",
    "estimate_local",
    "fit_model",
    "fit_softmax",
    "flow_stats",
    "fuse_streams",
    "generate_clip",
    "generate_dataset",
    "kronecker_fuse",
    "load_model_bundle",
    "mean_average_precision",
    "merge_steal",
    "pan",
    "ppm_bytes",
    "predict",
    "read_flow",
    "read_flow_file",
    "save_model_bundle",
    "separate",
    "softmax",
    "threshold_sweep",
    "train",
    "trimmed_mean_middle60",
    "write_flow",
    "write_flow_file",
    "write_ppm",
    "zoom_about",
]
