"""Command-line interface.

Subcommands cover the full workflow: ``separate`` / ``visualize`` / ``fit``
operate on individual flow files, ``synth`` emits a labeled synthetic
dataset, ``train`` / ``eval`` handle the activity classifiers, and ``sweep``
/ ``events`` run the success-threshold study and the fused 11-class event
pipeline.  Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .camera_model import classify_camera_motion, fit_model
from .classifier import (
    ModelBundle,
    TrainConfig,
    fit_softmax,
    fuse_streams,
    load_model_bundle,
    predict,
    save_model_bundle,
)
from .descriptor import ClipStream, StreamKind, descriptor_matrix
from .errors import FlowSepError
from .event_fusion import binarize, clip_success, kronecker_fuse, merge_steal, threshold_sweep
from .flow_core import color_code, read_flow_file, write_flow_file, write_ppm
from .labels import ACTIVITY_NAMES, EVENT11_NAMES, NUM_ACTIVITIES, STEAL, Outcome
from .manifest import ClipRecord, load_clip_stream, load_manifest, save_manifest
from .metrics import accuracy, confusion, mean_average_precision
from .report import (
    format_confusion_text,
    format_sweep_text,
    save_confusion_report,
    save_sweep_report,
    sweep_table,
)
from .separation import separate
from .synth import generate_dataset

_STEM_SUFFIXES = (".mixed.flo", ".flo")


def _stem(path: Path) -> str:
    for suffix in _STEM_SUFFIXES:
        if path.name.endswith(suffix):
            return path.name[: -len(suffix)]
    return path.stem


def _cmd_separate(args: argparse.Namespace) -> int:
    for name in args.flows:
        in_path = Path(name)
        mixed = read_flow_file(in_path)
        result = separate(mixed, threshold=args.theta)
        out_dir = Path(args.out_dir) if args.out_dir else in_path.parent
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = _stem(in_path)
        global_path = out_dir / f"{stem}.global.flo"
        local_path = out_dir / f"{stem}.local.flo"
        write_flow_file(result.global_flow, global_path)
        write_flow_file(result.local_flow, local_path)
        written = [global_path, local_path]
        if args.viz:
            for fld, tag in ((mixed, "mixed"), (result.global_flow, "global"), (result.local_flow, "local")):
                ppm = out_dir / f"{stem}.{tag}.ppm"
                write_ppm(color_code(fld), ppm)
                written.append(ppm)
        print(f"{in_path}: wrote " + " ".join(str(p) for p in written))
    return 0


def _cmd_visualize(args: argparse.Namespace) -> int:
    in_path = Path(args.flow)
    fld = read_flow_file(in_path)
    out = Path(args.out) if args.out else in_path.with_name(_stem(in_path) + ".ppm")
    write_ppm(color_code(fld, max_magnitude=args.max_mag), out)
    print(f"wrote {out}")
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    fld = read_flow_file(Path(args.flow))
    model = fit_model(fld)
    label = classify_camera_motion(model, fld.width, fld.height)
    print("[" + ", ".join(f"{p:.9g}" for p in model.as_tuple()) + "]")
    print(f"label: {label.value}")
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    dataset = generate_dataset(
        per_class=args.per_class,
        seed=args.seed,
        width=args.width,
        height=args.height,
        frames=args.frames,
        noise_sigma=args.noise_sigma,
    )
    out_dir = Path(args.out_dir)
    frames_dir = out_dir / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for index, clip in enumerate(dataset.clips):
        clip_id = f"clip_{index:04d}"
        paths = []
        for f_idx in range(len(clip.mixed_stream)):
            base = frames_dir / f"{clip_id}_f{f_idx:02d}"
            for stream, tag in (
                (clip.mixed_stream, "mixed"),
                (clip.global_stream, "global"),
                (clip.local_stream, "local"),
            ):
                write_flow_file(stream.frames[f_idx], f"{base}.{tag}.flo")
            paths.append(Path(f"{base}.mixed.flo"))
        records.append(
            ClipRecord(
                clip_id=clip_id,
                activity=clip.activity_label,
                sf=clip.sf_label,
                scores=clip.scores,
                frame_paths=tuple(paths),
            )
        )
    manifest_path = out_dir / "manifest.txt"
    save_manifest(records, manifest_path)
    print(f"wrote {len(records)} clips ({len(records) * args.frames * 3} flow files) under {out_dir}")
    print(f"manifest: {manifest_path}")
    return 0


def _load_stream_matrix(records, kind: StreamKind, config: TrainConfig) -> np.ndarray:
    clips = [load_clip_stream(rec, kind) for rec in records]
    return descriptor_matrix(clips, config.grid, config.segments, config.bins)


def _cmd_train(args: argparse.Namespace) -> int:
    records = load_manifest(Path(args.manifest))
    config = TrainConfig(
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        seed=args.seed,
        grid=args.grid,
        segments=args.segments,
        bins=args.bins,
    )
    labels = np.array([rec.activity for rec in records], dtype=np.int64)
    kinds = (
        (StreamKind.GLOBAL, StreamKind.LOCAL)
        if args.stream == "two"
        else (StreamKind(args.stream),)
    )
    streams = {}
    for kind in kinds:
        features = _load_stream_matrix(records, kind, config)
        model, losses = fit_softmax(features, labels, NUM_ACTIVITIES, config)
        streams[kind.value] = model
        print(f"{kind.value}: trained on {len(records)} clips, "
              f"loss {losses[0]:.4f} -> {losses[-1]:.4f}")
    bundle = ModelBundle(streams=streams, grid=config.grid, segments=config.segments, bins=config.bins)
    save_model_bundle(bundle, args.out)
    print(f"wrote {args.out}")
    return 0


def _predict_all(bundle: ModelBundle, records, fuse_ratio: float):
    """Fused (or single-stream) activity distributions for every record."""
    config = TrainConfig(grid=bundle.grid, segments=bundle.segments, bins=bundle.bins)
    if "global" in bundle.streams and "local" in bundle.streams:
        x_global = _load_stream_matrix(records, StreamKind.GLOBAL, config)
        x_local = _load_stream_matrix(records, StreamKind.LOCAL, config)
        return [
            fuse_streams(
                predict(bundle.streams["global"], g),
                predict(bundle.streams["local"], l),
                fuse_ratio,
            )
            for g, l in zip(x_global, x_local)
        ]
    (name, model), = bundle.streams.items()
    features = _load_stream_matrix(records, StreamKind(name), config)
    return [predict(model, row) for row in features]


def _cmd_eval(args: argparse.Namespace) -> int:
    records = load_manifest(Path(args.manifest))
    bundle = load_model_bundle(args.model)
    true_labels = [rec.activity for rec in records]
    predicted = [probs.argmax() for probs in _predict_all(bundle, records, args.fuse_ratio)]
    cm = confusion(true_labels, predicted, NUM_ACTIVITIES)
    acc = accuracy(cm)
    mean_ap = mean_average_precision(cm)
    print(f"clips: {len(records)}")
    print(f"accuracy: {acc:.6f}")
    print(f"map: {mean_ap:.6f}")
    print(format_confusion_text(cm, ACTIVITY_NAMES))
    if args.report_dir:
        paths = save_confusion_report(
            cm, ACTIVITY_NAMES, {"accuracy": acc, "map": mean_ap}, args.report_dir, stem="activity"
        )
        print("report: " + " ".join(str(p) for p in paths.values()))
    return 0


def _scored_records(records, path):
    scored = [rec for rec in records if rec.scores is not None and rec.sf is not None]
    if not scored:
        raise FlowSepError(f"{path}: no clips carry both an outcome label and frame scores")
    return scored


def _cmd_sweep(args: argparse.Namespace) -> int:
    records = load_manifest(Path(args.manifest), check_files=False)
    scored = _scored_records(records, args.manifest)
    result = threshold_sweep([(rec.scores, rec.sf) for rec in scored])
    print(format_sweep_text(result))
    if args.report_dir:
        paths = save_sweep_report(result, args.report_dir)
        print("report: " + " ".join(str(p) for p in paths.values()))
    else:
        sys.stdout.write("\n" + sweep_table(result))
    return 0


def _cmd_events(args: argparse.Namespace) -> int:
    records = load_manifest(Path(args.manifest))
    bundle = load_model_bundle(args.model)
    for rec in records:
        if rec.scores is None:
            raise FlowSepError(f"clip {rec.clip_id!r} has no frame scores; events needs them")
        if rec.sf is None and rec.activity != STEAL:
            raise FlowSepError(f"clip {rec.clip_id!r} lacks an outcome label")
    all_probs = _predict_all(bundle, records, args.fuse_ratio)
    true_events = []
    predicted_events = []
    for rec, probs in zip(records, all_probs):
        true_sf = rec.sf if rec.sf is not None else Outcome.FAILURE
        true_events.append(min(2 * rec.activity + true_sf, 10))  # steal indices collapse to 10
        activity_hot = binarize(probs)
        sf_hot = clip_success(rec.scores, args.sf_threshold)
        predicted_events.append(merge_steal(kronecker_fuse(activity_hot, sf_hot)).hot_index())
    cm = confusion(true_events, predicted_events, len(EVENT11_NAMES))
    acc = accuracy(cm)
    mean_ap = mean_average_precision(cm)
    print(f"clips: {len(records)}")
    print(f"accuracy: {acc:.6f}")
    print(f"map: {mean_ap:.6f}")
    print(format_confusion_text(cm, EVENT11_NAMES))
    if args.report_dir:
        paths = save_confusion_report(
            cm, EVENT11_NAMES, {"accuracy": acc, "map": mean_ap}, args.report_dir, stem="events"
        )
        print("report: " + " ".join(str(p) for p in paths.values()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowsep",
        description="Global/local motion separation and motion-pattern event recognition.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("separate", help="split mixed flow files into global and local parts")
    p.add_argument("flows", nargs="+", metavar="FLO")
    p.add_argument("--theta", type=float, default=1.0, help="local-motion threshold in pixels")
    p.add_argument("--out-dir", default=None)
    p.add_argument("--viz", action="store_true", help="also write PPM visualizations")
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("visualize", help="render a flow file as a color-coded PPM image")
    p.add_argument("flow", metavar="FLO")
    p.add_argument("--max-mag", type=float, default=None)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_visualize)

    p = sub.add_parser("fit", help="fit the camera-motion model to a flow file")
    p.add_argument("flow", metavar="FLO")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("synth", help="generate a labeled synthetic dataset")
    p.add_argument("--per-class", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--width", type=int, default=32)
    p.add_argument("--height", type=int, default=32)
    p.add_argument("--frames", type=int, default=16)
    p.add_argument("--noise-sigma", type=float, default=0.5)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("train", help="train activity classifiers from a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--stream", choices=["global", "local", "mixed", "two"], default="two")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--learning-rate", type=float, default=0.001)
    p.add_argument("--grid", type=int, default=4)
    p.add_argument("--segments", type=int, default=4)
    p.add_argument("--bins", type=int, default=8)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("eval", help="6-class activity accuracy/MAP on a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--fuse-ratio", type=float, default=1.0)
    p.add_argument("--report-dir", default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("sweep", help="success-threshold sweep over scored clips")
    p.add_argument("--manifest", required=True)
    p.add_argument("--report-dir", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("events", help="full 11-class event pipeline on a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--sf-threshold", type=float, default=0.7)
    p.add_argument("--fuse-ratio", type=float, default=1.0)
    p.add_argument("--report-dir", default=None)
    p.set_defaults(func=_cmd_events)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FlowSepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
