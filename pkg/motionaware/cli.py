#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Command-line entrypoint.

    motionaware select-keyframes INPUT
    motionaware synthesize SEMANTICS OUTPUT
    motionaware interpolate INPUT KEYS OUTPUT
    motionaware evaluate PRED REFERENCE
    motionaware budget --frames T --width W --height H
    motionaware ablate-window INPUT
    motionaware ablate-strategy INPUT
    motionaware ablate-interpolation INPUT

Structured results are JSON on stdout or `--output`; logs go to stderr.
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path

from motionaware.config import Config, PipelineConfig
from motionaware.constants import ExitCodes
from motionaware.core.frames import Sequence
from motionaware.core.io import FORMATS, load_sequence, save_sequence
from motionaware.exceptions import MotionAwareError, SequenceIOError, ValidationError
from motionaware.experiments import (
    DEFAULT_WINDOWS,
    compare_interpolation,
    compare_strategies,
    window_sweep,
)
from motionaware.keyframe.selection import KeyframeSet, select_by_strategy
from motionaware.log import setup_logging
from motionaware.metrics.losses import (
    combine_tkd,
    loss_gtkd,
    loss_kd,
    loss_ltkd,
    loss_skd,
    reconstruction_mse,
    sequence_psnr,
)
from motionaware.pipeline import cost_report, gap_fields, reconstruct, select_keys, synthesize

logger = logging.getLogger(__name__)

CONFIG_ENVIRON = "MAI_CONFIG_FILE"

# argparse dest -> PipelineConfig field
_OVERRIDES = {
    "window": "window",
    "strategy": "strategy",
    "gap": "gap",
    "count": "count",
    "seed": "seed",
    "d": "d",
    "p": "p",
    "method": "method",
    "workers": "workers",
    "backend": "backend",
    "backend_command": "command",
    "generator_gmacs": "generator_gmacs_per_frame",
    "block_size": "block_size",
    "search_range": "search_range",
    "alpha": "alpha",
    "beta": "beta",
    "sigma": "sigma",
    "gamma": "gamma",
}


def load_config(args) -> PipelineConfig:
    """Config file from --config or $MAI_CONFIG_FILE, then flag overrides."""
    filename = args.config
    if filename is None:
        filename = os.getenv(CONFIG_ENVIRON)
        if filename and not Path(filename).exists():
            logger.warning(f"{CONFIG_ENVIRON}={filename} not found, using defaults")
            filename = None
    overrides = {
        field: getattr(args, dest, None) for dest, field in _OVERRIDES.items()
    }
    block_size = overrides.get("block_size")
    if block_size is not None:
        overrides["obmc_block_size"] = block_size
    return PipelineConfig.from_config(Config(filename), **overrides)


def read_keys(path) -> KeyframeSet:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SequenceIOError(f"cannot read key-frame file {path}: {e}")
    return KeyframeSet.from_json(text)


def emit(data, output=None):
    text = json.dumps(data, indent=2, sort_keys=True)
    if output is None:
        sys.stdout.write(text + "\n")
        sys.stdout.flush()
        return
    try:
        Path(output).write_text(text + "\n")
    except OSError as e:
        raise SequenceIOError(f"cannot write {output}: {e}")
    logger.info(f"wrote {output}")


def cmd_select(args, config):
    seq = load_sequence(args.input, args.input_format)
    keys = select_keys(seq, config)
    emit(keys.to_dict(), args.output)
    return keys


def cmd_synthesize(args, config):
    semantics = load_sequence(args.semantics, args.input_format)
    keys = read_keys(args.keys) if args.keys else None
    result = synthesize(semantics, config, keys=keys)
    save_sequence(result.video, args.video, args.output_format)
    report = {"keyframes": result.keys.to_dict(), "costs": result.costs.to_dict()}
    emit(report, args.output)
    return result


def cmd_interpolate(args, config):
    seq = load_sequence(args.input, args.input_format)
    keys = read_keys(args.keys)
    video = reconstruct(seq, keys, config)
    save_sequence(video, args.video, args.output_format)
    report = {
        "keyframes": keys.to_dict(),
        "method": config.method,
        "mse": reconstruction_mse(video, seq),
        "psnr": sequence_psnr(video, seq),
        "costs": cost_report(len(seq), keys, seq.dims, config).to_dict(),
    }
    if args.dump_fields:
        dump = {
            "T": len(seq),
            "gaps": [
                {"start": a, "end": b, "field": field.to_dict()}
                for a, b, field in gap_fields(seq, keys, config)
            ],
        }
        emit(dump, args.dump_fields)
    emit(report, args.output)
    return video


def evaluate_sequences(pred: Sequence, reference: Sequence, config: PipelineConfig, keys=None):
    """Every loss of `pred` against `reference`; the local temporal term uses the key-frame pairs."""
    if len(pred) != len(reference):
        raise ValidationError(f"sequence lengths differ: {len(pred)} vs {len(reference)}")
    weights = config.weights
    indices = keys.indices if keys is not None else range(len(pred))
    skd = loss_skd(pred, reference)
    ltkd = loss_ltkd([pred[i] for i in indices], [reference[i] for i in indices])
    gtkd = loss_gtkd(pred, reference)
    tkd = combine_tkd(ltkd, gtkd, weights)
    return {
        "mse": reconstruction_mse(pred, reference),
        "psnr": sequence_psnr(pred, reference),
        "loss_skd": skd,
        "loss_ltkd": ltkd,
        "loss_gtkd": gtkd,
        "loss_tkd": tkd,
        "loss_kd": loss_kd(skd, tkd, weights),
        "weights": weights.to_dict(),
    }


def cmd_evaluate(args, config):
    pred = load_sequence(args.pred, args.input_format)
    reference = load_sequence(args.reference, args.input_format)
    keys = read_keys(args.keys) if args.keys else None
    if keys is not None and keys.source_length != len(pred):
        raise ValidationError(f"key-frame set describes {keys.source_length} frames, not {len(pred)}")
    metrics = evaluate_sequences(pred, reference, config, keys)
    emit(metrics, args.output)
    return metrics


def cmd_budget(args, config):
    if args.input:
        seq = load_sequence(args.input, args.input_format)
        T, dims = len(seq), seq.dims
    else:
        if args.frames is None or args.width is None or args.height is None:
            raise ValidationError("budget needs --input or all of --frames, --width, --height")
        seq, T, dims = None, args.frames, (args.width, args.height)
    if args.keys:
        keys = read_keys(args.keys)
    elif seq is not None:
        keys = select_keys(seq, config)
    elif config.strategy == "peaks":
        raise ValidationError("peak selection needs --input; use --keys or a fixed/random strategy")
    else:
        keys = select_by_strategy(None, T, config.strategy, config.window, config.gap, config.count, config.seed)
    report = cost_report(T, keys, dims, config)
    emit(report.to_dict(), args.output)
    return report


def cmd_ablate_window(args, config):
    seq = load_sequence(args.input, args.input_format)
    windows = DEFAULT_WINDOWS
    if args.windows:
        try:
            windows = tuple(int(w) for w in args.windows.split(","))
        except ValueError:
            raise ValidationError(f"--windows must be comma separated integers, got {args.windows!r}")
    rows = window_sweep(seq, config, windows)
    emit(rows, args.output)
    return rows


def cmd_ablate_strategy(args, config):
    seq = load_sequence(args.input, args.input_format)
    results = compare_strategies(seq, config, args.budget)
    emit(results, args.output)
    return results


def cmd_ablate_interpolation(args, config):
    seq = load_sequence(args.input, args.input_format)
    keys = read_keys(args.keys) if args.keys else select_keys(seq, config)
    results = compare_interpolation(seq, keys, config)
    emit(results, args.output)
    return results


def _common(parser):
    parser.add_argument("--config", help=f"config file, defaults to ${CONFIG_ENVIRON}")
    parser.add_argument("--output", "-o", help="write the JSON result here instead of stdout")
    parser.add_argument("--input-format", choices=FORMATS, default="raw")
    parser.add_argument("--output-format", choices=FORMATS, default="raw")
    group = parser.add_argument_group("config overrides")
    group.add_argument("--window", type=int)
    group.add_argument("--strategy", choices=("peaks", "fixed", "random"))
    group.add_argument("--gap", type=int)
    group.add_argument("--count", type=int)
    group.add_argument("--seed", type=int)
    group.add_argument("--d", type=int, dest="d")
    group.add_argument("--p", type=int, dest="p")
    group.add_argument("--method", choices=("obmc", "linear"))
    group.add_argument("--workers", type=int)
    group.add_argument("--backend", choices=("oracle", "subprocess"))
    group.add_argument("--backend-command")
    group.add_argument("--generator-gmacs", type=float)
    group.add_argument("--block-size", type=int)
    group.add_argument("--search-range", type=int)
    group.add_argument("--alpha", type=float)
    group.add_argument("--beta", type=float)
    group.add_argument("--sigma", type=float)
    group.add_argument("--gamma", type=float)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="motionaware",
        description="Motion-aware inference: synthesize key-frames, interpolate the rest.",
        epilog="environment variables:\n" + Config.get_environ_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("select-keyframes", help="pick key-frames of a video")
    p.add_argument("input")
    p.set_defaults(handler=cmd_select)

    p = commands.add_parser("synthesize", help="semantic maps to video, generator on key-frames only")
    p.add_argument("semantics")
    p.add_argument("video")
    p.add_argument("--keys", help="key-frame JSON, selected from the semantics when omitted")
    p.set_defaults(handler=cmd_synthesize)

    p = commands.add_parser("interpolate", help="keep the key-frames of a video and interpolate the rest")
    p.add_argument("input")
    p.add_argument("keys")
    p.add_argument("video")
    p.add_argument("--dump-fields", help="write the motion field of every gap as JSON")
    p.set_defaults(handler=cmd_interpolate)

    p = commands.add_parser("evaluate", help="losses and reconstruction error of a prediction")
    p.add_argument("pred")
    p.add_argument("reference")
    p.add_argument("--keys", help="key-frame JSON for the local temporal loss")
    p.set_defaults(handler=cmd_evaluate)

    p = commands.add_parser("budget", help="MAC cost report")
    p.add_argument("--input", help="video to select key-frames on")
    p.add_argument("--frames", type=int)
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--keys", help="key-frame JSON")
    p.set_defaults(handler=cmd_budget)

    p = commands.add_parser("ablate-window", help="key-frame count and cost per smoothing window")
    p.add_argument("input")
    p.add_argument("--windows", help="comma separated odd windows")
    p.set_defaults(handler=cmd_ablate_window)

    p = commands.add_parser("ablate-strategy", help="selection strategies at equal key-frame budget")
    p.add_argument("input")
    p.add_argument("--budget", type=int)
    p.set_defaults(handler=cmd_ablate_strategy)

    p = commands.add_parser("ablate-interpolation", help="OBMC against linear interpolation")
    p.add_argument("input")
    p.add_argument("--keys", help="key-frame JSON, selected from the input when omitted")
    p.set_defaults(handler=cmd_ablate_interpolation)

    for subparser in commands.choices.values():
        _common(subparser)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging()
    try:
        config = load_config(args)
        args.handler(args, config)
    except MotionAwareError as e:
        logger.error(f"{args.command} failed: {e}")
        return e.exit_code
    return ExitCodes.SUCCESS


if __name__ == "__main__":
    sys.exit(main())
