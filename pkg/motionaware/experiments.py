#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""Ablations: key-frame window trade-off, selection strategies at equal budget, interpolation methods."""
import logging
import math

from motionaware.config import PipelineConfig
from motionaware.core.frames import Sequence
from motionaware.exceptions import ValidationError
from motionaware.keyframe.curve import residual_curve
from motionaware.keyframe.selection import (
    KeyframeSet,
    select_fixed_gap,
    select_keyframes,
    select_random_gap,
)
from motionaware.metrics.losses import loss_gtkd, reconstruction_mse, sequence_psnr
from motionaware.pipeline import cost_report, reconstruct

logger = logging.getLogger(__name__)

DEFAULT_WINDOWS = (1, 3, 5, 7, 9)


def window_sweep(seq: Sequence, config: PipelineConfig = PipelineConfig(), windows=DEFAULT_WINDOWS):
    """
    Key-frame count, mean cost per frame and reconstruction quality for each
    smoothing window: the compute side and the quality side of the trade-off.

    Windows longer than the residual curve are skipped.
    """
    curve = residual_curve(seq)
    rows = []
    for window in windows:
        if window > len(curve):
            logger.warning(f"window {window} exceeds the curve length {len(curve)}, skipped")
            continue
        keys = select_keyframes(curve, window, len(seq))
        costs = cost_report(len(seq), keys, seq.dims, config)
        row = {"window": window, **_score(seq, keys, config)}
        row["mean_gmacs_per_frame"] = costs.to_dict()["mean_gmacs_per_frame"]
        logger.info(f"window {window}: {row['keyframes']} key-frames, mse {row['mse']:.6f}")
        rows.append(row)
    return rows


def _score(seq, keys, config, method=None):
    """Reconstruction from the real key-frames; `loss_gtkd` is the clip-level feature distance."""
    video = reconstruct(seq, keys, config, method)
    return {
        "keyframes": len(keys),
        "indices": list(keys.indices),
        "mse": reconstruction_mse(video, seq),
        "psnr": sequence_psnr(video, seq),
        "loss_gtkd": loss_gtkd(video, seq),
    }


def equal_budget_keys(seq: Sequence, budget, seed=0):
    """Fixed-gap and random key-frame sets holding about `budget` key-frames."""
    T = len(seq)
    budget = max(2, min(int(budget), T))
    gap = max(1, math.ceil((T - 1) / (budget - 1)))
    return {
        "fixed": select_fixed_gap(T, min(gap, T - 1)),
        "random": select_random_gap(T, budget, seed),
    }


def compare_strategies(seq: Sequence, config: PipelineConfig = PipelineConfig(), budget=None):
    """
    Reconstruction error of peak, fixed-gap and random-gap selection.

    The baselines get as many key-frames as the peak selector chose, or
    `budget` when given. Every strategy interpolates from the real frames.
    """
    peaks = select_keyframes(residual_curve(seq), config.window, len(seq))
    budget = len(peaks) if budget is None else budget
    if budget < 2:
        raise ValidationError(f"key-frame budget must be >= 2, got {budget}")
    strategies = {"peaks": peaks}
    strategies.update(equal_budget_keys(seq, budget, config.seed))
    results = {name: _score(seq, keys, config) for name, keys in strategies.items()}
    for name, row in results.items():
        logger.info(f"{name}: {row['keyframes']} key-frames, mse {row['mse']:.6f}")
    return results


def compare_interpolation(seq: Sequence, keys: KeyframeSet, config: PipelineConfig = PipelineConfig()):
    """Reconstruction error of OBMC against linear blending over the same key-frames."""
    return {method: _score(seq, keys, config, method) for method in ("obmc", "linear")}
