#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Tuple

import numpy as np

from motionaware.compensate.obmc import ObmcParams, obmc_predict
from motionaware.core.frames import FrameBuffer, Sequence, require_same_dims
from motionaware.exceptions import ValidationError
from motionaware.motion.epzs import estimate_epzs
from motionaware.motion.field import MotionField, SearchParams

logger = logging.getLogger(__name__)

METHODS = ("obmc", "linear")


def _check_t_frac(t_frac):
    if not 0.0 < t_frac < 1.0:
        raise ValidationError(f"t_frac must lie in the open interval (0, 1), got {t_frac}")


def interpolate_linear(key_a: FrameBuffer, key_b: FrameBuffer, t_frac) -> FrameBuffer:
    _check_t_frac(t_frac)
    require_same_dims(key_a, key_b, "key frames")
    blended = (1.0 - t_frac) * key_a.samples + t_frac * key_b.samples
    return FrameBuffer(np.clip(blended, 0.0, 1.0))


def _blend_predictions(key_a, key_b, field: MotionField, t_frac, params: ObmcParams):
    forward = obmc_predict(key_a, field.scaled(t_frac), params)
    backward = obmc_predict(key_b, field.scaled(-(1.0 - t_frac)), params)
    blended = (1.0 - t_frac) * forward.samples + t_frac * backward.samples
    return FrameBuffer(np.clip(blended, 0.0, 1.0))


def gap_field(key_a, key_b, search: SearchParams) -> MotionField:
    """Field from key_b back to key_a; scaled both ways for the bidirectional blend."""
    require_same_dims(key_a, key_b, "key frames")
    return estimate_epzs(key_b, key_a, search)


def interpolate_obmc(
    key_a: FrameBuffer,
    key_b: FrameBuffer,
    t_frac,
    search: SearchParams = SearchParams(),
    params: ObmcParams = ObmcParams(),
) -> FrameBuffer:
    _check_t_frac(t_frac)
    return _blend_predictions(key_a, key_b, gap_field(key_a, key_b, search), t_frac, params)


def _fill_gap(start, end, frame_a, frame_b, method, search, params):
    if end - start < 2:
        return []
    field = gap_field(frame_a, frame_b, search) if method == "obmc" else None
    filled = []
    for j in range(start + 1, end):
        t_frac = (j - start) / (end - start)
        if method == "obmc":
            filled.append((j, _blend_predictions(frame_a, frame_b, field, t_frac, params)))
        else:
            filled.append((j, interpolate_linear(frame_a, frame_b, t_frac)))
    logger.debug(f"filled gap ({start}, {end}) with {end - start - 1} {method} frames")
    return filled


def fill_sequence(
    keys: List[Tuple[int, FrameBuffer]],
    T,
    method="obmc",
    search: SearchParams = SearchParams(),
    params: ObmcParams = ObmcParams(),
    frame_rate=25,
    workers=1,
) -> Sequence:
    """
    Complete a sequence of length T from its key frames.

    Key frames are kept verbatim; every frame j strictly between keys k_i and
    k_i+1 is synthesized at t_frac = (j - k_i) / (k_i+1 - k_i). One motion
    field is estimated per gap.
    """
    if method not in METHODS:
        raise ValidationError(f"unknown interpolation method {method!r}, expected one of {METHODS}")
    keys = list(keys)
    indices = [index for index, _ in keys]
    if len(keys) < 2 or indices[0] != 0 or indices[-1] != T - 1:
        raise ValidationError(f"key frames must start at 0 and end at {T - 1}, got {indices}")
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise ValidationError(f"key frame indices must strictly increase: {indices}")

    frames = dict(keys)
    gaps = [(a, b) for (a, _), (b, _) in zip(keys, keys[1:])]
    jobs = [(a, b, frames[a], frames[b], method, search, params) for a, b in gaps]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda job: _fill_gap(*job), jobs))
    else:
        results = [_fill_gap(*job) for job in jobs]

    for filled in results:
        frames.update(filled)
    logger.info(f"filled {T - len(keys)} of {T} frames by {method} interpolation")
    return Sequence([frames[j] for j in range(T)], frame_rate)
