#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Motion-aware inference end to end.

select key-frames -> downsample semantics -> generate key-frames ->
interpolate every other frame -> account the compute spent.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from motionaware.compensate.interpolate import fill_sequence, gap_field
from motionaware.config import PipelineConfig
from motionaware.core.frames import FrameBuffer, Sequence
from motionaware.exceptions import ValidationError
from motionaware.generator.backend import GeneratorBackend, OracleBackend, run_keyframes
from motionaware.generator.subprocess_backend import SubprocessBackend
from motionaware.keyframe.curve import residual_curve
from motionaware.keyframe.selection import KeyframeSet, select_by_strategy
from motionaware.metrics.costs import CostReport, account_macs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SynthesisResult:
    video: Sequence
    keys: KeyframeSet
    costs: CostReport


def make_backend(config: PipelineConfig) -> GeneratorBackend:
    if config.backend == "subprocess":
        return SubprocessBackend(config.command, macs_per_frame=config.generator_gmacs_per_frame)
    return OracleBackend(config.oracle_mode, macs_per_frame=config.generator_gmacs_per_frame)


def select_keys(seq: Sequence, config: PipelineConfig) -> KeyframeSet:
    curve = residual_curve(seq) if config.strategy == "peaks" else None
    return select_by_strategy(
        curve, len(seq), config.strategy, config.window, config.gap, config.count, config.seed
    )


def cost_report(T, keys: KeyframeSet, dims, config: PipelineConfig, generator_gmacs=None) -> CostReport:
    """MAC accounting with the configured unit costs; `generator_gmacs` overrides the generator cost."""
    if generator_gmacs is None:
        generator_gmacs = config.generator_gmacs_per_frame
    return account_macs(
        T,
        keys,
        dims,
        generator_gmacs,
        config.block_size,
        config.epzs_macs_per_block,
        config.obmc_macs_per_pixel,
    )


def fill_from_keys(key_frames, T, config: PipelineConfig, method=None, frame_rate=25) -> Sequence:
    return fill_sequence(
        key_frames,
        T,
        method or config.method,
        config.search_params,
        config.obmc_params,
        frame_rate,
        config.workers,
    )


def reconstruct(seq: Sequence, keys: KeyframeSet, config: PipelineConfig, method=None) -> Sequence:
    """Keep the real frames at `keys` and interpolate the rest."""
    if keys.source_length != len(seq):
        raise ValidationError(f"key-frame set describes {keys.source_length} frames, sequence has {len(seq)}")
    key_frames = [(k, seq[k]) for k in keys.indices]
    return fill_from_keys(key_frames, len(seq), config, method, seq.frame_rate)


def gap_fields(seq: Sequence, keys: KeyframeSet, config: PipelineConfig):
    """(start, end, field) for every gap holding an interpolated frame, as OBMC sees it."""
    if keys.source_length != len(seq):
        raise ValidationError(f"key-frame set describes {keys.source_length} frames, sequence has {len(seq)}")
    return [
        (a, b, gap_field(seq[a], seq[b], config.search_params))
        for a, b in keys.gaps()
        if b - a > 1
    ]


def synthesize(
    semantic_seq: Sequence,
    config: PipelineConfig,
    backend: Optional[GeneratorBackend] = None,
    keys: Optional[KeyframeSet] = None,
    initial_frame: Optional[FrameBuffer] = None,
) -> SynthesisResult:
    """
    Run the whole pipeline on a semantic-map sequence.

    :param backend: generator to use, its `macs_per_frame` is what the report charges;
        built from `config` and closed afterwards when omitted
    :param keys: precomputed key-frames, selected by the configured strategy when omitted
    """
    T = len(semantic_seq)
    if keys is None:
        keys = select_keys(semantic_seq, config)
    logger.info(f"synthesizing {T} frames from {len(keys)} key-frames ({config.method})")

    owned = backend is None
    if owned:
        backend = make_backend(config)
    try:
        generated = run_keyframes(
            semantic_seq, keys, backend, config.p, config.d, initial_frame=initial_frame
        )
    finally:
        if owned:
            backend.close()

    video = fill_from_keys(generated, T, config, frame_rate=semantic_seq.frame_rate)
    costs = cost_report(T, keys, semantic_seq.dims, config, backend.macs_per_frame)
    logger.info(f"mean {costs.to_dict()['mean_gmacs_per_frame']:.4f} G-MACs per frame")
    return SynthesisResult(video, keys, costs)
