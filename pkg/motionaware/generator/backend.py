#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
The part-time generator abstraction.

A backend turns one `GeneratorRequest` (p+1 low-resolution semantic maps
plus the p previously synthesized full-resolution frames) into one
full-resolution key-frame. `run_keyframes` drives a backend over the
key-frame indices of a semantic sequence, feeding every output back into
the next request.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Tuple

from motionaware.core.frames import FrameBuffer, Sequence
from motionaware.core.resize import resize, upsample
from motionaware.exceptions import BackendError, ValidationError
from motionaware.keyframe.selection import KeyframeSet

logger = logging.getLogger(__name__)

ORACLE_MODES = ("upsample-nearest", "upsample-bilinear")


@dataclass(frozen=True)
class GeneratorRequest:
    semantic_maps: Tuple[FrameBuffer, ...]
    previous_frames: Tuple[FrameBuffer, ...]
    p: int = 1
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "semantic_maps", tuple(self.semantic_maps))
        object.__setattr__(self, "previous_frames", tuple(self.previous_frames))
        if self.p < 0 or self.d < 0:
            raise ValidationError(f"p and d must be >= 0, got p={self.p} d={self.d}")
        if len(self.semantic_maps) != self.p + 1:
            raise ValidationError(
                f"request needs {self.p + 1} semantic maps, got {len(self.semantic_maps)}"
            )
        if len(self.previous_frames) != self.p:
            raise ValidationError(
                f"request needs {self.p} previous frames, got {len(self.previous_frames)}"
            )
        low = self.semantic_maps[0].dims
        for semantic_map in self.semantic_maps:
            if semantic_map.dims != low:
                raise ValidationError("semantic maps of one request differ in dims")
        width, height, channels = self.output_dims
        for frame in self.previous_frames:
            if frame.dims != (width, height, channels):
                raise ValidationError(
                    f"previous frame dims {frame.dims} do not match "
                    f"semantic maps upscaled by 2^{self.d}: {(width, height, channels)}"
                )

    @property
    def output_dims(self):
        """(W, H, channels) of the frame the backend must return."""
        w, h, c = self.semantic_maps[0].dims
        scale = 2 ** self.d
        return w * scale, h * scale, c

    @property
    def current_map(self) -> FrameBuffer:
        return self.semantic_maps[-1]


class GeneratorBackend(ABC):
    """Produces one full-resolution frame per request."""

    macs_per_frame = 0.0

    @abstractmethod
    def generate(self, request: GeneratorRequest) -> FrameBuffer:
        pass

    def close(self):
        pass

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()


def oracle_generate(request: GeneratorRequest, mode="upsample-nearest") -> FrameBuffer:
    """Upsample the most recent semantic map back to full resolution; previous frames are ignored."""
    if mode not in ORACLE_MODES:
        raise ValidationError(f"unknown oracle mode {mode!r}, expected one of {ORACLE_MODES}")
    return upsample(request.current_map, request.d, mode[len("upsample-"):])


class OracleBackend(GeneratorBackend):
    def __init__(self, mode="upsample-nearest", macs_per_frame=0.0):
        if mode not in ORACLE_MODES:
            raise ValidationError(f"unknown oracle mode {mode!r}, expected one of {ORACLE_MODES}")
        self.mode = mode
        self.macs_per_frame = macs_per_frame
        self.invocations = 0

    def generate(self, request: GeneratorRequest) -> FrameBuffer:
        self.invocations += 1
        return oracle_generate(request, self.mode)


def _check_output(frame: FrameBuffer, request: GeneratorRequest, index):
    if frame.dims != request.output_dims:
        raise BackendError(
            f"backend returned dims {frame.dims}, expected {request.output_dims}",
            frame_index=index,
        )


def build_request(
    semantic_seq: Sequence,
    key_indices,
    position,
    generated: List[FrameBuffer],
    fallback_frame: FrameBuffer,
    p,
    d,
) -> GeneratorRequest:
    """
    Request for the key at `position` in `key_indices`.

    Semantic context is the maps at the current and p previous key indices;
    positions before the first key replicate the first key. Previous frames
    are the p most recent outputs, padded at the start by replicating the
    first available one (the fallback frame when nothing was generated yet).
    """
    context = [key_indices[max(0, position - offset)] for offset in range(p, -1, -1)]
    maps = tuple(resize(semantic_seq[index], d, "box") for index in context)

    history = generated[-p:] if p else []
    pad_frame = history[0] if history else fallback_frame
    previous = tuple([pad_frame] * (p - len(history)) + list(history))
    return GeneratorRequest(maps, previous, p, d)


def run_keyframes(
    semantic_seq: Sequence,
    keys: KeyframeSet,
    backend: GeneratorBackend,
    p=1,
    d=1,
    initial_frame: Optional[FrameBuffer] = None,
) -> List[Tuple[int, FrameBuffer]]:
    """
    Synthesize the key-frames in order; every request carries the outputs of the previous keys.

    :param initial_frame: real frame the synthesis starts from; when absent
        the full-resolution semantic map at the first key stands in.
    :return: [(key index, frame)] in key order, one backend call per key
    """
    if keys.source_length != len(semantic_seq):
        raise ValidationError(
            f"key-frame set describes {keys.source_length} frames, sequence has {len(semantic_seq)}"
        )
    indices = keys.indices
    fallback = initial_frame if initial_frame is not None else semantic_seq[indices[0]]
    if fallback.dims != semantic_seq.dims:
        raise ValidationError(
            f"initial frame dims {fallback.dims} differ from sequence dims {semantic_seq.dims}"
        )

    generated = []
    outputs = []
    for position, index in enumerate(indices):
        request = build_request(semantic_seq, indices, position, generated, fallback, p, d)
        try:
            frame = backend.generate(request)
        except BackendError as e:
            if e.frame_index is None:
                e.frame_index = index
            logger.error(f"generator backend failed on key-frame {index}: {e}")
            raise
        _check_output(frame, request, index)
        generated.append(frame)
        outputs.append((index, frame))
    logger.info(f"generated {len(outputs)} key-frames of {len(semantic_seq)}")
    return outputs
