#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Overlapped block motion compensation.

Each block carries a bilinear (triangular) window of support 2 x block_size
centred on the block. A pixel therefore sees at most four windows: its own
block, the horizontal and vertical neighbours towards it and the diagonal
one between them. The prediction is the bilinear blend of the four
displaced reads; windows that fall outside the grid reuse the own block's
vector, so the weights always sum to one.
"""
import logging
from dataclasses import dataclass

import numpy as np

from motionaware.core.frames import FrameBuffer
from motionaware.exceptions import ValidationError
from motionaware.motion.field import MotionField, displaced_read

logger = logging.getLogger(__name__)

OBMC_WINDOWS = ("bilinear",)


@dataclass(frozen=True)
class ObmcParams:
    block_size: int = 16
    window: str = "bilinear"

    def __post_init__(self):
        if self.block_size <= 0:
            raise ValidationError(f"OBMC block size must be positive, got {self.block_size}")
        if self.window not in OBMC_WINDOWS:
            raise ValidationError(f"unknown OBMC window {self.window!r}")


def _axis_neighbours(size, block_size, grid):
    """Own block, neighbour block and neighbour weight for every coordinate on one axis."""
    coords = np.arange(size)
    own = coords // block_size
    offset = (coords - (own * block_size + (block_size - 1) / 2.0)) / block_size
    neighbour = own + np.where(offset >= 0, 1, -1)
    outside = (neighbour < 0) | (neighbour >= grid)
    neighbour = np.where(outside, own, neighbour)
    return own, neighbour, np.abs(offset)


def _lerp(a, b, weight):
    # exact when a == b
    return a + (b - a) * weight


def obmc_predict(reference: FrameBuffer, field: MotionField, params: ObmcParams = ObmcParams()) -> FrameBuffer:
    if field.block_size != params.block_size:
        raise ValidationError(
            f"field block size {field.block_size} differs from OBMC block size {params.block_size}"
        )
    field.require_matches(reference)
    b = params.block_size
    own_x, next_x, weight_x = _axis_neighbours(reference.width, b, field.grid_w)
    own_y, next_y, weight_y = _axis_neighbours(reference.height, b, field.grid_h)

    def read(rows, cols):
        vectors = field.vectors[rows[:, None], cols[None, :]]
        return displaced_read(reference, vectors[..., 0], vectors[..., 1])

    wx = weight_x[None, None, :]
    wy = weight_y[None, :, None]
    top = _lerp(read(own_y, own_x), read(own_y, next_x), wx)
    bottom = _lerp(read(next_y, own_x), read(next_y, next_x), wx)
    return FrameBuffer(np.clip(_lerp(top, bottom, wy), 0.0, 1.0))
