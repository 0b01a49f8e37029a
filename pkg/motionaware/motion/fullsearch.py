#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""Exhaustive block matching over the whole search window, used as the oracle for EPZS."""
import logging

import numpy as np

from motionaware.core.frames import FrameBuffer
from motionaware.motion.field import BlockMatcher, MotionField, SearchParams

logger = logging.getLogger(__name__)

# vectorized sums may differ from per-block sums in the last bits
_NEAR_TIE = 1e-9


def _best_vector(matcher: BlockMatcher, bx, by):
    r = matcher.search_range
    window = matcher.search_window(bx, by)
    costs = np.abs(window - matcher.target_block(bx, by)).sum(axis=(2, 3))

    offsets = np.arange(-r, r + 1)
    dy, dx = np.meshgrid(offsets, offsets, indexing="ij")
    x, y = matcher.origin(bx, by)
    b = matcher.block_size
    inside = (x + dx > -b) & (x + dx < matcher.width) & (y + dy > -b) & (y + dy < matcher.height)
    costs[~inside] = np.inf

    near = np.argwhere(costs <= costs.min() + _NEAR_TIE)
    ranked = []
    for iy, ix in near:
        vx, vy = int(dx[iy, ix]), int(dy[iy, ix])
        # exact cost, then |dx|+|dy|, then raster order (dy, dx)
        ranked.append((matcher.sad(bx, by, vx, vy), abs(vx) + abs(vy), vy, vx))
    cost, _, vy, vx = min(ranked)
    return (vx, vy), cost


def estimate_fullsearch(
    target: FrameBuffer, reference: FrameBuffer, params: SearchParams = SearchParams()
) -> MotionField:
    matcher = BlockMatcher(target, reference, params.search_range, params.block_size)
    vectors = np.zeros((matcher.grid_h, matcher.grid_w, 2), dtype=np.int64)
    costs = np.zeros((matcher.grid_h, matcher.grid_w))
    for by in range(matcher.grid_h):
        for bx in range(matcher.grid_w):
            vectors[by, bx], costs[by, bx] = _best_vector(matcher, bx, by)
    logger.debug(f"full search: {matcher.grid_w}x{matcher.grid_h} blocks, range {params.search_range}")
    return matcher.field(vectors, costs)
