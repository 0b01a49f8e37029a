#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Predictive zonal block search.

For every block in raster order the predictor candidates are evaluated
first: zero, left neighbour, top neighbour, the component-wise median of
(left, top, top-right) and the collocated vector of an optional prior
field. Unavailable neighbours count as the zero vector. When the best
candidate is already under the early-exit threshold it is accepted,
otherwise a small-diamond (+-1 cross) descent runs from it until no
neighbour improves.
"""
import logging
from typing import Optional

import numpy as np

from motionaware.core.frames import FrameBuffer
from motionaware.motion.field import BlockMatcher, MotionField, SearchParams, optional_prior

logger = logging.getLogger(__name__)

SMALL_DIAMOND = ((0, -1), (-1, 0), (1, 0), (0, 1))


def _median3(a, b, c):
    return tuple(int(v) for v in np.median(np.array([a, b, c]), axis=0))


def predictor_candidates(vectors, bx, by, grid_w, prior_vector=None):
    """Ordered, de-duplicated predictor set for block (bx, by)."""
    zero = (0, 0)
    left = tuple(vectors[by][bx - 1]) if bx > 0 else zero
    top = tuple(vectors[by - 1][bx]) if by > 0 else zero
    top_right = tuple(vectors[by - 1][bx + 1]) if by > 0 and bx + 1 < grid_w else zero
    candidates = [zero, left, top, _median3(left, top, top_right)]
    if prior_vector is not None:
        candidates.append(prior_vector)

    ordered = []
    for candidate in candidates:
        if candidate not in ordered:
            ordered.append(candidate)
    return ordered


def _diamond_descent(matcher: BlockMatcher, bx, by, start, start_cost):
    best, best_cost = start, start_cost
    max_steps = (2 * matcher.search_range + 1) ** 2
    for _ in range(max_steps):
        step_best, step_cost = best, best_cost
        for ox, oy in SMALL_DIAMOND:
            candidate = (best[0] + ox, best[1] + oy)
            if not matcher.admissible(bx, by, *candidate):
                continue
            cost = matcher.sad(bx, by, *candidate)
            if cost < step_cost:
                step_best, step_cost = candidate, cost
        if step_best == best:
            break
        best, best_cost = step_best, step_cost
    return best, best_cost


def estimate_epzs(
    target: FrameBuffer,
    reference: FrameBuffer,
    params: SearchParams = SearchParams(),
    prior: Optional[MotionField] = None,
) -> MotionField:
    """
    :param target: frame whose blocks are predicted
    :param reference: frame the prediction reads from
    :param params: search range, early-exit threshold (SAD per pixel), block size
    :param prior: optional field whose collocated vectors join the candidates
    :return: MotionField from target to reference
    """
    matcher = BlockMatcher(target, reference, params.search_range, params.block_size)
    if prior is not None:
        prior.require_matches(target)
    exit_cost = params.early_exit_threshold * params.block_size * params.block_size

    vectors = [[(0, 0)] * matcher.grid_w for _ in range(matcher.grid_h)]
    costs = np.zeros((matcher.grid_h, matcher.grid_w))
    refined = 0
    for by in range(matcher.grid_h):
        for bx in range(matcher.grid_w):
            best, best_cost = None, None
            for candidate in predictor_candidates(
                vectors, bx, by, matcher.grid_w, optional_prior(prior, bx, by)
            ):
                if not matcher.admissible(bx, by, *candidate):
                    continue
                cost = matcher.sad(bx, by, *candidate)
                if best_cost is None or cost < best_cost:
                    best, best_cost = candidate, cost
            if best_cost > exit_cost:
                best, best_cost = _diamond_descent(matcher, bx, by, best, best_cost)
                refined += 1
            vectors[by][bx] = best
            costs[by, bx] = best_cost

    logger.debug(
        f"epzs: {matcher.grid_w}x{matcher.grid_h} blocks, {refined} refined by diamond search"
    )
    return matcher.field(vectors, costs)
