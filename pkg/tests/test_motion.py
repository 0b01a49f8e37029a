#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from motionaware.core.frames import FrameBuffer
from motionaware.exceptions import FormatError, ValidationError
from motionaware.motion import (
    MotionField,
    SearchParams,
    compensate_blocks,
    estimate_epzs,
    estimate_fullsearch,
)
from motionaware.motion.epzs import predictor_candidates
from motionaware.motion.field import recompute_costs, round_half_away
from tests.helpers import random_frame, translation_pair

INTERIOR = (slice(1, 3), slice(1, 3))


def test_identical_frames_give_zero_field(rng):
    f = random_frame(rng, 48, 32)
    for estimate in (estimate_epzs, estimate_fullsearch):
        field = estimate(f, f)
        assert (field.grid_w, field.grid_h) == (3, 2)
        assert not field.vectors.any()
        assert not field.costs.any()


def test_epzs_finds_translation():
    target, reference = translation_pair(2, 3)
    field = estimate_epzs(target, reference)
    assert (field.grid_w, field.grid_h) == (4, 4)
    for by in range(1, 3):
        for bx in range(1, 3):
            assert tuple(field.vectors[by, bx]) == (2, 3)
            assert field.costs[by, bx] == 0.0


def test_epzs_matches_full_search_on_translations():
    params = SearchParams(search_range=8)
    for dy in range(-8, 9):
        for dx in range(-8, 9):
            target, reference = translation_pair(dx, dy)
            fast = estimate_epzs(target, reference, params)
            exhaustive = estimate_fullsearch(target, reference, params)
            expected = np.broadcast_to(np.array([dx, dy]), (2, 2, 2))
            np.testing.assert_array_equal(fast.vectors[INTERIOR], expected, err_msg=f"{(dx, dy)}")
            np.testing.assert_array_equal(exhaustive.vectors[INTERIOR], expected)
            assert not fast.costs[INTERIOR].any()


def test_stored_costs_and_full_search_bound(rng):
    params = SearchParams(search_range=6)
    for _ in range(3):
        target = random_frame(rng, 40, 24)
        reference = random_frame(rng, 40, 24)
        fast = estimate_epzs(target, reference, params)
        exhaustive = estimate_fullsearch(target, reference, params)

        np.testing.assert_allclose(recompute_costs(target, reference, fast), fast.costs)
        np.testing.assert_allclose(recompute_costs(target, reference, exhaustive), exhaustive.costs)
        assert np.all(exhaustive.costs <= fast.costs + 1e-9)
        assert fast.max_displacement() <= 6
        assert exhaustive.max_displacement() <= 6


def test_epzs_is_deterministic(rng):
    target = random_frame(rng, 48, 48)
    reference = random_frame(rng, 48, 48)
    assert estimate_epzs(target, reference) == estimate_epzs(target, reference)


def test_epzs_with_prior_field():
    target, reference = translation_pair(-3, 1)
    first = estimate_epzs(target, reference)
    again = estimate_epzs(target, reference, prior=first)
    for by in range(1, 3):
        for bx in range(1, 3):
            assert tuple(again.vectors[by, bx]) == (-3, 1)

    with pytest.raises(ValidationError):
        estimate_epzs(target, reference, prior=MotionField.zeros(32, 32))


def test_predictor_candidates_order():
    vectors = [[(1, 0), (2, 2), (5, 5)], [(1, 0), (0, 0), (0, 0)]]
    # block (1, 1): left (1, 0), top (2, 2), top-right (5, 5), median (2, 2)
    assert predictor_candidates(vectors, 1, 1, 3) == [(0, 0), (1, 0), (2, 2)]
    assert predictor_candidates(vectors, 0, 0, 3, prior_vector=(4, -1)) == [(0, 0), (4, -1)]


def test_estimators_reject_small_or_mismatched_frames(rng):
    with pytest.raises(ValidationError):
        estimate_epzs(random_frame(rng, 8, 32), random_frame(rng, 8, 32))
    with pytest.raises(ValidationError):
        estimate_fullsearch(random_frame(rng, 32, 32), random_frame(rng, 48, 32))
    with pytest.raises(ValidationError):
        SearchParams(search_range=0)


def test_compensate_blocks():
    target, reference = translation_pair(2, 3)
    assert compensate_blocks(reference, MotionField.zeros(64, 64)) == reference

    predicted = compensate_blocks(reference, MotionField.uniform(64, 64, (2, 3)))
    np.testing.assert_array_equal(
        predicted.samples[:, :61, :62], target.samples[:, :61, :62]
    )

    with pytest.raises(ValidationError):
        compensate_blocks(reference, MotionField.zeros(32, 64))


def test_compensate_blocks_per_block_vectors():
    ramp = FrameBuffer(np.tile(np.arange(32) / 31.0, (16, 1)))
    field = MotionField(16, 2, 1, [(0, 0), (-4, 0)], [0.0, 0.0])
    predicted = compensate_blocks(ramp, field)
    np.testing.assert_array_equal(predicted.samples[0, :, :16], ramp.samples[0, :, :16])
    np.testing.assert_array_equal(predicted.samples[0, :, 16:], ramp.samples[0, :, 12:28])


def test_scaled_rounds_half_away_from_zero():
    field = MotionField(16, 2, 1, [(3, -3), (1, -1)], [1.0, 2.0])
    half = field.scaled(0.5)
    assert half.vectors.reshape(-1, 2).tolist() == [[2, -2], [1, -1]]
    assert not half.costs.any()
    assert round_half_away([2.5, -2.5, 0.49, -0.5]).tolist() == [3, -3, 0, -1]


def test_motion_field_json():
    field = MotionField(16, 2, 1, [(3, -3), (1, -1)], [1.5, 0.0])
    assert MotionField.from_dict(field.to_dict()) == field
    assert field.to_dict()["vectors"] == [[3, -3], [1, -1]]

    data = field.to_dict()
    data["costs"] = [1.0]
    with pytest.raises(FormatError):
        MotionField.from_dict(data)

    data = field.to_dict()
    data["vectors"] = [[3, -3, 0], [1, -1]]
    with pytest.raises(FormatError):
        MotionField.from_dict(data)

    with pytest.raises(ValidationError):
        MotionField(16, 1, 1, [(0, 0)], [-1.0])
