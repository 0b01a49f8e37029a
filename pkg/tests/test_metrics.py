#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
import math

import numpy as np
import pytest

from motionaware.core.frames import FrameBuffer, Sequence
from motionaware.exceptions import ValidationError
from motionaware.metrics import (
    FeatureExtractor,
    LossWeights,
    ReferenceExtractor,
    combine_tkd,
    loss_gtkd,
    loss_kd,
    loss_ltkd,
    loss_skd,
    loss_tkd,
    mse_frames,
    perceptual_distance,
    psnr_frames,
    reconstruction_mse,
    reference_extractor,
    sequence_psnr,
)
from tests.helpers import level_sequence, random_frame


class ZeroExtractor(FeatureExtractor):
    dimensions = 1

    def extract(self, clip):
        return np.zeros(1)


def bar_clip(positions, width=16, height=16):
    """Bright 4x4 bar on rows 4..7 at each given left column."""
    frames = []
    for x in positions:
        plane = np.zeros((height, width))
        plane[4:8, x:x + 4] = 1.0
        frames.append(FrameBuffer(plane))
    return Sequence(frames)


def test_frame_errors():
    black = FrameBuffer.constant(8, 8, 0.0)
    white = FrameBuffer.constant(8, 8, 1.0)
    assert mse_frames(black, black) == 0.0
    assert mse_frames(black, white) == 1.0
    assert mse_frames(FrameBuffer([[0.25]]), FrameBuffer([[0.75]])) == 0.25

    assert psnr_frames(black, black) == math.inf
    assert psnr_frames(black, white) == 0.0
    assert psnr_frames(FrameBuffer.constant(8, 8, 0.5), FrameBuffer.constant(8, 8, 0.6)) == pytest.approx(20.0)

    with pytest.raises(ValidationError):
        mse_frames(black, FrameBuffer.constant(4, 8, 0.0))


def test_sequence_errors():
    pred = level_sequence([0.5, 0.5])
    reference = level_sequence([0.5, 0.6])
    assert reconstruction_mse(pred, reference) == pytest.approx(0.005)
    # one exact frame does not make the sequence value infinite
    assert sequence_psnr(pred, reference) == pytest.approx(10 * math.log10(200))
    assert sequence_psnr(pred, pred) == math.inf
    assert sequence_psnr(reference, level_sequence([0.4, 0.5])) == pytest.approx(20.0)
    with pytest.raises(ValidationError):
        reconstruction_mse(pred, level_sequence([0.5, 0.5, 0.5]))


def test_reference_extractor_on_constant_clip():
    features = reference_extractor(level_sequence([0.3, 0.3, 0.3]))
    assert features.shape == (ReferenceExtractor.dimensions,) == (64,)
    assert not features[:48].any()
    np.testing.assert_allclose(features[48:], 0.3)


def test_reference_extractor_on_translating_bar():
    temporal = reference_extractor(bar_clip([0, 4, 8]))[:16].reshape(4, 4)
    np.testing.assert_allclose(temporal[1], [0.5, 1.0, 0.5, 0.0])
    assert not temporal[[0, 2, 3]].any()


def test_reference_extractor_edge_cases(rng):
    single = reference_extractor(random_frame(rng, 16, 16))
    assert not single[:16].any()

    tiny = reference_extractor([FrameBuffer([[0.0, 1.0], [1.0, 0.0]])])
    assert tiny.shape == (64,)
    assert np.all(np.isfinite(tiny))

    frames = [random_frame(rng, 20, 12, channels=3) for _ in range(3)]
    copies = [FrameBuffer(f.samples.copy()) for f in frames]
    np.testing.assert_array_equal(reference_extractor(frames), reference_extractor(copies))

    with pytest.raises(ValidationError):
        reference_extractor([])
    with pytest.raises(ValidationError):
        reference_extractor([frames[0], random_frame(rng, 16, 16)])


def test_perceptual_distance(rng):
    black = FrameBuffer.constant(16, 16, 0.0)
    white = FrameBuffer.constant(16, 16, 1.0)
    # only the 16 mean cells differ, by 1 each
    assert perceptual_distance(black, white) == 0.25
    assert perceptual_distance(black, black) == 0.0

    a, b = random_frame(rng, 16, 16), random_frame(rng, 16, 16)
    assert perceptual_distance(a, b) == perceptual_distance(b, a)
    assert perceptual_distance(a, b, ZeroExtractor()) == 0.0


def test_losses_vanish_on_identical_inputs(gray_sequence):
    assert loss_skd(gray_sequence, gray_sequence) == 0.0
    assert loss_ltkd(gray_sequence, gray_sequence) == 0.0
    assert loss_gtkd(gray_sequence, gray_sequence) == 0.0
    assert loss_tkd(gray_sequence, gray_sequence) == 0.0
    assert loss_kd(0.0, 0.0) == 0.0


def test_loss_skd_examples(gray_sequence):
    teacher = level_sequence([0.0, 0.0, 0.0])
    student = level_sequence([1.0, 1.0, 1.0])
    assert loss_skd(student, teacher, ZeroExtractor()) == 1.0
    assert loss_ltkd(student, teacher, ZeroExtractor()) == 1.0
    # mse 0.25 plus 16 mean cells off by 0.5
    assert loss_skd(level_sequence([0.5, 0.5]), level_sequence([0.0, 0.0])) == pytest.approx(0.3125)

    shuffled = Sequence(gray_sequence.frames[::-1])
    assert loss_skd(shuffled, gray_sequence) > 0.0

    with pytest.raises(ValidationError):
        loss_skd(student, level_sequence([0.0, 0.0]))


def test_loss_gtkd(rng, gray_sequence):
    frames = list(gray_sequence.frames)
    frames[2] = random_frame(rng, 48, 32)
    assert loss_gtkd(Sequence(frames), gray_sequence) > 0.0

    static = bar_clip([0, 0, 0])
    moving = bar_clip([0, 4, 8])
    assert loss_gtkd(moving, static) > 0.0
    assert loss_gtkd(moving, static) == loss_gtkd(static, moving)


def test_weighted_combinations():
    assert combine_tkd(0.1, 0.02) == pytest.approx(0.5, abs=1e-15)
    assert loss_kd(0.3, 0.2) == pytest.approx(0.7, abs=1e-15)
    assert combine_tkd(0.1, 0.02, LossWeights(alpha=0.0, beta=1.0)) == 0.02
    assert loss_kd(0.3, 0.2, LossWeights(gamma=0.0)) == 0.3
    assert combine_tkd(0.0, 0.0) == 0.0


def test_losses_are_linear_in_weights(gray_sequence):
    student = Sequence(gray_sequence.frames[::-1])
    base = LossWeights(alpha=1.5, beta=4.0, sigma=0.5, gamma=3.0)
    double = LossWeights(alpha=3.0, beta=8.0, sigma=1.0, gamma=6.0)
    tkd = loss_tkd(student, gray_sequence, base)
    assert loss_tkd(student, gray_sequence, double) == pytest.approx(2 * tkd)
    assert loss_kd(0.4, tkd, double) == pytest.approx(2 * loss_kd(0.4, tkd, base))
    assert tkd == pytest.approx(
        1.5 * loss_ltkd(student, gray_sequence) + 4.0 * loss_gtkd(student, gray_sequence)
    )


def test_loss_weights_validation():
    assert LossWeights().to_dict() == {"alpha": 2.0, "beta": 15.0, "sigma": 1.0, "gamma": 2.0}
    with pytest.raises(ValidationError):
        LossWeights(alpha=-1.0)
    with pytest.raises(ValidationError):
        LossWeights(gamma=float("nan"))
