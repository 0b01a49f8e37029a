#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from motionaware.core.frames import FrameBuffer
from motionaware.core.resize import resize, upsample
from motionaware.exceptions import ValidationError
from tests.helpers import blocky_frame


def test_constant_frame_halves():
    out = resize(FrameBuffer.constant(32, 32, 0.5), 1)
    assert out.dims == (16, 16, 1)
    assert np.all(out.samples == 0.5)


def test_box_average():
    out = resize(FrameBuffer(np.array([[0.0, 1.0], [1.0, 0.0]])), 1, "box")
    assert out.dims == (1, 1, 1)
    assert out.samples[0, 0, 0] == 0.5


def test_downscale_dims():
    assert resize(FrameBuffer.constant(512, 512, 0.1), 1).dims == (256, 256, 1)
    assert resize(FrameBuffer.constant(512, 256, 0.1, channels=3), 2, "bilinear").dims == (128, 64, 3)


@pytest.mark.parametrize("filter", ["box", "bilinear"])
def test_zero_factor_is_identity(filter, gray_sequence):
    frame = gray_sequence[0]
    assert resize(frame, 0, filter) == frame


def test_box_preserves_mean(rng):
    frame = FrameBuffer(rng.random((3, 32, 64)))
    out = resize(frame, 2, "box")
    assert out.samples.mean() == pytest.approx(frame.samples.mean(), abs=1e-12)


def test_bilinear_of_constant_is_constant():
    out = resize(FrameBuffer.constant(64, 32, 0.3), 1, "bilinear")
    np.testing.assert_allclose(out.samples, 0.3, atol=1e-15)


def test_resize_errors():
    frame = FrameBuffer.constant(31, 32, 0.5)
    with pytest.raises(ValidationError):
        resize(frame, 1)
    with pytest.raises(ValidationError):
        resize(FrameBuffer.constant(32, 32, 0.5), -1)
    with pytest.raises(ValidationError):
        resize(FrameBuffer.constant(32, 32, 0.5), 1, "lanczos")


def test_nearest_upsample_inverts_box(rng):
    frame = blocky_frame(rng, 32, 16)
    small = resize(frame, 1, "box")
    assert upsample(small, 1, "nearest") == frame

    up = upsample(FrameBuffer(np.array([[0.25]])), 2, "bilinear")
    assert up.dims == (4, 4, 1)
    np.testing.assert_allclose(up.samples, 0.25)
