#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""Power-of-two resolution changes: f_R^d and its inverse for the oracle generator."""
import numpy as np

from motionaware.core.frames import FrameBuffer
from motionaware.exceptions import ValidationError

RESIZE_FILTERS = ("box", "bilinear")
UPSAMPLE_FILTERS = ("nearest", "bilinear")


def _check_factor(factor_d):
    if not isinstance(factor_d, (int, np.integer)) or factor_d < 0:
        raise ValidationError(f"resize factor d must be an integer >= 0, got {factor_d!r}")


def _bilinear_axis_weights(size_in, size_out):
    """Sample positions of output pixel centres on the input grid, clamped at the edges."""
    scale = size_in / size_out
    positions = (np.arange(size_out) + 0.5) * scale - 0.5
    positions = np.clip(positions, 0, size_in - 1)
    low = np.floor(positions).astype(int)
    high = np.minimum(low + 1, size_in - 1)
    frac = positions - low
    return low, high, frac


def _bilinear(samples, height_out, width_out):
    _, height_in, width_in = samples.shape
    y0, y1, fy = _bilinear_axis_weights(height_in, height_out)
    x0, x1, fx = _bilinear_axis_weights(width_in, width_out)
    fy = fy[:, np.newaxis]
    top = samples[:, y0][:, :, x0] + (samples[:, y0][:, :, x1] - samples[:, y0][:, :, x0]) * fx
    bottom = samples[:, y1][:, :, x0] + (samples[:, y1][:, :, x1] - samples[:, y1][:, :, x0]) * fx
    return np.clip(top + (bottom - top) * fy, 0.0, 1.0)


def resize(frame: FrameBuffer, factor_d: int, filter="box") -> FrameBuffer:
    """
    Reduce both sides of `frame` by 2**factor_d.

    `box` averages every 2^d x 2^d tile; `bilinear` samples the input at the
    output pixel centres.
    """
    _check_factor(factor_d)
    if filter not in RESIZE_FILTERS:
        raise ValidationError(f"unknown resize filter {filter!r}")
    if factor_d == 0:
        return frame
    step = 2 ** factor_d
    if frame.width % step or frame.height % step:
        raise ValidationError(
            f"frame {frame.width}x{frame.height} is not divisible by 2^{factor_d}"
        )
    c, h, w = frame.samples.shape
    if filter == "box":
        tiles = frame.samples.reshape(c, h // step, step, w // step, step)
        return FrameBuffer(np.clip(tiles.mean(axis=(2, 4)), 0.0, 1.0))
    return FrameBuffer(_bilinear(frame.samples, h // step, w // step))


def upsample(frame: FrameBuffer, factor_d: int, filter="nearest") -> FrameBuffer:
    """Enlarge both sides of `frame` by 2**factor_d."""
    _check_factor(factor_d)
    if filter not in UPSAMPLE_FILTERS:
        raise ValidationError(f"unknown upsample filter {filter!r}")
    if factor_d == 0:
        return frame
    step = 2 ** factor_d
    if filter == "nearest":
        return FrameBuffer(np.repeat(np.repeat(frame.samples, step, axis=1), step, axis=2))
    return FrameBuffer(_bilinear(frame.samples, frame.height * step, frame.width * step))
