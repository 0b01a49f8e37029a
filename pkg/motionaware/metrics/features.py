#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""Clip feature extractors used by the perceptual and global temporal losses."""
from abc import ABC, abstractmethod
from typing import Iterable

import numpy as np

from motionaware.core.frames import FrameBuffer
from motionaware.exceptions import ValidationError

GRID = 4


def clip_frames(clip) -> tuple:
    """Frames of a `Sequence`, a single `FrameBuffer` or any iterable of frames."""
    frames = (clip,) if isinstance(clip, FrameBuffer) else tuple(clip)
    if not frames:
        raise ValidationError("clip has no frames")
    for frame in frames:
        if not isinstance(frame, FrameBuffer):
            raise ValidationError(f"clip items must be FrameBuffer, got {type(frame).__name__}")
        if frame.dims != frames[0].dims:
            raise ValidationError("clip frames differ in dims")
    return frames


class FeatureExtractor(ABC):
    """Maps a clip to a feature vector of fixed length; must be deterministic and reentrant."""

    dimensions = 0

    @abstractmethod
    def extract(self, clip: Iterable[FrameBuffer]) -> np.ndarray:
        pass

    def __call__(self, clip) -> np.ndarray:
        return self.extract(clip)


def _cell_edges(size):
    return [(size * k) // GRID for k in range(GRID + 1)]


def _grid_means(volume):
    """Mean of a (T, H, W) volume over each cell of a GRID x GRID partition of (H, W); empty cells are 0."""
    _, height, width = volume.shape
    rows, cols = _cell_edges(height), _cell_edges(width)
    means = np.zeros((GRID, GRID))
    for i in range(GRID):
        for j in range(GRID):
            cell = volume[:, rows[i]:rows[i + 1], cols[j]:cols[j + 1]]
            if cell.size:
                means[i, j] = cell.mean()
    return means.ravel()


class ReferenceExtractor(FeatureExtractor):
    """
    Hand-specified 64-dimensional clip descriptor.

    On the channel-averaged clip, for every cell of a 4x4 grid (row-major):
    mean |temporal difference| of consecutive frames, mean |horizontal
    forward difference|, mean |vertical forward difference| and mean
    intensity. The vector is the four 16-cell blocks in that order.
    Forward differences read 0 on the last column/row; a one-frame clip has
    zero temporal cells.
    """

    dimensions = 4 * GRID * GRID

    def extract(self, clip) -> np.ndarray:
        luma = np.stack([frame.luma() for frame in clip_frames(clip)])
        if luma.shape[0] > 1:
            temporal = np.abs(np.diff(luma, axis=0))
        else:
            temporal = np.zeros_like(luma)
        horizontal = np.abs(np.diff(luma, axis=2, append=luma[:, :, -1:]))
        vertical = np.abs(np.diff(luma, axis=1, append=luma[:, -1:, :]))
        return np.concatenate(
            [_grid_means(temporal), _grid_means(horizontal), _grid_means(vertical), _grid_means(luma)]
        )


def reference_extractor(clip) -> np.ndarray:
    return ReferenceExtractor().extract(clip)
