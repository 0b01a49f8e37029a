#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Frame and sequence data model.

A `FrameBuffer` holds one image as a read-only float64 array laid out
channel-planar, `(channels, height, width)`, with intensities in [0, 1].
A `Sequence` is an ordered tuple of equally sized frames plus a frame rate.
"""
from fractions import Fraction
from typing import Iterable, Iterator, Tuple, Union

import numpy as np

from motionaware.exceptions import ValidationError

ALLOWED_CHANNELS = (1, 3)


class FrameBuffer:
    __slots__ = ("_samples",)

    def __init__(self, samples):
        array = np.array(samples, dtype=np.float64)
        if array.ndim == 2:
            array = array[np.newaxis, :, :]
        if array.ndim != 3:
            raise ValidationError(
                f"frame samples must be (channels, height, width), got shape {array.shape}"
            )
        if array.shape[0] not in ALLOWED_CHANNELS:
            raise ValidationError(
                f"frame must have 1 or 3 channels, got {array.shape[0]}"
            )
        if array.shape[1] < 1 or array.shape[2] < 1:
            raise ValidationError(f"frame has empty dimensions {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValidationError("frame samples must be finite")
        if array.min() < 0.0 or array.max() > 1.0:
            raise ValidationError("frame intensities must lie in [0, 1]")
        array.setflags(write=False)
        self._samples = array

    @classmethod
    def from_bytes(cls, data: np.ndarray):
        """Builds a frame from 8-bit storage, mapping byte v to v/255."""
        return cls(np.asarray(data, dtype=np.uint8).astype(np.float64) / 255.0)

    @classmethod
    def constant(cls, width, height, value, channels=1):
        return cls(np.full((channels, height, width), float(value)))

    @property
    def samples(self) -> np.ndarray:
        return self._samples

    @property
    def width(self) -> int:
        return self._samples.shape[2]

    @property
    def height(self) -> int:
        return self._samples.shape[1]

    @property
    def channels(self) -> int:
        return self._samples.shape[0]

    @property
    def dims(self) -> Tuple[int, int, int]:
        """(width, height, channels)"""
        return self.width, self.height, self.channels

    def luma(self) -> np.ndarray:
        """Channel-averaged intensity plane, shape (height, width)."""
        if self.channels == 1:
            return self._samples[0]
        return self._samples.mean(axis=0)

    def to_bytes(self) -> np.ndarray:
        """8-bit quantization, round half up."""
        return np.clip(np.floor(self._samples * 255.0 + 0.5), 0, 255).astype(np.uint8)

    def quantized(self):
        return FrameBuffer.from_bytes(self.to_bytes())

    def require_motion_size(self, block_size=16):
        if self.width < block_size or self.height < block_size:
            raise ValidationError(
                f"frame {self.width}x{self.height} is smaller than one {block_size}x{block_size} block"
            )

    def __eq__(self, other):
        if not isinstance(other, FrameBuffer):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self._samples, other._samples)

    def __hash__(self):
        return hash((self.dims, self._samples.tobytes()))

    def __repr__(self):
        return f"FrameBuffer({self.width}x{self.height}x{self.channels})"


def require_same_dims(a: FrameBuffer, b: FrameBuffer, what="frames"):
    if a.dims != b.dims:
        raise ValidationError(f"{what} differ in dims: {a.dims} vs {b.dims}")


class Sequence:
    """Immutable ordered list of frames sharing width, height and channels."""

    __slots__ = ("_frames", "_frame_rate")

    def __init__(
        self,
        frames: Iterable[FrameBuffer],
        frame_rate: Union[Fraction, int, float, str] = Fraction(25, 1),
    ):
        frames = tuple(frames)
        if len(frames) < 2:
            raise ValidationError(
                f"a sequence needs at least 2 frames, got {len(frames)}"
            )
        first = frames[0]
        for index, frame in enumerate(frames):
            if not isinstance(frame, FrameBuffer):
                raise ValidationError(f"frame {index} is not a FrameBuffer")
            if frame.dims != first.dims:
                raise ValidationError(
                    f"frame {index} has dims {frame.dims}, expected {first.dims}"
                )
        frame_rate = Fraction(frame_rate)
        if frame_rate <= 0:
            raise ValidationError(f"frame rate must be positive, got {frame_rate}")
        self._frames = frames
        self._frame_rate = frame_rate

    @property
    def frames(self) -> Tuple[FrameBuffer, ...]:
        return self._frames

    @property
    def frame_rate(self) -> Fraction:
        return self._frame_rate

    @property
    def width(self) -> int:
        return self._frames[0].width

    @property
    def height(self) -> int:
        return self._frames[0].height

    @property
    def channels(self) -> int:
        return self._frames[0].channels

    @property
    def dims(self) -> Tuple[int, int, int]:
        return self._frames[0].dims

    def timestamps(self):
        """Presentation time of each frame in seconds."""
        return [float(index / self._frame_rate) for index in range(len(self))]

    def as_array(self) -> np.ndarray:
        """Stacked samples, shape (T, channels, height, width)."""
        return np.stack([frame.samples for frame in self._frames])

    def reversed(self):
        return Sequence(self._frames[::-1], self._frame_rate)

    def subsequence(self, indices):
        return Sequence([self._frames[i] for i in indices], self._frame_rate)

    def __len__(self):
        return len(self._frames)

    def __iter__(self) -> Iterator[FrameBuffer]:
        return iter(self._frames)

    def __getitem__(self, index) -> FrameBuffer:
        return self._frames[index]

    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        return self._frame_rate == other._frame_rate and self._frames == other._frames

    def __repr__(self):
        w, h, c = self.dims
        return f"Sequence(T={len(self)}, {w}x{h}x{c}, fps={self._frame_rate})"
