#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np

from motionaware.core.frames import FrameBuffer, Sequence

# bump centred on block (1, 1) of a 64x64 frame with 16x16 blocks
BUMP_CENTRE = (23.5, 23.5)


def bump_plane(width=64, height=64, centre=BUMP_CENTRE, sigma=12.0, base=0.1, amplitude=0.8):
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    cx, cy = centre
    return base + amplitude * np.exp(-((xs - cx) ** 2 + (ys - cy) ** 2) / (2 * sigma * sigma))


def ridge_plane(width=64, height=64, x=20.0, sigma=6.0, base=0.1, amplitude=0.8):
    """Soft vertical bar."""
    xs = np.arange(width, dtype=np.float64)
    row = base + amplitude * np.exp(-((xs - x) ** 2) / (2 * sigma * sigma))
    return np.tile(row, (height, 1))


def shift_plane(plane, dx, dy):
    """out[y, x] = plane[y - dy, x - dx] with edge replication, so out block at p+(dx,dy) shows plane at p."""
    height, width = plane.shape
    ys = np.clip(np.arange(height) - dy, 0, height - 1)
    xs = np.clip(np.arange(width) - dx, 0, width - 1)
    return plane[ys[:, None], xs[None, :]]


def frame(plane):
    return FrameBuffer(plane)


def translation_pair(dx, dy, **kwargs):
    """(target, reference): the target seen in the reference displaced by (dx, dy)."""
    target = bump_plane(**kwargs)
    return frame(target), frame(shift_plane(target, dx, dy))


def translating_sequence(T, dx, dy, plane=None):
    plane = bump_plane() if plane is None else plane
    return Sequence([frame(shift_plane(plane, dx * t, dy * t)) for t in range(T)])


def level_sequence(levels, width=16, height=16):
    return Sequence([FrameBuffer.constant(width, height, level) for level in levels])


def transient_levels(T, start, length, base=0.2, high=0.8):
    """Constant `base` video with frames [start, start + length) raised to `high`."""
    levels = [base] * T
    for t in range(start, start + length):
        levels[t] = high
    return levels


def burst_sequence(T, change_at, width=16, height=16):
    """A single abrupt change between frames change_at - 1 and change_at."""
    return level_sequence([0.2 if t < change_at else 0.7 for t in range(T)], width, height)


def random_frame(rng, width, height, channels=1):
    return FrameBuffer.from_bytes(rng.integers(0, 256, size=(channels, height, width), dtype=np.uint8))


def blocky_frame(rng, width, height, factor_d=1, channels=1):
    """Random 8-bit frame made of constant 2^d x 2^d tiles, so box downsampling stays on the 8-bit grid."""
    step = 2 ** factor_d
    small = rng.integers(0, 256, size=(channels, height // step, width // step), dtype=np.uint8)
    return FrameBuffer.from_bytes(np.repeat(np.repeat(small, step, axis=1), step, axis=2))


def checkerboard(width, height, low=0.0, high=1.0):
    ys, xs = np.mgrid[0:height, 0:width]
    return FrameBuffer(np.where((xs + ys) % 2 == 0, low, high).astype(np.float64))


def jittered_sequence(rng, T, max_step=3, size=32):
    """Bump drifting right by a random 0..max_step pixels per frame."""
    plane = bump_plane(size, size, centre=(size / 2, size / 2), sigma=size / 5)
    offsets = np.concatenate([[0], np.cumsum(rng.integers(0, max_step + 1, size=T - 1))])
    return Sequence([frame(shift_plane(plane, int(dx), 0)) for dx in offsets])


def displaced_sequence(T, start, length, dx=4, dy=0, plane=None):
    """Bump at rest, knocked out of place by (dx, dy) for frames [start, start + length)."""
    plane = bump_plane() if plane is None else plane
    moved = shift_plane(plane, dx, dy)
    return Sequence([frame(moved if start <= t < start + length else plane) for t in range(T)])


def orbit_plane(angle, size=64, radius=16.0, sigma=5.0, count=4, base=0.1, amplitude=0.8):
    """`count` blobs evenly spaced on a circle around the frame centre, rotated by `angle` radians."""
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    centre = (size - 1) / 2
    plane = np.full((size, size), base)
    for k in range(count):
        phi = angle + 2 * np.pi * k / count
        cx, cy = centre + radius * np.cos(phi), centre + radius * np.sin(phi)
        plane += amplitude * np.exp(-((xs - cx) ** 2 + (ys - cy) ** 2) / (2 * sigma * sigma))
    return plane
