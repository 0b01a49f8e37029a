#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Motion field model shared by the estimators and the compensators.

A vector (dx, dy) of block b says: the target block at (x, y) is predicted
by the reference block at (x + dx, y + dy). Reads outside the reference
clamp to its edge; partial blocks on the right/bottom border are padded
the same way.
"""
import json
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from motionaware.core.frames import FrameBuffer, require_same_dims
from motionaware.exceptions import FormatError, ValidationError
from motionaware.schema_checker.schema_checker import (
    MOTION_FIELD_SCHEMA_FILE,
    is_valid_dict,
    list_errors,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchParams:
    search_range: int = 16
    early_exit_threshold: float = 1.0 / 255.0
    block_size: int = 16

    def __post_init__(self):
        if self.search_range <= 0 or self.block_size <= 0 or self.early_exit_threshold <= 0:
            raise ValidationError(f"search parameters must all be positive: {self}")


def grid_shape(width, height, block_size):
    """(grid_w, grid_h)"""
    return math.ceil(width / block_size), math.ceil(height / block_size)


def round_half_away(values):
    values = np.asarray(values, dtype=np.float64)
    return (np.sign(values) * np.floor(np.abs(values) + 0.5)).astype(np.int64)


class MotionField:
    __slots__ = ("block_size", "grid_w", "grid_h", "vectors", "costs")

    def __init__(self, block_size, grid_w, grid_h, vectors, costs):
        vectors = np.array(vectors, dtype=np.int64).reshape(grid_h, grid_w, 2)
        costs = np.array(costs, dtype=np.float64).reshape(grid_h, grid_w)
        if np.any(costs < 0):
            raise ValidationError("motion field costs must be non-negative")
        vectors.setflags(write=False)
        costs.setflags(write=False)
        self.block_size = int(block_size)
        self.grid_w = int(grid_w)
        self.grid_h = int(grid_h)
        self.vectors = vectors
        self.costs = costs

    @classmethod
    def zeros(cls, width, height, block_size=16):
        grid_w, grid_h = grid_shape(width, height, block_size)
        return cls(
            block_size,
            grid_w,
            grid_h,
            np.zeros((grid_h, grid_w, 2)),
            np.zeros((grid_h, grid_w)),
        )

    @classmethod
    def uniform(cls, width, height, vector, block_size=16):
        grid_w, grid_h = grid_shape(width, height, block_size)
        vectors = np.broadcast_to(np.asarray(vector, dtype=np.int64), (grid_h, grid_w, 2))
        return cls(block_size, grid_w, grid_h, vectors, np.zeros((grid_h, grid_w)))

    def matches(self, frame: FrameBuffer):
        return (self.grid_w, self.grid_h) == grid_shape(
            frame.width, frame.height, self.block_size
        )

    def require_matches(self, frame: FrameBuffer):
        if not self.matches(frame):
            raise ValidationError(
                f"motion field grid {self.grid_w}x{self.grid_h} (block {self.block_size}) "
                f"does not cover a {frame.width}x{frame.height} frame"
            )

    def scaled(self, factor):
        """Vectors multiplied by `factor` and rounded to the nearest integer (halves away from zero)."""
        return MotionField(
            self.block_size,
            self.grid_w,
            self.grid_h,
            round_half_away(self.vectors * float(factor)),
            np.zeros_like(self.costs),
        )

    def max_displacement(self):
        return int(np.abs(self.vectors).max(initial=0))

    def to_dict(self):
        return {
            "block_size": self.block_size,
            "grid_w": self.grid_w,
            "grid_h": self.grid_h,
            "vectors": self.vectors.reshape(-1, 2).tolist(),
            "costs": self.costs.reshape(-1).tolist(),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        if not is_valid_dict(data, MOTION_FIELD_SCHEMA_FILE):
            errors = [m for m, _ in list_errors(data, MOTION_FIELD_SCHEMA_FILE)]
            raise FormatError(f"motion field JSON does not match its schema: {errors}")
        blocks = data["grid_w"] * data["grid_h"]
        if len(data["vectors"]) != blocks or len(data["costs"]) != blocks:
            raise FormatError(
                f"motion field declares {blocks} blocks but carries "
                f"{len(data['vectors'])} vectors and {len(data['costs'])} costs"
            )
        return cls(
            data["block_size"], data["grid_w"], data["grid_h"], data["vectors"], data["costs"]
        )

    def __eq__(self, other):
        if not isinstance(other, MotionField):
            return NotImplemented
        return (
            (self.block_size, self.grid_w, self.grid_h)
            == (other.block_size, other.grid_w, other.grid_h)
            and np.array_equal(self.vectors, other.vectors)
            and np.array_equal(self.costs, other.costs)
        )

    def __repr__(self):
        return f"MotionField({self.grid_w}x{self.grid_h} blocks of {self.block_size})"


class BlockMatcher:
    """SAD evaluation of target blocks against displaced reference blocks on the luma plane."""

    def __init__(self, target: FrameBuffer, reference: FrameBuffer, search_range, block_size):
        require_same_dims(target, reference, "target and reference")
        target.require_motion_size(block_size)
        self.width, self.height = target.width, target.height
        self.block_size = block_size
        self.search_range = search_range
        self.grid_w, self.grid_h = grid_shape(self.width, self.height, block_size)
        self.pad = search_range + block_size
        self._target = np.pad(
            target.luma(),
            ((0, self.grid_h * block_size - self.height), (0, self.grid_w * block_size - self.width)),
            mode="edge",
        )
        self._reference = np.pad(reference.luma(), self.pad, mode="edge")

    def origin(self, bx, by):
        return bx * self.block_size, by * self.block_size

    def admissible(self, bx, by, dx, dy):
        """Within the search range and the displaced block still overlaps the frame."""
        if abs(dx) > self.search_range or abs(dy) > self.search_range:
            return False
        x, y = self.origin(bx, by)
        b = self.block_size
        return -b < x + dx < self.width and -b < y + dy < self.height

    def target_block(self, bx, by):
        x, y = self.origin(bx, by)
        b = self.block_size
        return self._target[y:y + b, x:x + b]

    def reference_block(self, bx, by, dx, dy):
        x, y = self.origin(bx, by)
        b, p = self.block_size, self.pad
        return self._reference[p + y + dy:p + y + dy + b, p + x + dx:p + x + dx + b]

    def sad(self, bx, by, dx, dy):
        return float(np.abs(self.target_block(bx, by) - self.reference_block(bx, by, dx, dy)).sum())

    def search_window(self, bx, by):
        """All displaced reference blocks, shape (2R+1, 2R+1, B, B), indexed [dy+R, dx+R]."""
        x, y = self.origin(bx, by)
        b, p, r = self.block_size, self.pad, self.search_range
        region = self._reference[p + y - r:p + y + r + b, p + x - r:p + x + r + b]
        return np.lib.stride_tricks.sliding_window_view(region, (b, b))

    def field(self, vectors, costs):
        return MotionField(self.block_size, self.grid_w, self.grid_h, vectors, costs)


def recompute_costs(target: FrameBuffer, reference: FrameBuffer, field: MotionField):
    """SAD of every block at its stored vector."""
    matcher = BlockMatcher(target, reference, max(1, field.max_displacement()), field.block_size)
    costs = np.zeros((field.grid_h, field.grid_w))
    for by in range(field.grid_h):
        for bx in range(field.grid_w):
            dx, dy = field.vectors[by, bx]
            costs[by, bx] = matcher.sad(bx, by, int(dx), int(dy))
    return costs


def clamped_source_indices(width, height, field: MotionField, vectors=None):
    """Per-pixel source coordinates (ys, xs) of block-wise displaced reads, edge-clamped."""
    vectors = field.vectors if vectors is None else vectors
    b = field.block_size
    ys = np.arange(height)
    xs = np.arange(width)
    block_vectors = vectors[ys[:, None] // b, xs[None, :] // b]
    src_x = np.clip(xs[None, :] + block_vectors[..., 0], 0, width - 1)
    src_y = np.clip(ys[:, None] + block_vectors[..., 1], 0, height - 1)
    return src_y, src_x


def compensate_blocks(reference: FrameBuffer, field: MotionField) -> FrameBuffer:
    """Non-overlapped prediction: every block copied from the reference at its vector."""
    field.require_matches(reference)
    src_y, src_x = clamped_source_indices(reference.width, reference.height, field)
    return FrameBuffer(reference.samples[:, src_y, src_x])


def displaced_read(reference: FrameBuffer, dx, dy) -> np.ndarray:
    """Whole-frame read at per-pixel offsets dx, dy (arrays of shape (H, W)), edge-clamped."""
    ys = np.arange(reference.height)[:, None]
    xs = np.arange(reference.width)[None, :]
    src_x = np.clip(xs + dx, 0, reference.width - 1)
    src_y = np.clip(ys + dy, 0, reference.height - 1)
    return reference.samples[:, src_y, src_x]


def optional_prior(prior: Optional[MotionField], bx, by):
    if prior is None:
        return None
    dx, dy = prior.vectors[by, bx]
    return int(dx), int(dy)
