#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""MAC cost accounting of one reconstructed sequence."""
import math
from dataclasses import dataclass

from motionaware.constants import CostConstants
from motionaware.exceptions import ValidationError
from motionaware.keyframe.selection import KeyframeSet


@dataclass(frozen=True)
class CostReport:
    """All tallies are in MACs; `to_dict` adds the G-MAC views."""

    generator_macs: float
    epzs_macs: float
    obmc_macs: float
    frames_generated: int
    frames_interpolated: int
    selector_macs: float = 0.0

    @property
    def frames(self):
        return self.frames_generated + self.frames_interpolated

    @property
    def interpolation_macs(self):
        return self.epzs_macs + self.obmc_macs

    @property
    def total(self):
        return self.generator_macs + self.epzs_macs + self.obmc_macs + self.selector_macs

    @property
    def mean_macs_per_frame(self):
        return self.total / self.frames if self.frames else 0.0

    def __add__(self, other):
        if not isinstance(other, CostReport):
            return NotImplemented
        return CostReport(
            generator_macs=self.generator_macs + other.generator_macs,
            epzs_macs=self.epzs_macs + other.epzs_macs,
            obmc_macs=self.obmc_macs + other.obmc_macs,
            frames_generated=self.frames_generated + other.frames_generated,
            frames_interpolated=self.frames_interpolated + other.frames_interpolated,
            selector_macs=self.selector_macs + other.selector_macs,
        )

    def to_dict(self):
        giga = CostConstants.GIGA
        frames = self.frames or 1
        return {
            "frames": self.frames,
            "frames_generated": self.frames_generated,
            "frames_interpolated": self.frames_interpolated,
            "generator_macs": self.generator_macs,
            "epzs_macs": self.epzs_macs,
            "obmc_macs": self.obmc_macs,
            "selector_macs": self.selector_macs,
            "total_macs": self.total,
            "mean_macs_per_frame": self.mean_macs_per_frame,
            "generator_gmacs": self.generator_macs / giga,
            "interpolation_gmacs": self.interpolation_macs / giga,
            "total_gmacs": self.total / giga,
            "mean_gmacs_per_frame": self.mean_macs_per_frame / giga,
            "mean_generator_gmacs_per_frame": self.generator_macs / frames / giga,
            "mean_interpolation_gmacs_per_frame": self.interpolation_macs / frames / giga,
        }


def account_macs(
    T,
    keys: KeyframeSet,
    dims,
    generator_macs_per_frame=CostConstants.GENERATOR_GMACS_PER_FRAME,
    block_size=16,
    epzs_macs_per_block=CostConstants.EPZS_MACS_PER_BLOCK,
    obmc_macs_per_pixel=CostConstants.OBMC_MACS_PER_PIXEL,
) -> CostReport:
    """
    Cost of reconstructing T frames from the key-frames in `keys`.

    :param dims: (W, H) or (W, H, channels) of the full-resolution frames
    :param generator_macs_per_frame: G-MACs of one generator invocation
    One motion field is estimated per gap holding at least one interpolated
    frame; OBMC is paid on every interpolated pixel.
    """
    if keys.source_length != T:
        raise ValidationError(f"key-frame set describes {keys.source_length} frames, not T={T}")
    width, height = dims[0], dims[1]
    if width < 1 or height < 1 or block_size < 1:
        raise ValidationError(f"invalid frame dims {dims} or block size {block_size}")
    if generator_macs_per_frame < 0 or epzs_macs_per_block < 0 or obmc_macs_per_pixel < 0:
        raise ValidationError("per-unit costs must be >= 0")

    blocks = math.ceil(width / block_size) * math.ceil(height / block_size)
    gaps_with_work = sum(1 for a, b in keys.gaps() if b - a > 1)
    interpolated = keys.interpolated_count()
    return CostReport(
        generator_macs=len(keys) * generator_macs_per_frame * CostConstants.GIGA,
        epzs_macs=float(gaps_with_work * epzs_macs_per_block * blocks),
        obmc_macs=float(interpolated * obmc_macs_per_pixel * width * height),
        frames_generated=len(keys),
        frames_interpolated=interpolated,
    )
