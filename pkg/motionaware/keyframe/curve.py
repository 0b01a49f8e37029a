#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from motionaware.core.frames import Sequence
from motionaware.exceptions import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DifferenceCurve:
    """Residual energy between adjacent frames; values[i] belongs to frames i and i+1."""

    values: Tuple[float, ...]
    window: int = 1

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValidationError("a difference curve needs at least one value")
        if any(v < 0 or not np.isfinite(v) for v in self.values):
            raise ValidationError("difference curve values must be finite and >= 0")
        if self.window < 1:
            raise ValidationError(f"window must be positive, got {self.window}")

    def as_array(self):
        return np.asarray(self.values, dtype=np.float64)

    def __len__(self):
        return len(self.values)


def residual_curve(seq: Sequence) -> DifferenceCurve:
    """Sum of absolute residuals between each pair of adjacent frames."""
    stack = seq.as_array()
    residuals = np.abs(np.diff(stack, axis=0)).sum(axis=(1, 2, 3))
    return DifferenceCurve(tuple(residuals.tolist()), window=1)


def smooth(curve: DifferenceCurve, window: int) -> DifferenceCurve:
    """Centred moving average with edge replication; output length equals input length."""
    if not isinstance(window, (int, np.integer)) or window < 1 or window % 2 == 0:
        raise ValidationError(f"smoothing window must be a positive odd integer, got {window!r}")
    if window > len(curve):
        raise ValidationError(
            f"smoothing window {window} exceeds curve length {len(curve)}"
        )
    if window == 1:
        return DifferenceCurve(curve.values, window=1)
    half = window // 2
    padded = np.pad(curve.as_array(), half, mode="edge")
    kernel = np.full(window, 1.0 / window)
    smoothed = np.convolve(padded, kernel, mode="valid")
    return DifferenceCurve(tuple(np.maximum(smoothed, 0.0).tolist()), window=window)
