#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Key-frame selection strategies.

`select_keyframes` picks the peaks of the smoothed residual curve; the fixed
and random gap selectors are the baselines it is compared against.
"""
import json
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from motionaware.exceptions import FormatError, ValidationError
from motionaware.keyframe.curve import DifferenceCurve, smooth
from motionaware.schema_checker.schema_checker import (
    KEYFRAMES_SCHEMA_FILE,
    is_valid_dict,
    list_errors,
)

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 3
STRATEGIES = ("peaks", "fixed", "random")


@dataclass(frozen=True)
class KeyframeSet:
    indices: Tuple[int, ...]
    source_length: int

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        T, indices = self.source_length, self.indices
        if T < 2:
            raise ValidationError(f"source length must be >= 2, got {T}")
        if len(indices) < 2:
            raise ValidationError("a key-frame set holds at least the two endpoints")
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValidationError(f"key-frame indices must strictly increase: {indices}")
        if indices[0] != 0 or indices[-1] != T - 1:
            raise ValidationError(
                f"key-frames must include 0 and {T - 1}, got {indices[0]}..{indices[-1]}"
            )

    def gaps(self):
        """Consecutive key pairs (k_i, k_i+1)."""
        return list(zip(self.indices, self.indices[1:]))

    def interpolated_count(self):
        return self.source_length - len(self.indices)

    def to_dict(self):
        return {"T": self.source_length, "indices": list(self.indices)}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        if not is_valid_dict(data, KEYFRAMES_SCHEMA_FILE):
            errors = [message for message, _ in list_errors(data, KEYFRAMES_SCHEMA_FILE)]
            raise FormatError(f"key-frame JSON does not match its schema: {errors}")
        return cls(tuple(data["indices"]), data["T"])

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"key-frame JSON is not valid JSON: {e}")
        return cls.from_dict(data)

    def __len__(self):
        return len(self.indices)

    def __contains__(self, index):
        return index in self.indices


def _with_endpoints(indices, T):
    return KeyframeSet(tuple(sorted(set(indices) | {0, T - 1})), T)


def _plateaus(values, tolerance):
    """Maximal runs of (tolerance-)equal adjacent values as (start, end) inclusive."""
    runs = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or abs(values[i] - values[start]) > tolerance:
            runs.append((start, i - 1))
            start = i
    return runs


def find_peaks(smoothed, raw, radius, tolerance=None):
    """
    Curve indices that are strict local maxima of `smoothed` within `radius`.

    A run of equal values counts as one candidate; it is a peak when every
    value within `radius` to its left is lower and every value within
    `radius` to its right is not higher, so equal maxima resolve to the
    first. Inside a plateau the index with the largest raw value wins,
    then the smallest index.
    """
    smoothed = np.asarray(smoothed, dtype=np.float64)
    raw = np.asarray(raw, dtype=np.float64)
    if tolerance is None:
        tolerance = 1e-12 * max(1.0, float(np.abs(smoothed).max(initial=0.0)))
    peaks = []
    for start, end in _plateaus(smoothed, tolerance):
        level = smoothed[start]
        left = smoothed[max(0, start - radius):start]
        right = smoothed[end + 1:end + 1 + radius]
        if left.size + right.size == 0:
            continue
        if np.any(left >= level - tolerance) or np.any(right > level + tolerance):
            continue
        if not (np.any(left < level - tolerance) or np.any(right < level - tolerance)):
            continue
        run = raw[start:end + 1]
        peaks.append(start + int(np.argmax(run)))
    return peaks


def peak_radius(window):
    return max(1, window // 2)


def track_peaks(candidates, parents, radius):
    """
    Match each candidate to the nearest unused parent within `radius`.

    Matched candidates take their parent's index; unmatched ones are
    dropped, so the result is a subset of `parents`. Candidates are
    visited in order and distance ties go to the smaller parent.
    """
    free = list(parents)
    kept = []
    for candidate in candidates:
        near = [p for p in free if abs(p - candidate) <= radius]
        if not near:
            continue
        parent = min(near, key=lambda p: (abs(p - candidate), p))
        free.remove(parent)
        kept.append(parent)
    return sorted(kept)


def nested_peaks(curve: DifferenceCurve, window):
    """
    Peaks of the curve smoothed with `window`, tracked down to window 1.

    Window w keeps a peak only when it lies within its radius of a peak
    kept at window w - 2, and reports it at that finer position. The peak
    set of every window is therefore contained in the one of every
    smaller window.
    """
    smooth(curve, window)
    raw = curve.as_array()
    peaks = find_peaks(raw, raw, peak_radius(1))
    for w in range(3, window + 1, 2):
        radius = peak_radius(w)
        candidates = find_peaks(smooth(curve, w).as_array(), raw, radius)
        peaks = track_peaks(candidates, peaks, radius)
    return peaks


def select_keyframes(curve: DifferenceCurve, window=DEFAULT_WINDOW, T=None) -> KeyframeSet:
    """
    Peak-based key-frames: a peak at curve index i marks frame i+1.

    :param curve: raw residual curve of a T-frame sequence
    :param window: odd smoothing window, also the peak neighbourhood
    :param T: sequence length, defaults to len(curve) + 1
    """
    if T is None:
        T = len(curve) + 1
    if len(curve) != T - 1:
        raise ValidationError(f"curve of length {len(curve)} does not describe {T} frames")
    peaks = nested_peaks(curve, window)
    keys = _with_endpoints([i + 1 for i in peaks], T)
    logger.debug(f"peak selection window={window}: peaks at curve indices {peaks}")
    logger.info(f"selected {len(keys)} key-frames of {T} (window {window})")
    return keys


def select_fixed_gap(T, gap) -> KeyframeSet:
    if not isinstance(gap, (int, np.integer)) or not 1 <= gap < T:
        raise ValidationError(f"gap must satisfy 1 <= gap < T={T}, got {gap!r}")
    return _with_endpoints(range(0, T, gap), T)


def select_random_gap(T, count, rng_seed) -> KeyframeSet:
    """Endpoints plus count-2 interior frames drawn without replacement."""
    if not isinstance(count, (int, np.integer)) or not 2 <= count <= T:
        raise ValidationError(f"count must satisfy 2 <= count <= T={T}, got {count!r}")
    rng = np.random.default_rng(rng_seed)
    interior = rng.choice(np.arange(1, T - 1), size=count - 2, replace=False) if count > 2 else []
    return _with_endpoints([int(i) for i in interior], T)


def select_by_strategy(seq_curve, T, strategy, window=DEFAULT_WINDOW, gap=None, count=None, seed=0):
    """Dispatch on the configured strategy name."""
    if strategy == "peaks":
        return select_keyframes(seq_curve, window, T)
    if strategy == "fixed":
        return select_fixed_gap(T, gap)
    if strategy == "random":
        return select_random_gap(T, count, seed)
    raise ValidationError(f"unknown key-frame strategy {strategy!r}, expected one of {STRATEGIES}")
