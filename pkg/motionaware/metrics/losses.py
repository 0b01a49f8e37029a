#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Distillation losses evaluated as metrics over given frame sequences,
plus the reconstruction quality signals (MSE, PSNR).
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from motionaware.core.frames import FrameBuffer, require_same_dims
from motionaware.exceptions import ValidationError
from motionaware.metrics.features import FeatureExtractor, ReferenceExtractor, clip_frames


@dataclass(frozen=True)
class LossWeights:
    alpha: float = 2.0
    beta: float = 15.0
    sigma: float = 1.0
    gamma: float = 2.0

    def __post_init__(self):
        for name in ("alpha", "beta", "sigma", "gamma"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValidationError(f"loss weight {name} must be finite and >= 0, got {value}")

    def to_dict(self):
        return {"alpha": self.alpha, "beta": self.beta, "sigma": self.sigma, "gamma": self.gamma}


def _extractor(extractor: Optional[FeatureExtractor]) -> FeatureExtractor:
    return extractor if extractor is not None else ReferenceExtractor()


def mse_frames(a: FrameBuffer, b: FrameBuffer) -> float:
    require_same_dims(a, b)
    return float(np.mean((a.samples - b.samples) ** 2))


def psnr_frames(a: FrameBuffer, b: FrameBuffer, peak=1.0) -> float:
    """Peak signal-to-noise ratio in dB; identical frames give inf."""
    mse = mse_frames(a, b)
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def _paired(student, teacher):
    student, teacher = clip_frames(student), clip_frames(teacher)
    if len(student) != len(teacher):
        raise ValidationError(f"sequence lengths differ: {len(student)} vs {len(teacher)}")
    require_same_dims(student[0], teacher[0], "sequences")
    return list(zip(student, teacher))


def sequence_psnr(pred, reference, peak=1.0) -> float:
    """PSNR of the mean squared error over the whole sequence; inf only when every frame matches."""
    mse = reconstruction_mse(pred, reference)
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def reconstruction_mse(pred, reference) -> float:
    return float(np.mean([mse_frames(a, b) for a, b in _paired(pred, reference)]))


def perceptual_distance(a: FrameBuffer, b: FrameBuffer, extractor: FeatureExtractor = None) -> float:
    """Mean squared distance between the features of the two one-frame clips."""
    require_same_dims(a, b)
    extractor = _extractor(extractor)
    return float(np.mean((extractor([a]) - extractor([b])) ** 2))


def loss_skd(student_seq, teacher_seq, extractor: FeatureExtractor = None) -> float:
    """Time-aligned mean of pixel MSE plus perceptual distance."""
    extractor = _extractor(extractor)
    pairs = _paired(student_seq, teacher_seq)
    total = sum(mse_frames(s, t) + perceptual_distance(s, t, extractor) for s, t in pairs)
    return total / len(pairs)


def loss_ltkd(student_seq, teacher_seq, extractor: FeatureExtractor = None) -> float:
    """
    Local temporal loss over the key-frame pairs.

    The caller passes the teacher's frames taken at the student's key
    timestamps; the form is the same as `loss_skd`.
    """
    return loss_skd(student_seq, teacher_seq, extractor)


def loss_gtkd(student_seq, teacher_seq, extractor: FeatureExtractor = None) -> float:
    extractor = _extractor(extractor)
    pairs = _paired(student_seq, teacher_seq)
    student = extractor([s for s, _ in pairs])
    teacher = extractor([t for _, t in pairs])
    return float(np.mean((student - teacher) ** 2))


def combine_tkd(ltkd: float, gtkd: float, weights: LossWeights = LossWeights()) -> float:
    return weights.alpha * ltkd + weights.beta * gtkd


def loss_tkd(student_seq, teacher_seq, weights: LossWeights = LossWeights(), extractor=None) -> float:
    return combine_tkd(
        loss_ltkd(student_seq, teacher_seq, extractor),
        loss_gtkd(student_seq, teacher_seq, extractor),
        weights,
    )


def loss_kd(skd: float, tkd: float, weights: LossWeights = LossWeights()) -> float:
    """Overall objective; the spatial term is the `loss_skd` value."""
    return weights.sigma * skd + weights.gamma * tkd
