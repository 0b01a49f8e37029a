#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
from motionaware.metrics.costs import CostReport, account_macs  # noqa: F401
from motionaware.metrics.features import (  # noqa: F401
    FeatureExtractor,
    ReferenceExtractor,
    reference_extractor,
)
from motionaware.metrics.losses import (  # noqa: F401
    LossWeights,
    combine_tkd,
    loss_gtkd,
    loss_kd,
    loss_ltkd,
    loss_skd,
    loss_tkd,
    mse_frames,
    perceptual_distance,
    psnr_frames,
    reconstruction_mse,
    sequence_psnr,
)
