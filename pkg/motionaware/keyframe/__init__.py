#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
from motionaware.keyframe.curve import DifferenceCurve, residual_curve, smooth  # noqa: F401
from motionaware.keyframe.selection import (  # noqa: F401
    DEFAULT_WINDOW,
    KeyframeSet,
    select_by_strategy,
    select_fixed_gap,
    select_keyframes,
    select_random_gap,
)
