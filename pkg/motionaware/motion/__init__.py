#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
from motionaware.motion.field import (  # noqa: F401
    BlockMatcher,
    MotionField,
    SearchParams,
    compensate_blocks,
)
from motionaware.motion.epzs import estimate_epzs  # noqa: F401
from motionaware.motion.fullsearch import estimate_fullsearch  # noqa: F401
