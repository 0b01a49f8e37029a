#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
from motionaware.core.frames import FrameBuffer, Sequence  # noqa: F401
from motionaware.core.io import load_sequence, save_sequence  # noqa: F401
from motionaware.core.resize import resize, upsample  # noqa: F401
