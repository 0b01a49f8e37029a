#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
from motionaware.compensate.obmc import ObmcParams, obmc_predict  # noqa: F401
from motionaware.compensate.interpolate import (  # noqa: F401
    METHODS,
    fill_sequence,
    interpolate_linear,
    interpolate_obmc,
)
