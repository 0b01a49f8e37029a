#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#


class ConfigSections:
    """
    This class contains the names of the config file sections:
        1. `KEYFRAMES`
        2. `SYNTHESIS`
        3. `GENERATOR`
        4. `MOTION`
        5. `OBMC`
        6. `COSTS`
        7. `WEIGHTS`
    """

    KEYFRAMES = "keyframes"
    SYNTHESIS = "synthesis"
    GENERATOR = "generator"
    MOTION = "motion"
    OBMC = "obmc"
    COSTS = "costs"
    WEIGHTS = "weights"


class ExitCodes:
    SUCCESS = 0
    VALIDATION = 2
    IO = 3
    BACKEND = 4


class RawFormat:
    """Header constants of the raw video container."""

    MAGIC = "MAIV1"
    PNM_PATTERN = "{:06d}.{}"


class WireProtocol:
    """Framing constants of the external generator protocol."""

    REQUEST_MAGIC = b"MAIG"
    RESPONSE_MAGIC = b"MAIR"
    # magic + u32 p, d, H, W, channels (little-endian)
    REQUEST_HEADER_FORMAT = "<4sIIIII"
    # magic + u32 H, W, channels the child declares for its frame
    RESPONSE_HEADER_FORMAT = "<4sIII"


class CostConstants:
    """Per-unit compute costs of the interpolation stage."""

    EPZS_MACS_PER_BLOCK = 2
    OBMC_MACS_PER_PIXEL = 5
    GENERATOR_GMACS_PER_FRAME = 282.0
    GIGA = 1e9
