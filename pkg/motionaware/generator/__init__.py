#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
from motionaware.generator.backend import (  # noqa: F401
    GeneratorBackend,
    GeneratorRequest,
    OracleBackend,
    oracle_generate,
    run_keyframes,
)
from motionaware.generator.subprocess_backend import (  # noqa: F401
    SubprocessBackend,
    subprocess_generate,
)
