#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
import sys

import numpy as np
import pytest

from motionaware.config import PipelineConfig
from motionaware.core.frames import FrameBuffer, Sequence
from motionaware.core.io import save_sequence
from tests.helpers import bump_plane, frame, level_sequence

ECHO_BACKEND = [sys.executable, "-m", "motionaware.generator.echo_backend"]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def default_config():
    return PipelineConfig()


@pytest.fixture
def bump_frame():
    return frame(bump_plane())


@pytest.fixture
def constant_sequence():
    return level_sequence([0.5] * 6, 32, 32)


@pytest.fixture
def gray_sequence(rng):
    frames = [
        FrameBuffer.from_bytes(rng.integers(0, 256, size=(1, 32, 48), dtype=np.uint8))
        for _ in range(4)
    ]
    return Sequence(frames)


@pytest.fixture
def write_sequence(tmp_path):
    """Saves a sequence as a raw file under tmp_path and returns its path."""

    def _write(seq, name="video.raw", fmt="raw"):
        path = tmp_path / name
        save_sequence(seq, path, fmt)
        return path

    return _write


@pytest.fixture
def echo_command():
    return list(ECHO_BACKEND)
