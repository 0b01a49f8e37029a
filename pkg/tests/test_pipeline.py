#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
import pytest

from motionaware.config import PipelineConfig
from motionaware.core.frames import Sequence
from motionaware.exceptions import ValidationError
from motionaware.generator import OracleBackend, SubprocessBackend
from motionaware.keyframe import KeyframeSet, select_fixed_gap
from motionaware.metrics import reconstruction_mse
from motionaware.pipeline import make_backend, reconstruct, select_keys, synthesize
from tests.helpers import blocky_frame, burst_sequence, ridge_plane, translating_sequence


class CountingOracle(OracleBackend):
    def __init__(self):
        super().__init__()
        self.closed = 0

    def close(self):
        self.closed += 1


def test_make_backend():
    assert isinstance(make_backend(PipelineConfig()), OracleBackend)
    backend = make_backend(PipelineConfig(backend="subprocess", command="generator --fast"))
    assert isinstance(backend, SubprocessBackend)
    assert backend.command == ["generator", "--fast"]


def test_select_keys_follows_strategy():
    seq = burst_sequence(10, 5)
    assert select_keys(seq, PipelineConfig()).indices == (0, 5, 9)
    assert select_keys(seq, PipelineConfig(strategy="fixed", gap=3)).indices == (0, 3, 6, 9)


def test_synthesize_keeps_generated_keys(rng):
    semantics = Sequence([blocky_frame(rng, 32, 32) for _ in range(7)])
    config = PipelineConfig()
    dense = synthesize(semantics, config, keys=select_fixed_gap(7, 1))
    sparse = synthesize(semantics, config, keys=KeyframeSet((0, 3, 6), 7))

    assert len(dense.video) == len(sparse.video) == 7
    for k in (0, 3, 6):
        assert sparse.video[k] == dense.video[k]
    assert dense.costs.generator_macs == 7 * 282e9
    assert sparse.costs.generator_macs == 3 * 282e9
    assert dense.costs.frames_interpolated == 0
    assert sparse.costs.frames_interpolated == 4


def test_synthesize_closes_only_its_own_backend(rng):
    semantics = Sequence([blocky_frame(rng, 32, 32) for _ in range(4)])
    backend = CountingOracle()
    result = synthesize(semantics, PipelineConfig(strategy="fixed", gap=2), backend=backend)
    assert backend.closed == 0
    assert backend.invocations == len(result.keys) == 3

    with pytest.raises(ValidationError):
        synthesize(semantics, PipelineConfig(), keys=KeyframeSet((0, 4), 5))


def test_supplied_backend_cost_is_charged(rng):
    semantics = Sequence([blocky_frame(rng, 32, 32) for _ in range(5)])
    keys = KeyframeSet((0, 4), 5)
    result = synthesize(semantics, PipelineConfig(), backend=OracleBackend(macs_per_frame=10.0), keys=keys)
    assert result.costs.generator_macs == 2 * 10e9
    assert result.costs.to_dict()["generator_gmacs"] == pytest.approx(20.0)

    owned = synthesize(semantics, PipelineConfig(generator_gmacs_per_frame=50.0), keys=keys)
    assert owned.costs.generator_macs == 2 * 50e9


def test_obmc_synthesis_tracks_moving_ridge():
    semantics = translating_sequence(9, 2, 0, ridge_plane())
    keys = KeyframeSet((0, 4, 8), 9)
    reference = synthesize(semantics, PipelineConfig(), keys=select_fixed_gap(9, 1)).video
    errors = {
        method: reconstruction_mse(
            synthesize(semantics, PipelineConfig(method=method), keys=keys).video, reference
        )
        for method in ("obmc", "linear")
    }
    assert errors["obmc"] < errors["linear"]


def test_reconstruct_uses_real_key_frames(gray_sequence):
    keys = KeyframeSet((0, 3), 4)
    video = reconstruct(gray_sequence, keys, PipelineConfig(), method="linear")
    assert video[0] == gray_sequence[0] and video[3] == gray_sequence[3]
    with pytest.raises(ValidationError):
        reconstruct(gray_sequence, KeyframeSet((0, 4), 5), PipelineConfig())
