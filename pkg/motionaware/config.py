#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#

import configparser
import logging
import os
from dataclasses import asdict, dataclass, fields, replace

"""
This module defines the pipeline configuration file, its defaults and the
environment variables that override it.
"""
from motionaware.compensate.interpolate import METHODS
from motionaware.compensate.obmc import ObmcParams
from motionaware.constants import ConfigSections, CostConstants
from motionaware.exceptions import SequenceIOError, ValidationError
from motionaware.generator.backend import ORACLE_MODES
from motionaware.keyframe.selection import STRATEGIES
from motionaware.metrics.losses import LossWeights
from motionaware.motion.field import SearchParams

BACKENDS = ("oracle", "subprocess")

environ_names = {
    (ConfigSections.KEYFRAMES, "window"): ["MAI_WINDOW", "Key-frame sliding window"],
    (ConfigSections.KEYFRAMES, "strategy"): ["MAI_STRATEGY", "Key-frame strategy (peaks, fixed, random)"],
    (ConfigSections.GENERATOR, "backend"): ["MAI_BACKEND", "Generator backend (oracle, subprocess)"],
    (ConfigSections.GENERATOR, "command"): ["MAI_BACKEND_COMMAND", "Generator child command line"],
    (ConfigSections.SYNTHESIS, "method"): ["MAI_METHOD", "Interpolation method (obmc, linear)"],
    (ConfigSections.GENERATOR, "gmacs_per_frame"): ["MAI_GENERATOR_GMACS", "Generator G-MACs per frame"],
}

config_defaults = {
    ConfigSections.KEYFRAMES: {
        "window": "3",
        "strategy": "peaks",
        "gap": "4",
        "count": "0",
        "seed": "0",
    },
    ConfigSections.SYNTHESIS: {"d": "1", "p": "1", "method": "obmc", "workers": "1"},
    ConfigSections.GENERATOR: {
        "backend": "oracle",
        "command": "",
        "oracle_mode": "upsample-nearest",
        "gmacs_per_frame": repr(CostConstants.GENERATOR_GMACS_PER_FRAME),
    },
    ConfigSections.MOTION: {
        "block_size": "16",
        "search_range": "16",
        "early_exit_threshold": repr(1.0 / 255.0),
    },
    ConfigSections.OBMC: {"block_size": "16", "window": "bilinear"},
    ConfigSections.COSTS: {
        "epzs_macs_per_block": str(CostConstants.EPZS_MACS_PER_BLOCK),
        "obmc_macs_per_pixel": str(CostConstants.OBMC_MACS_PER_PIXEL),
    },
    ConfigSections.WEIGHTS: {"alpha": "2", "beta": "15", "sigma": "1", "gamma": "2"},
}


class Config(configparser.ConfigParser):
    def __init__(self, filename=None, **kwargs):
        """
        Reads the content of `filename` and sets the config values.
        """
        configparser.ConfigParser.__init__(self)

        self.read_dict(config_defaults)
        self._logger = kwargs.get("logger", logging.getLogger(__name__))
        self._logger.debug("Config: loading config file %s", filename)

        if filename:
            try:
                with open(filename) as fp:
                    text = fp.read()
            except OSError as e:
                raise SequenceIOError(f"cannot read config file {filename}: {e}")
            self._read_text(text)
        else:
            if "text" in kwargs:
                self._read_text(kwargs["text"])
        self._load_environ()

    def _read_text(self, text):
        try:
            self.read_string(text)
        except configparser.Error as e:
            raise ValidationError(f"malformed config: {e}")

    def _load_environ(self):
        for (section, option_name), environ_item in environ_names.items():
            value = os.environ.get(environ_item[0])
            if value is not None:
                self._logger.debug(
                    "Config: setting environ %s.%s = %s", section, option_name, value
                )
                self.set(section, option_name, value)

    # static methods

    @staticmethod
    def get_environ_help():
        result = []
        for option_name, environ_item in environ_names.items():
            # codacy fix
            assert option_name
            result.append("{:24}{:40}".format(environ_item[0], environ_item[1]))
        return "\n".join(result)


# field name -> (section, option, type)
_LAYOUT = {
    "window": (ConfigSections.KEYFRAMES, "window", int),
    "strategy": (ConfigSections.KEYFRAMES, "strategy", str),
    "gap": (ConfigSections.KEYFRAMES, "gap", int),
    "count": (ConfigSections.KEYFRAMES, "count", int),
    "seed": (ConfigSections.KEYFRAMES, "seed", int),
    "d": (ConfigSections.SYNTHESIS, "d", int),
    "p": (ConfigSections.SYNTHESIS, "p", int),
    "method": (ConfigSections.SYNTHESIS, "method", str),
    "workers": (ConfigSections.SYNTHESIS, "workers", int),
    "backend": (ConfigSections.GENERATOR, "backend", str),
    "command": (ConfigSections.GENERATOR, "command", str),
    "oracle_mode": (ConfigSections.GENERATOR, "oracle_mode", str),
    "generator_gmacs_per_frame": (ConfigSections.GENERATOR, "gmacs_per_frame", float),
    "block_size": (ConfigSections.MOTION, "block_size", int),
    "search_range": (ConfigSections.MOTION, "search_range", int),
    "early_exit_threshold": (ConfigSections.MOTION, "early_exit_threshold", float),
    "obmc_block_size": (ConfigSections.OBMC, "block_size", int),
    "obmc_window": (ConfigSections.OBMC, "window", str),
    "epzs_macs_per_block": (ConfigSections.COSTS, "epzs_macs_per_block", float),
    "obmc_macs_per_pixel": (ConfigSections.COSTS, "obmc_macs_per_pixel", float),
    "alpha": (ConfigSections.WEIGHTS, "alpha", float),
    "beta": (ConfigSections.WEIGHTS, "beta", float),
    "sigma": (ConfigSections.WEIGHTS, "sigma", float),
    "gamma": (ConfigSections.WEIGHTS, "gamma", float),
}


@dataclass(frozen=True)
class PipelineConfig:
    """Every knob of one pipeline run, validated; flags override the file form."""

    window: int = 3
    strategy: str = "peaks"
    gap: int = 4
    count: int = 0
    seed: int = 0
    d: int = 1
    p: int = 1
    method: str = "obmc"
    workers: int = 1
    backend: str = "oracle"
    command: str = ""
    oracle_mode: str = "upsample-nearest"
    generator_gmacs_per_frame: float = CostConstants.GENERATOR_GMACS_PER_FRAME
    block_size: int = 16
    search_range: int = 16
    early_exit_threshold: float = 1.0 / 255.0
    obmc_block_size: int = 16
    obmc_window: str = "bilinear"
    epzs_macs_per_block: float = float(CostConstants.EPZS_MACS_PER_BLOCK)
    obmc_macs_per_pixel: float = float(CostConstants.OBMC_MACS_PER_PIXEL)
    alpha: float = 2.0
    beta: float = 15.0
    sigma: float = 1.0
    gamma: float = 2.0

    def __post_init__(self):
        if self.window < 1 or self.window % 2 == 0:
            raise ValidationError(f"window must be an odd integer >= 1, got {self.window}")
        if self.strategy not in STRATEGIES:
            raise ValidationError(f"unknown strategy {self.strategy!r}, expected one of {STRATEGIES}")
        if self.method not in METHODS:
            raise ValidationError(f"unknown method {self.method!r}, expected one of {METHODS}")
        if self.backend not in BACKENDS:
            raise ValidationError(f"unknown backend {self.backend!r}, expected one of {BACKENDS}")
        if self.backend == "subprocess" and not self.command.strip():
            raise ValidationError("the subprocess backend needs a command")
        if self.oracle_mode not in ORACLE_MODES:
            raise ValidationError(f"unknown oracle mode {self.oracle_mode!r}")
        if self.d < 0 or self.p < 0:
            raise ValidationError(f"d and p must be >= 0, got d={self.d} p={self.p}")
        if self.workers < 1:
            raise ValidationError(f"workers must be >= 1, got {self.workers}")
        if self.gap < 1 or self.count < 0:
            raise ValidationError(f"gap must be >= 1 and count >= 0, got gap={self.gap} count={self.count}")
        if self.generator_gmacs_per_frame < 0 or self.epzs_macs_per_block < 0 or self.obmc_macs_per_pixel < 0:
            raise ValidationError("per-unit costs must be >= 0")
        if self.obmc_block_size != self.block_size:
            raise ValidationError(
                f"OBMC block size {self.obmc_block_size} must equal the motion block size {self.block_size}"
            )
        # delegated checks
        self.search_params
        self.obmc_params
        self.weights

    @property
    def search_params(self) -> SearchParams:
        return SearchParams(self.search_range, self.early_exit_threshold, self.block_size)

    @property
    def obmc_params(self) -> ObmcParams:
        return ObmcParams(self.obmc_block_size, self.obmc_window)

    @property
    def weights(self) -> LossWeights:
        return LossWeights(self.alpha, self.beta, self.sigma, self.gamma)

    @classmethod
    def from_config(cls, config: Config, **overrides):
        """Read every field from `config`; keyword overrides that are not None win."""
        values = {}
        for name, (section, option, kind) in _LAYOUT.items():
            raw = config.get(section, option)
            try:
                values[name] = kind(raw)
            except ValueError:
                raise ValidationError(f"config {section}.{option}: cannot parse {raw!r} as {kind.__name__}")
        unknown = set(overrides) - set(values)
        if unknown:
            raise ValidationError(f"unknown config overrides {sorted(unknown)}")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def load(cls, filename=None, **overrides):
        return cls.from_config(Config(filename), **overrides)

    def with_overrides(self, **overrides):
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_ini_text(self) -> str:
        sections = {}
        for name, (section, option, _) in _LAYOUT.items():
            value = getattr(self, name)
            text = repr(value) if isinstance(value, float) else str(value)
            sections.setdefault(section, []).append(f"{option} = {text}")
        return "\n\n".join(
            f"[{section}]\n" + "\n".join(lines) for section, lines in sections.items()
        ) + "\n"

    def to_dict(self):
        return asdict(self)


assert {f.name for f in fields(PipelineConfig)} == set(_LAYOUT)
