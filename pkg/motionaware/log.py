#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Logging setup for the command line.

The YAML dictConfig comes from, in order: the `path` argument,
$MAI_LOGGING_FILE, then the `logging.yaml` shipped inside the package.
$LOG_LEVEL overrides the level of every motionaware logger.
"""
import logging
import logging.config
import os
from pathlib import Path

import coloredlogs
import pkg_resources
import yaml

LOGGING_ENVIRON = "MAI_LOGGING_FILE"
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
# third-party loggers keep the level the file gives them
QUIET_LOGGERS = ("PIL",)


def default_logging_file() -> Path:
    return Path(pkg_resources.resource_filename("motionaware", "logging.yaml"))


def resolve_logging_file(path=None) -> Path:
    if path is not None:
        return Path(path)
    from_environ = os.getenv(LOGGING_ENVIRON)
    if from_environ:
        return Path(from_environ)
    return default_logging_file()


def _level_name():
    name = os.getenv("LOG_LEVEL")
    if name is None:
        return None
    name = name.upper()
    return name if name in LEVELS else None


def _fallback(level, message):
    logging.basicConfig(level=level)
    coloredlogs.install(level=level)
    logging.getLogger(__name__).warning(message)


def setup_logging(path=None, default_level=None):
    """
    Configure logging from YAML, falling back to a coloured stderr handler.

    :param path: YAML file, see the module docstring for the lookup order
    :param default_level: level for coloredlogs, defaults to $LOG_LEVEL or INFO
    """
    level_name = _level_name()
    if default_level is None:
        default_level = getattr(logging, level_name) if level_name else logging.INFO

    path = resolve_logging_file(path)
    if not path.exists():
        _fallback(default_level, f"logging file {path} not found, using default configs")
        return

    try:
        config = yaml.safe_load(path.read_text())
        if level_name:
            for name, logger_config in config.get("loggers", {}).items():
                if name not in QUIET_LOGGERS:
                    logger_config["level"] = level_name
        logging.config.dictConfig(config)
        coloredlogs.install(level=default_level)
    except Exception as e:
        _fallback(default_level, f"error in logging configuration {path} (using default configs): {e}")
