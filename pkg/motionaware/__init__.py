#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""Synthesize key-frames of a semantic-map stream and reconstruct the rest by motion compensation."""

__author__ = """OceanProtocol"""
# fmt: off
# bumpversion needs single quotes
__version__ = '0.1.0'
# fmt: on
