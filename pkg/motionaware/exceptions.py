#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
from motionaware.constants import ExitCodes


class MotionAwareError(Exception):
    exit_code = 1


class ValidationError(MotionAwareError, ValueError):
    exit_code = ExitCodes.VALIDATION


class FormatError(ValidationError):
    """Malformed container header, image file or JSON artifact."""


class SequenceIOError(MotionAwareError, IOError):
    exit_code = ExitCodes.IO


class BackendError(MotionAwareError):
    exit_code = ExitCodes.BACKEND

    def __init__(self, message, frame_index=None):
        super().__init__(message)
        self.frame_index = frame_index

    def __str__(self):
        message = super().__str__()
        if self.frame_index is None:
            return message
        return f"frame {self.frame_index}: {message}"


class ProtocolError(BackendError):
    """The generator child broke the wire protocol or died."""
