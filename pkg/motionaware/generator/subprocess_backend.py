#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""Generator backend living in a child process that speaks the binary wire protocol."""
import logging
import shlex
import subprocess
import tempfile

from motionaware.core.frames import FrameBuffer
from motionaware.exceptions import ProtocolError, ValidationError
from motionaware.generator.backend import GeneratorBackend, GeneratorRequest
from motionaware.generator.protocol import encode_request, read_response

logger = logging.getLogger(__name__)

STDERR_TAIL = 2000


def subprocess_generate(request: GeneratorRequest, endpoint: subprocess.Popen) -> FrameBuffer:
    """Send one request over the child's stdin and read exactly one frame back from its stdout."""
    try:
        endpoint.stdin.write(encode_request(request))
        endpoint.stdin.flush()
    except (BrokenPipeError, OSError, ValueError) as e:
        raise ProtocolError(f"cannot write request to generator child: {e}")
    return read_response(endpoint.stdout, request.output_dims)


class SubprocessBackend(GeneratorBackend):
    """
    Starts `command` on first use and keeps the child alive across frames.

    The child reads requests from stdin and answers on stdout; its stderr is
    kept in a temporary file and quoted in error messages.
    """

    def __init__(self, command, macs_per_frame=0.0):
        if isinstance(command, str):
            command = shlex.split(command)
        if not command:
            raise ValidationError("subprocess backend needs a non-empty command")
        self.command = list(command)
        self.macs_per_frame = macs_per_frame
        self.process = None
        self._stderr = None

    def start(self):
        if self.process is not None:
            return
        logger.info(f"starting generator child: {' '.join(self.command)}")
        self._stderr = tempfile.TemporaryFile()
        try:
            self.process = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=self._stderr,
            )
        except OSError as e:
            self._stderr.close()
            self._stderr = None
            raise ProtocolError(f"cannot start generator child {self.command!r}: {e}")

    def _diagnostic(self):
        status = self.process.poll()
        try:
            status = self.process.wait(timeout=1)
        except subprocess.TimeoutExpired:
            pass
        parts = []
        if status is not None:
            parts.append(f"child exit status {status}")
        if self._stderr is not None:
            self._stderr.seek(0)
            tail = self._stderr.read()[-STDERR_TAIL:].decode("utf-8", "replace").strip()
            if tail:
                parts.append(f"child stderr: {tail}")
        return "; ".join(parts)

    def generate(self, request: GeneratorRequest) -> FrameBuffer:
        self.start()
        try:
            return subprocess_generate(request, self.process)
        except ProtocolError as e:
            diagnostic = self._diagnostic()
            message = f"{e.args[0]}; {diagnostic}" if diagnostic else e.args[0]
            raise ProtocolError(message, frame_index=e.frame_index)

    def close(self):
        if self.process is None:
            return
        process, self.process = self.process, None
        try:
            process.stdin.close()
        except (BrokenPipeError, OSError):
            pass
        try:
            status = process.wait(timeout=5)
        except subprocess.TimeoutExpired:
            logger.warning("generator child did not exit after EOF, killing it")
            process.kill()
            status = process.wait()
        process.stdout.close()
        if status:
            logger.warning(f"generator child exited with status {status}")
        if self._stderr is not None:
            self._stderr.close()
            self._stderr = None
