#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Binary framing of generator requests and responses.

request  = "MAIG" u32 p, d, H, W, channels, (p+1) low-res planes, p full-res planes
response = "MAIR" u32 H, W, channels, then H*W*channels bytes

Integers are little-endian. Every plane is 8-bit, row-major, channels
interleaved per pixel.
"""
import struct

import numpy as np

from motionaware.constants import WireProtocol
from motionaware.core.frames import FrameBuffer
from motionaware.exceptions import ProtocolError
from motionaware.generator.backend import GeneratorRequest

HEADER = struct.Struct(WireProtocol.REQUEST_HEADER_FORMAT)
RESPONSE_HEADER = struct.Struct(WireProtocol.RESPONSE_HEADER_FORMAT)


def frame_to_plane(frame: FrameBuffer) -> bytes:
    return np.ascontiguousarray(frame.to_bytes().transpose(1, 2, 0)).tobytes()


def plane_to_frame(data: bytes, width, height, channels) -> FrameBuffer:
    expected = width * height * channels
    if len(data) != expected:
        raise ProtocolError(f"plane holds {len(data)} bytes, expected {expected}")
    pixels = np.frombuffer(data, dtype=np.uint8).reshape(height, width, channels)
    return FrameBuffer.from_bytes(pixels.transpose(2, 0, 1))


def read_exact(stream, size, what="payload") -> bytes:
    """Read exactly `size` bytes or raise `ProtocolError` on a short read."""
    chunks = []
    remaining = size
    while remaining:
        chunk = stream.read(remaining)
        if not chunk:
            got = size - remaining
            raise ProtocolError(f"premature EOF reading {what}: got {got} of {size} bytes")
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


def encode_request(request) -> bytes:
    width, height, channels = request.output_dims
    parts = [
        HEADER.pack(WireProtocol.REQUEST_MAGIC, request.p, request.d, height, width, channels)
    ]
    parts.extend(frame_to_plane(m) for m in request.semantic_maps)
    parts.extend(frame_to_plane(f) for f in request.previous_frames)
    return b"".join(parts)


def read_request(stream):
    """
    Parse one request from `stream`.

    :return: the request, or None on a clean EOF before the header
    """
    first = stream.read(HEADER.size)
    if not first:
        return None
    header = first + read_exact(stream, HEADER.size - len(first), "request header")
    magic, p, d, height, width, channels = HEADER.unpack(header)
    if magic != WireProtocol.REQUEST_MAGIC:
        raise ProtocolError(f"bad request magic {magic!r}")
    step = 2 ** d
    if height % step or width % step:
        raise ProtocolError(f"frame {width}x{height} is not divisible by 2^{d}")
    low_w, low_h = width // step, height // step

    maps = [
        plane_to_frame(read_exact(stream, low_w * low_h * channels, "semantic map"), low_w, low_h, channels)
        for _ in range(p + 1)
    ]
    previous = [
        plane_to_frame(read_exact(stream, width * height * channels, "previous frame"), width, height, channels)
        for _ in range(p)
    ]
    return GeneratorRequest(tuple(maps), tuple(previous), p, d)


def encode_response(frame: FrameBuffer) -> bytes:
    header = RESPONSE_HEADER.pack(WireProtocol.RESPONSE_MAGIC, frame.height, frame.width, frame.channels)
    return header + frame_to_plane(frame)


def read_response(stream, dims) -> FrameBuffer:
    """Read one response frame and check the child's declared dims against `dims` = (W, H, channels)."""
    header = read_exact(stream, RESPONSE_HEADER.size, "response header")
    magic, height, width, channels = RESPONSE_HEADER.unpack(header)
    if magic != WireProtocol.RESPONSE_MAGIC:
        raise ProtocolError(f"bad response magic {magic!r}")
    if (width, height, channels) != tuple(dims):
        raise ProtocolError(
            f"dims mismatch: expected {tuple(dims)}, child declared {(width, height, channels)}"
        )
    data = read_exact(stream, width * height * channels, "response frame")
    return plane_to_frame(data, width, height, channels)
