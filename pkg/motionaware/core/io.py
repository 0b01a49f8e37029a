#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Lossless 8-bit video I/O.

Two containers are supported:

* ``raw``: one ASCII header line
  ``MAIV1 <width> <height> <channels> <frames> <fps_num>/<fps_den>\\n``
  followed by frames x channels x height x width bytes, frame-major,
  channel-planar, row-major.
* ``pnm-dir``: a directory of zero-padded ``%06d.pgm`` (1 channel) or
  ``%06d.ppm`` (3 channels) files, read and written through Pillow.
"""
import logging
import re
from fractions import Fraction
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from motionaware.constants import RawFormat
from motionaware.core.frames import FrameBuffer, Sequence
from motionaware.exceptions import FormatError, SequenceIOError, ValidationError

logger = logging.getLogger(__name__)

FORMATS = ("raw", "pnm-dir")

_HEADER_RE = re.compile(
    r"^{} (\d+) (\d+) (\d+) (\d+) (\d+)/(\d+)$".format(RawFormat.MAGIC)
)
_PNM_NAME_RE = re.compile(r"^\d{6}\.(pgm|ppm)$")
_MAX_HEADER = 128


def _check_format(fmt):
    if fmt not in FORMATS:
        raise ValidationError(f"unknown sequence format {fmt!r}, expected one of {FORMATS}")


def raw_header(width, height, channels, frames, frame_rate):
    rate = Fraction(frame_rate)
    return (
        f"{RawFormat.MAGIC} {width} {height} {channels} {frames} "
        f"{rate.numerator}/{rate.denominator}\n"
    ).encode("ascii")


def parse_raw_header(line: bytes):
    """
    :param line: header line without the trailing newline
    :return: (width, height, channels, frames, frame_rate)
    """
    try:
        text = line.decode("ascii")
    except UnicodeDecodeError:
        raise FormatError("raw header is not ASCII")
    match = _HEADER_RE.match(text)
    if not match:
        raise FormatError(f"malformed raw header {text[:64]!r}")
    width, height, channels, frames, num, den = (int(g) for g in match.groups())
    if den == 0 or num == 0:
        raise FormatError(f"invalid frame rate {num}/{den} in raw header")
    if width == 0 or height == 0 or frames == 0:
        raise FormatError(f"raw header declares empty video: {text!r}")
    if channels not in (1, 3):
        raise FormatError(f"raw header declares {channels} channels, expected 1 or 3")
    return width, height, channels, frames, Fraction(num, den)


def _load_raw(path: Path) -> Sequence:
    try:
        data = path.read_bytes()
    except OSError as e:
        raise SequenceIOError(f"cannot read {path}: {e}")

    newline = data.find(b"\n", 0, _MAX_HEADER)
    if newline < 0:
        raise FormatError(f"{path}: missing raw header line")
    width, height, channels, frames, frame_rate = parse_raw_header(data[:newline])

    payload = np.frombuffer(data, dtype=np.uint8, offset=newline + 1)
    frame_bytes = width * height * channels
    if payload.size != frames * frame_bytes:
        raise FormatError(
            f"{path}: header declares {frames} frames of {width}x{height}x{channels} "
            f"({frames * frame_bytes} bytes) but payload has {payload.size} bytes"
        )
    planes = payload.reshape(frames, channels, height, width)
    logger.debug(f"loaded raw {path}: {frames} frames {width}x{height}x{channels}")
    return Sequence([FrameBuffer.from_bytes(p) for p in planes], frame_rate)


def _load_pnm_dir(path: Path) -> Sequence:
    if not path.is_dir():
        raise SequenceIOError(f"{path} is not a directory")
    names = sorted(p.name for p in path.iterdir() if _PNM_NAME_RE.match(p.name))
    if not names:
        raise FormatError(f"{path}: no %06d.pgm / %06d.ppm files found")

    frames = []
    for name in names:
        try:
            with Image.open(path / name) as image:
                if image.mode == "L":
                    planes = np.asarray(image, dtype=np.uint8)[np.newaxis]
                elif image.mode == "RGB":
                    planes = np.asarray(image, dtype=np.uint8).transpose(2, 0, 1)
                else:
                    raise FormatError(
                        f"{path / name}: unsupported image mode {image.mode}"
                    )
        except UnidentifiedImageError as e:
            raise FormatError(f"{path / name}: not a PNM image ({e})")
        except OSError as e:
            raise SequenceIOError(f"cannot read {path / name}: {e}")
        frames.append(FrameBuffer.from_bytes(planes))
    return Sequence(frames)


def load_sequence(path, fmt="raw") -> Sequence:
    """
    :param path: raw file or PNM directory
    :param fmt: `raw` or `pnm-dir`
    :return: Sequence whose intensities are byte / 255
    """
    _check_format(fmt)
    path = Path(path)
    if not path.exists():
        raise SequenceIOError(f"{path} does not exist")
    seq = _load_raw(path) if fmt == "raw" else _load_pnm_dir(path)
    logger.info(f"loaded {seq} from {path}")
    return seq


def _save_raw(seq: Sequence, path: Path):
    header = raw_header(seq.width, seq.height, seq.channels, len(seq), seq.frame_rate)
    try:
        with open(path, "wb") as fp:
            fp.write(header)
            for frame in seq:
                fp.write(frame.to_bytes().tobytes())
    except OSError as e:
        raise SequenceIOError(f"cannot write {path}: {e}")


def _save_pnm_dir(seq: Sequence, path: Path):
    extension = "pgm" if seq.channels == 1 else "ppm"
    try:
        path.mkdir(parents=True, exist_ok=True)
        for index, frame in enumerate(seq):
            data = frame.to_bytes()
            if seq.channels == 1:
                image = Image.fromarray(data[0], mode="L")
            else:
                image = Image.fromarray(np.ascontiguousarray(data.transpose(1, 2, 0)), mode="RGB")
            image.save(path / RawFormat.PNM_PATTERN.format(index, extension))
    except OSError as e:
        raise SequenceIOError(f"cannot write {path}: {e}")


def save_sequence(seq: Sequence, path, fmt="raw"):
    _check_format(fmt)
    if not isinstance(seq, Sequence):
        raise ValidationError("save_sequence expects a Sequence")
    path = Path(path)
    if fmt == "raw":
        _save_raw(seq, path)
    else:
        _save_pnm_dir(seq, path)
    logger.info(f"saved {seq} to {path}")
