#
# Copyright 2021 Ocean Protocol Foundation
# SPDX-License-Identifier: Apache-2.0
#
"""
Test double for the subprocess backend.

Answers every request with the nearest-upsampled current semantic map, the
same frame the oracle backend produces. Run as

    python -m motionaware.generator.echo_backend [--die-after N]

Responses are `MAIR`, then u32 H, W, channels, then the frame. The dims
header is required: a child that writes the frame right after `MAIR` is
rejected by the parent with a dims mismatch.

`--die-after N` makes the child exit with status 1 after N responses,
half-way through writing the next one. `--bad-dims` answers with the
low-resolution map itself, which the parent must reject.
"""
import argparse
import sys

from motionaware.generator.backend import oracle_generate
from motionaware.generator.protocol import encode_response, read_request


def serve(stdin, stdout, die_after=None, bad_dims=False):
    served = 0
    while True:
        request = read_request(stdin)
        if request is None:
            return 0
        frame = request.current_map if bad_dims else oracle_generate(request, "upsample-nearest")
        response = encode_response(frame)
        if die_after is not None and served >= die_after:
            stdout.write(response[: len(response) // 2])
            stdout.flush()
            sys.stderr.write(f"echo backend: dying after {served} frames\n")
            return 1
        stdout.write(response)
        stdout.flush()
        served += 1


def main(argv=None):
    parser = argparse.ArgumentParser(description="echo generator backend")
    parser.add_argument("--die-after", type=int, default=None)
    parser.add_argument("--bad-dims", action="store_true")
    args = parser.parse_args(argv)
    return serve(sys.stdin.buffer, sys.stdout.buffer, args.die_after, args.bad_dims)


if __name__ == "__main__":
    sys.exit(main())
