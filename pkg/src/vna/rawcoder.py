"""Bundled raw-container transcoder (`python -m vna.rawcoder`).

A minimal external transcoder for the uncompressed .vnr container, used
when ffmpeg is absent and for golden tests where compressed codecs would
get in the way.  It speaks the exact pipe protocol the engine expects from
any transcoder: packed rgb24 frames and interleaved f32le PCM over
stdin/stdout, probe metadata as JSON.  It is always invoked as a separate
process; the engine never links it in.

Container layout (little-endian):
    magic    8 bytes   b"VNARAW01"
    hlen     u32       header length (fixed padding so it can be rewritten)
    header   JSON      {"width","height","fps","sample_rate","channels","frames","samples"}
    video    frames * width * height * 3 bytes, rgb24, frame-major
    audio    samples * channels * 4 bytes, f32le, interleaved

Subcommands:
    probe PATH                      metadata JSON on stdout
    decode-video PATH               rgb24 stream on stdout
    decode-audio PATH               f32le stream on stdout
    encode --out PATH --width W --height H --fps F
           --sample-rate R --channels C [--audio RAWPCM]
                                    rgb24 stream on stdin
"""

from __future__ import annotations

import argparse
import json
import struct
import sys
from pathlib import Path

MAGIC = b"VNARAW01"
HEADER_LEN = 192
_CHUNK = 1 << 20

EXTENSION = ".vnr"


def _fail(message: str) -> "NoReturn":  # noqa: F821 - doc only
    print(f"rawcoder: {message}", file=sys.stderr)
    raise SystemExit(1)


def read_header(fh) -> dict:
    magic = fh.read(len(MAGIC))
    if magic != MAGIC:
        _fail("not a VNARAW01 container (bad magic)")
    (hlen,) = struct.unpack("<I", fh.read(4))
    try:
        header = json.loads(fh.read(hlen).decode("ascii").rstrip())
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        _fail(f"corrupt header: {exc}")
    for key in ("width", "height", "fps", "sample_rate", "channels", "frames", "samples"):
        if key not in header:
            _fail(f"header missing {key!r}")
    return header


def _open(path: str):
    try:
        return open(path, "rb")
    except OSError as exc:
        _fail(str(exc))


def cmd_probe(args) -> None:
    with _open(args.path) as fh:
        header = read_header(fh)
    durations = []
    if header["frames"] and header["fps"]:
        durations.append(header["frames"] / header["fps"])
    if header["samples"] and header["sample_rate"]:
        durations.append(header["samples"] / header["sample_rate"])
    header["duration_s"] = max(durations) if durations else 0.0
    header["container"] = "vnr"
    sys.stdout.write(json.dumps(header))


def _copy(fh, nbytes: int, out) -> None:
    remaining = nbytes
    while remaining > 0:
        chunk = fh.read(min(_CHUNK, remaining))
        if not chunk:
            _fail(f"container truncated: {remaining} bytes missing")
        out.write(chunk)
        remaining -= len(chunk)


def cmd_decode_video(args) -> None:
    with _open(args.path) as fh:
        header = read_header(fh)
        _copy(fh, header["frames"] * header["width"] * header["height"] * 3, sys.stdout.buffer)


def cmd_decode_audio(args) -> None:
    with _open(args.path) as fh:
        header = read_header(fh)
        fh.seek(header["frames"] * header["width"] * header["height"] * 3, 1)
        _copy(fh, header["samples"] * header["channels"] * 4, sys.stdout.buffer)


def _write_header(fh, header: dict) -> None:
    blob = json.dumps(header, sort_keys=True).encode("ascii")
    if len(blob) > HEADER_LEN:
        _fail("header too large")
    fh.write(MAGIC)
    fh.write(struct.pack("<I", HEADER_LEN))
    fh.write(blob.ljust(HEADER_LEN))


def cmd_encode(args) -> None:
    frame_size = args.width * args.height * 3
    header = {
        "width": args.width,
        "height": args.height,
        "fps": args.fps,
        "sample_rate": args.sample_rate,
        "channels": args.channels,
        "frames": 0,
        "samples": 0,
    }
    out_path = Path(args.out)
    with open(out_path, "wb") as out:
        _write_header(out, header)
        # Stream video from stdin until EOF, counting whole frames.
        video_bytes = 0
        src = sys.stdin.buffer
        while True:
            chunk = src.read(_CHUNK)
            if not chunk:
                break
            out.write(chunk)
            video_bytes += len(chunk)
        if frame_size and video_bytes % frame_size:
            _fail(f"video stream is not a whole number of {frame_size}-byte frames")
        header["frames"] = video_bytes // frame_size if frame_size else 0
        if frame_size == 0 and video_bytes:
            _fail("received video bytes but frame geometry is 0x0")
        audio_bytes = 0
        if args.audio:
            sample_size = args.channels * 4
            with open(args.audio, "rb") as audio:
                while True:
                    chunk = audio.read(_CHUNK)
                    if not chunk:
                        break
                    out.write(chunk)
                    audio_bytes += len(chunk)
            if audio_bytes % sample_size:
                _fail(f"audio stream is not a whole number of {sample_size}-byte sample frames")
            header["samples"] = audio_bytes // sample_size
        out.seek(0)
        _write_header(out, header)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="vna-rawcoder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("probe")
    p.add_argument("path")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("decode-video")
    p.add_argument("path")
    p.set_defaults(func=cmd_decode_video)

    p = sub.add_parser("decode-audio")
    p.add_argument("path")
    p.set_defaults(func=cmd_decode_audio)

    p = sub.add_parser("encode")
    p.add_argument("--out", required=True)
    p.add_argument("--width", type=int, default=0)
    p.add_argument("--height", type=int, default=0)
    p.add_argument("--fps", type=float, default=0.0)
    p.add_argument("--sample-rate", type=int, default=0)
    p.add_argument("--channels", type=int, default=0)
    p.add_argument("--audio", default=None)
    p.set_defaults(func=cmd_encode)

    args = parser.parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
