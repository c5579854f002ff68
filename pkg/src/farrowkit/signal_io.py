"""Mono signal file I/O for the CLI.

Formats: raw little-endian float64 (lossless default), CSV (one value per
line, round-trips via repr), and mono WAV as PCM16 or float32.
"""

from __future__ import annotations

import os

import numpy as np
from scipy.io import wavfile

__all__ = [
    "FORMATS",
    "SignalFormatError",
    "infer_format",
    "read_signal",
    "write_signal",
]

FORMATS = ("f64", "csv", "wav16", "wav32")


class SignalFormatError(ValueError):
    """Malformed or unsupported signal file contents."""


def infer_format(path: str, explicit: str | None = None) -> str:
    if explicit is not None:
        if explicit not in FORMATS:
            raise SignalFormatError(f"unknown format {explicit!r}; choose from {FORMATS}")
        return explicit
    ext = os.path.splitext(path)[1].lower()
    if ext in (".f64", ".raw", ".bin"):
        return "f64"
    if ext in (".csv", ".txt"):
        return "csv"
    if ext == ".wav":
        return "wav16"
    raise SignalFormatError(
        f"cannot infer signal format from {path!r}; pass an explicit format"
    )


def read_signal(path: str, fmt: str | None = None) -> np.ndarray:
    """Read a mono sample stream; raw f64 and CSV round-trip exactly."""
    fmt = infer_format(path, fmt)
    if fmt == "f64":
        data = np.fromfile(path, dtype="<f8")
        if os.path.getsize(path) % 8:
            raise SignalFormatError(f"{path}: size not a multiple of 8 bytes")
        return data
    if fmt == "csv":
        try:
            with open(path, "r", encoding="ascii") as fh:
                return np.array([float(line) for line in fh if line.strip()])
        except ValueError as exc:
            raise SignalFormatError(f"{path}: bad CSV sample: {exc}") from exc
    # WAV: subtype comes from the header on read
    try:
        _rate, data = wavfile.read(path)
    except ValueError as exc:
        raise SignalFormatError(f"{path}: malformed WAV: {exc}") from exc
    if data.ndim != 1:
        raise SignalFormatError(f"{path}: only mono WAV is supported")
    if data.dtype == np.int16:
        return data.astype(float) / 32768.0
    if data.dtype == np.float32:
        return data.astype(float)
    raise SignalFormatError(f"{path}: unsupported WAV sample type {data.dtype}")


def write_signal(
    samples: np.ndarray, path: str, fmt: str | None = None, sample_rate: int = 48000
) -> None:
    """Write a mono sample stream; ``sample_rate`` only lands in WAV headers."""
    fmt = infer_format(path, fmt)
    samples = np.asarray(samples, dtype=float)
    if fmt == "f64":
        samples.astype("<f8").tofile(path)
        return
    if fmt == "csv":
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            for v in samples:
                fh.write(f"{float(v)!r}\n")
        return
    if fmt == "wav16":
        clipped = np.clip(samples, -1.0, 32767.0 / 32768.0)
        wavfile.write(path, sample_rate, np.round(clipped * 32768.0).astype(np.int16))
        return
    wavfile.write(path, sample_rate, samples.astype(np.float32))
