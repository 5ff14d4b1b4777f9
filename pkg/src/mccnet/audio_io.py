"""WAV loading into normalized mono sample buffers.

Only RIFF/WAVE, PCM, 16-bit, 1-2 channels is accepted: deterministic
decoding with no codec dependencies. Stereo collapses to mono by per-sample
channel average. No resampling is done; downstream stages work in seconds
and convert with the file's own rate.
"""

from __future__ import annotations

import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CorruptHeaderError, UnsupportedFormatError


@dataclass(frozen=True)
class AudioBuffer:
    """Mono audio: amplitudes in [-1, 1] plus the sampling rate in Hz."""

    samples: np.ndarray  # float64, shape (N,)
    sample_rate: int

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        if self.samples.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if self.samples.size and not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate

    def __len__(self) -> int:
        return self.samples.size


def load_wav(path: str | Path) -> AudioBuffer:
    """Load a 16-bit PCM WAV file as a normalized mono buffer.

    Raises FileNotFoundError, UnsupportedFormatError (non-PCM, bit depth
    != 16, more than 2 channels) or CorruptHeaderError (malformed RIFF).
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    try:
        with wave.open(str(path), "rb") as wf:
            n_channels = wf.getnchannels()
            sampwidth = wf.getsampwidth()
            rate = wf.getframerate()
            n_frames = wf.getnframes()
            comptype = wf.getcomptype()
            if comptype != "NONE":
                raise UnsupportedFormatError(f"{path}: compression {comptype!r} not supported")
            if sampwidth != 2:
                raise UnsupportedFormatError(f"{path}: {8 * sampwidth}-bit PCM not supported, need 16-bit")
            if n_channels not in (1, 2):
                raise UnsupportedFormatError(f"{path}: {n_channels} channels not supported")
            raw = wf.readframes(n_frames)
    except wave.Error as exc:
        raise CorruptHeaderError(f"{path}: {exc}") from exc
    except EOFError as exc:
        raise CorruptHeaderError(f"{path}: truncated file") from exc

    data = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    if n_channels == 2:
        data = data.reshape(-1, 2).mean(axis=1)
    return AudioBuffer(samples=data, sample_rate=rate)


def save_wav(path: str | Path, buffer: AudioBuffer) -> None:
    """Write a mono buffer as 16-bit PCM WAV (round-trip exact for
    amplitudes that are multiples of 1/32768)."""
    quantized = np.clip(np.rint(buffer.samples * 32768.0), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(buffer.sample_rate)
        wf.writeframes(quantized.tobytes())
