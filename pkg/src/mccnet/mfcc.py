"""MFCC extraction: pre-emphasis, framing, Hamming window, FFT power
spectrum, triangular mel filterbank, log, and orthonormal DCT-II.

Defaults follow the conventional recipe (0.97 pre-emphasis, 25 ms frames,
10 ms hop, 26 filters, 13 kept coefficients including the 0th).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from .audio_io import AudioBuffer
from .errors import DomainError, EmptyAudioError

LOG_FLOOR = 1e-10  # filter energies are floored here before the log


@dataclass(frozen=True)
class MfccConfig:
    pre_emphasis_alpha: float = 0.97
    frame_len_s: float = 0.025
    hop_len_s: float = 0.010
    n_mel_filters: int = 26
    n_coeffs: int = 13
    fft_size: int | None = None  # None: next power of two >= frame length

    def __post_init__(self):
        if not 0.0 <= self.pre_emphasis_alpha < 1.0:
            raise ValueError("pre_emphasis_alpha must be in [0, 1)")
        if not 0.0 < self.hop_len_s <= self.frame_len_s:
            raise ValueError("need 0 < hop_len_s <= frame_len_s")
        if self.n_mel_filters < 1 or self.n_coeffs < 1:
            raise ValueError("filter and coefficient counts must be positive")
        if self.n_coeffs > self.n_mel_filters:
            raise ValueError("n_coeffs must not exceed n_mel_filters")
        if self.fft_size is not None and (
            self.fft_size < 1 or self.fft_size & (self.fft_size - 1)
        ):
            raise ValueError("fft_size must be a power of two")

    def frame_len(self, rate: int) -> int:
        return int(round(self.frame_len_s * rate))

    def hop_len(self, rate: int) -> int:
        return int(round(self.hop_len_s * rate))

    def effective_fft_size(self, rate: int) -> int:
        L = self.frame_len(rate)
        if self.fft_size is not None:
            if self.fft_size < L:
                raise ValueError("fft_size smaller than frame length")
            return self.fft_size
        nfft = 1
        while nfft < L:
            nfft *= 2
        return nfft


@dataclass(frozen=True)
class MfccMatrix:
    """n_coeffs x F matrix; one column per frame."""

    coeffs: np.ndarray
    frame_hop_s: float
    source_rate: int

    @property
    def n_frames(self) -> int:
        return self.coeffs.shape[1]

    @property
    def n_coeffs(self) -> int:
        return self.coeffs.shape[0]


def pre_emphasis(buffer: AudioBuffer, alpha: float) -> AudioBuffer:
    """y[0] = x[0]; y[t] = x[t] - alpha * x[t-1]."""
    if not 0.0 <= alpha < 1.0:
        raise DomainError("alpha must be in [0, 1)")
    x = buffer.samples
    if x.size == 0:
        return buffer
    y = np.empty_like(x)
    y[0] = x[0]
    y[1:] = x[1:] - alpha * x[:-1]
    return AudioBuffer(samples=y, sample_rate=buffer.sample_rate)


def frame_and_window(buffer: AudioBuffer, config: MfccConfig) -> np.ndarray:
    """Slice into F = 1 + floor((N - L)/H) frames and apply a Hamming window.

    Returns an (F, L) array; F = 0 when the buffer is shorter than a frame.
    """
    rate = buffer.sample_rate
    L = config.frame_len(rate)
    H = config.hop_len(rate)
    x = buffer.samples
    if x.size < L:
        return np.empty((0, L))
    F = 1 + (x.size - L) // H
    idx = np.arange(L)[None, :] + H * np.arange(F)[:, None]
    if L > 1:
        window = 0.54 - 0.46 * np.cos(2.0 * np.pi * np.arange(L) / (L - 1))
    else:
        window = np.ones(1)
    return x[idx] * window


def hz_to_mel(f: float) -> float:
    if f < 0:
        raise DomainError("frequency must be non-negative")
    return 2595.0 * np.log10(1.0 + f / 700.0)


def mel_to_hz(mel: float) -> float:
    return 700.0 * (10.0 ** (mel / 2595.0) - 1.0)


def mel_filterbank(n_filters: int, nfft: int, rate: int) -> np.ndarray:
    """Triangular filters spaced uniformly in mel between 0 Hz and rate/2.

    Filters are continuous triangles evaluated at the FFT bin frequencies,
    so each filter peaks (value 1) at its mel-center. Shape (n_filters,
    nfft//2 + 1).
    """
    mel_points = np.linspace(0.0, hz_to_mel(rate / 2.0), n_filters + 2)
    hz_points = np.array([mel_to_hz(m) for m in mel_points])
    bin_freqs = np.arange(nfft // 2 + 1) * (rate / nfft)
    fb = np.zeros((n_filters, bin_freqs.size))
    for j in range(n_filters):
        lo, center, hi = hz_points[j], hz_points[j + 1], hz_points[j + 2]
        up = (bin_freqs - lo) / (center - lo)
        down = (hi - bin_freqs) / (hi - center)
        fb[j] = np.maximum(0.0, np.minimum(up, down))
    return fb


def filter_centers_hz(n_filters: int, rate: int) -> np.ndarray:
    """Center frequency (Hz) of each mel filter."""
    mel_points = np.linspace(0.0, hz_to_mel(rate / 2.0), n_filters + 2)
    return np.array([mel_to_hz(m) for m in mel_points[1:-1]])


def filterbank_energies(buffer: AudioBuffer, config: MfccConfig) -> np.ndarray:
    """Per-frame mel filter energies before the log/DCT, shape (n_filters, F)."""
    if len(buffer) == 0:
        raise EmptyAudioError("cannot compute features of empty audio")
    emphasized = pre_emphasis(buffer, config.pre_emphasis_alpha)
    frames = frame_and_window(emphasized, config)
    nfft = config.effective_fft_size(buffer.sample_rate)
    spectrum = np.abs(np.fft.rfft(frames, n=nfft, axis=1)) ** 2
    fb = mel_filterbank(config.n_mel_filters, nfft, buffer.sample_rate)
    return fb @ spectrum.T


def compute_mfcc(buffer: AudioBuffer, config: MfccConfig = MfccConfig()) -> MfccMatrix:
    """Full pipeline; deterministic for identical input and config."""
    energies = filterbank_energies(buffer, config)
    log_energies = np.log(np.maximum(energies, LOG_FLOOR))
    cepstra = dct(log_energies, type=2, axis=0, norm="ortho")[: config.n_coeffs]
    return MfccMatrix(
        coeffs=cepstra,
        frame_hop_s=config.hop_len_s,
        source_rate=buffer.sample_rate,
    )


def write_mfcc_csv(matrix: MfccMatrix, path) -> None:
    """Headerless CSV dump: 13 rows, one column per frame."""
    with open(path, "w") as fh:
        for row in matrix.coeffs:
            fh.write(",".join(f"{v:.6f}" for v in row))
            fh.write("\n")
