"""Music Clips Correlation Network construction.

A piece's MFCC matrix is cut into equal-duration clips; each clip becomes a
node carrying its flattened MFCC block; nodes are joined when their cosine
similarity reaches the median of all pairwise similarities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ClipLongerThanPieceError,
    LengthMismatchError,
    TooFewClipsError,
    ZeroVectorError,
)
from .graphs import Graph
from .mfcc import MfccMatrix

DEFAULT_CLIP_LEN_S = 6.0


@dataclass(frozen=True)
class ClipFeature:
    """One clip of a piece: flattened MFCC block plus its position."""

    vector: np.ndarray
    clip_index: int
    start_time_s: float


@dataclass(frozen=True)
class Mccn:
    graph: Graph
    threshold: float
    similarities: np.ndarray  # symmetric, 1.0 on the diagonal


def segment_clips(matrix: MfccMatrix, clip_len_s: float = DEFAULT_CLIP_LEN_S) -> list[ClipFeature]:
    """Cut consecutive non-overlapping clips; a trailing partial clip is dropped.

    Each clip's n_coeffs x frames_per_clip block is flattened column-major so
    temporal order within the clip is preserved in the vector.
    """
    if clip_len_s <= 0:
        raise ValueError("clip_len_s must be positive")
    frames_per_clip = int(round(clip_len_s / matrix.frame_hop_s))
    if frames_per_clip > matrix.n_frames:
        raise ClipLongerThanPieceError(
            f"clip needs {frames_per_clip} frames, piece has {matrix.n_frames}"
        )
    n_clips = matrix.n_frames // frames_per_clip
    clips = []
    for i in range(n_clips):
        block = matrix.coeffs[:, i * frames_per_clip : (i + 1) * frames_per_clip]
        clips.append(
            ClipFeature(
                vector=block.flatten(order="F"),
                clip_index=i,
                start_time_s=i * frames_per_clip * matrix.frame_hop_s,
            )
        )
    return clips


def cosine_similarity(a: ClipFeature, b: ClipFeature) -> float:
    """cos of the angle between the two clip vectors, in [-1, 1]."""
    va, vb = a.vector, b.vector
    if va.size != vb.size:
        raise LengthMismatchError(f"vector lengths differ: {va.size} vs {vb.size}")
    na = float(np.linalg.norm(va))
    nb = float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        raise ZeroVectorError("cosine similarity undefined for an all-zero clip vector")
    return float(np.dot(va, vb) / (na * nb))


def median_threshold(values: Sequence[float]) -> float:
    """Median of the pairwise similarities: middle order statistic, or the
    mean of the two middle ones for an even count."""
    if len(values) < 1:
        raise TooFewClipsError("need at least one similarity value (>= 2 clips)")
    ordered = sorted(values)
    k = len(ordered)
    if k % 2 == 1:
        return ordered[k // 2]
    return 0.5 * (ordered[k // 2 - 1] + ordered[k // 2])


def build_mccn(clips: Sequence[ClipFeature]) -> Mccn:
    """Node per clip; edge per pair whose similarity >= the median similarity."""
    n = len(clips)
    if n < 2:
        raise TooFewClipsError(f"need >= 2 clips, got {n}")
    vectors = np.stack([c.vector for c in clips])
    norms = np.linalg.norm(vectors, axis=1)
    zero = np.nonzero(norms == 0.0)[0]
    if zero.size:
        raise ZeroVectorError(f"clip(s) {zero.tolist()} have all-zero feature vectors")
    normalized = vectors / norms[:, None]
    sims = np.clip(normalized @ normalized.T, -1.0, 1.0)
    np.fill_diagonal(sims, 1.0)

    iu, ju = np.triu_indices(n, k=1)
    threshold = median_threshold(sims[iu, ju].tolist())

    graph = Graph(n=n, payloads={c.clip_index: c for c in clips})
    for i, j in zip(iu, ju):
        if sims[i, j] >= threshold:
            graph.add_edge(int(i), int(j))
    return Mccn(graph=graph, threshold=threshold, similarities=sims)
