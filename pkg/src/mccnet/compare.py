"""Weighted dissimilarity between music networks and reference topologies.

D = sum_k w_k * |F_k_music - F_k_reference| over the five metrics
(APL, ND, GD, M, CC), with the built-in offense/defense weight profiles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import EmptyGroupError
from .graphs import MetricVector

METRIC_NAMES = ("APL", "ND", "GD", "M", "CC")
VARIANT_COLUMNS = ("RTN", "RAN", "SOS", "BANWC2NM")


@dataclass(frozen=True)
class WeightProfile:
    """Weights for (APL, ND, GD, M, CC), each >= 0."""

    weights: tuple[float, float, float, float, float]
    name: str = "custom"

    def __post_init__(self):
        if len(self.weights) != 5:
            raise ValueError("need exactly 5 weights")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")

    def as_array(self) -> np.ndarray:
        return np.array(self.weights)


OFFENSE = WeightProfile((0.4, 0.4, 0.05, 0.075, 0.075), name="offense")
DEFENSE = WeightProfile((0.05, 0.075, 0.4, 0.075, 0.4), name="defense")
UNIFORM = WeightProfile((0.2, 0.2, 0.2, 0.2, 0.2), name="uniform")

BUILTIN_PROFILES = {"offense": OFFENSE, "defense": DEFENSE, "uniform": UNIFORM}


@dataclass(frozen=True)
class SongRow:
    name: str
    values: tuple[float, ...]  # one per reference variant
    best_match: str


@dataclass(frozen=True)
class GroupRow:
    group: str
    values: tuple[float, ...]
    best_match: str


@dataclass(frozen=True)
class DissimilarityReport:
    variant_names: tuple[str, ...]
    rows: tuple[SongRow, ...]
    group_rows: tuple[GroupRow, ...]


def dissimilarity(f_mus: MetricVector, f_mil: MetricVector, w: WeightProfile) -> float:
    """Weighted L1 distance between two metric vectors."""
    diff = np.abs(f_mus.as_array() - f_mil.as_array())
    return float(np.dot(w.as_array(), diff))


def _minmax_normalize(vectors: list[np.ndarray]) -> list[np.ndarray]:
    """Min-max over the comparison set, per component; constant components
    map to 0."""
    stacked = np.stack(vectors)
    lo = stacked.min(axis=0)
    span = stacked.max(axis=0) - lo
    span[span == 0.0] = 1.0
    return [(v - lo) / span for v in vectors]


def compare_group(
    group_name: str,
    songs: Sequence[tuple[str, MetricVector]],
    variants: Mapping[str, MetricVector],
    w: WeightProfile,
    normalize: bool = False,
) -> DissimilarityReport:
    """Per-song dissimilarities against each reference variant plus the
    group mean row; best match marks the argmin variant."""
    if not songs:
        raise EmptyGroupError(f"group {group_name!r} has no songs")
    variant_names = tuple(variants.keys())
    song_vecs = [mv.as_array() for _, mv in songs]
    variant_vecs = [variants[name].as_array() for name in variant_names]
    if normalize:
        normalized = _minmax_normalize(song_vecs + variant_vecs)
        song_vecs = normalized[: len(song_vecs)]
        variant_vecs = normalized[len(song_vecs):]
    wv = w.as_array()

    rows = []
    for (name, _), sv in zip(songs, song_vecs):
        values = tuple(float(np.dot(wv, np.abs(sv - rv))) for rv in variant_vecs)
        rows.append(SongRow(name=name, values=values, best_match=variant_names[int(np.argmin(values))]))
    group_values = tuple(np.mean([r.values[k] for r in rows]) for k in range(len(variant_names)))
    group_row = GroupRow(
        group=group_name,
        values=group_values,
        best_match=variant_names[int(np.argmin(group_values))],
    )
    return DissimilarityReport(variant_names=variant_names, rows=tuple(rows), group_rows=(group_row,))


def merge_reports(reports: Sequence[DissimilarityReport]) -> DissimilarityReport:
    if not reports:
        raise EmptyGroupError("no reports to merge")
    names = reports[0].variant_names
    for r in reports:
        if r.variant_names != names:
            raise ValueError("reports cover different variant sets")
    return DissimilarityReport(
        variant_names=names,
        rows=tuple(row for r in reports for row in r.rows),
        group_rows=tuple(gr for r in reports for gr in r.group_rows),
    )


def song_report_csv(report: DissimilarityReport) -> str:
    """Per-song table: song, one column per variant (4 decimals), best match."""
    lines = ["song," + ",".join(report.variant_names) + ",best_match"]
    for row in report.rows:
        lines.append(row.name + "," + ",".join(f"{v:.4f}" for v in row.values) + f",{row.best_match}")
    return "\n".join(lines) + "\n"


def group_report_csv(report: DissimilarityReport) -> str:
    """Per-group table: group, one column per variant (4 decimals), best match."""
    lines = ["group," + ",".join(report.variant_names) + ",best_match"]
    for row in report.group_rows:
        lines.append(row.group + "," + ",".join(f"{v:.4f}" for v in row.values) + f",{row.best_match}")
    return "\n".join(lines) + "\n"
