"""SVG rendering of a laid-out graph with betweenness-tier styling."""

from __future__ import annotations

from typing import Sequence

from .errors import MissingPositionError
from .graphs import TIER_CORE, TIER_GENERAL, TIER_IMPORTANT, Graph
from .layout import LayoutResult

TIER_RADIUS = {TIER_CORE: 9.0, TIER_IMPORTANT: 6.0, TIER_GENERAL: 4.0}
TIER_FILL = {TIER_CORE: "#333333", TIER_IMPORTANT: "#777777", TIER_GENERAL: "#bbbbbb"}
EDGE_STYLE = 'stroke="#999999" stroke-width="0.5" stroke-opacity="0.6"'
MARGIN_FRACTION = 0.05
RENDER_SCALE = 100.0  # layout units to SVG user units


def render_svg(g: Graph, layout: LayoutResult, tiers: Sequence[str] | None = None) -> str:
    """Deterministic SVG text: edges as lines, nodes as circles whose radius
    and darkness grow with tier (core > important > general)."""
    if layout.positions.shape[0] < g.n:
        raise MissingPositionError(
            f"layout has {layout.positions.shape[0]} positions for {g.n} nodes"
        )
    if tiers is None:
        tiers = [TIER_GENERAL] * g.n
    if len(tiers) != g.n:
        raise MissingPositionError(f"got {len(tiers)} tiers for {g.n} nodes")

    pos = layout.positions * RENDER_SCALE
    if g.n:
        xmin, ymin = pos.min(axis=0)
        xmax, ymax = pos.max(axis=0)
    else:
        xmin = ymin = xmax = ymax = 0.0
    span = max(xmax - xmin, ymax - ymin, 1.0)
    margin = MARGIN_FRACTION * span + max(TIER_RADIUS.values())
    vb = (
        xmin - margin,
        ymin - margin,
        (xmax - xmin) + 2 * margin,
        (ymax - ymin) + 2 * margin,
    )

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{vb[0]:.3f} {vb[1]:.3f} {vb[2]:.3f} {vb[3]:.3f}">',
    ]
    for u, v in sorted(g.edges):
        lines.append(
            f'<line x1="{pos[u, 0]:.3f}" y1="{pos[u, 1]:.3f}" '
            f'x2="{pos[v, 0]:.3f}" y2="{pos[v, 1]:.3f}" {EDGE_STYLE}/>'
        )
    for v in range(g.n):
        tier = tiers[v]
        lines.append(
            f'<circle cx="{pos[v, 0]:.3f}" cy="{pos[v, 1]:.3f}" '
            f'r="{TIER_RADIUS[tier]:.1f}" fill="{TIER_FILL[tier]}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
