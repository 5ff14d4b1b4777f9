"""Force-directed layout (Yifan Hu scheme): repulsion -C*K^2/d between all
node pairs, attraction d^2/K along edges, adaptive step length.

Repulsion is exact below EXACT_PAIRWISE_LIMIT nodes and Barnes-Hut
approximated above it; the quadtree is built here into flat arrays and the
traversal runs in the kernel backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graphs import Graph
from .rng import SplitMix64

EXACT_PAIRWISE_LIMIT = 100
MAX_TREE_DEPTH = 40
STEP_GROWTH_STREAK = 5


@dataclass(frozen=True)
class LayoutParams:
    optimal_distance: float = 1.0  # K
    relative_strength: float = 0.2  # C
    step_init: float | None = None  # None: 0.1 * sqrt(n)
    step_shrink: float = 0.9
    max_iter: int = 1000
    convergence_tol: float | None = None  # None: 1e-4 * K
    theta: float = 1.2  # Barnes-Hut opening angle

    def __post_init__(self):
        if self.optimal_distance <= 0 or self.relative_strength <= 0:
            raise ValueError("optimal_distance and relative_strength must be positive")
        if not 0.0 < self.step_shrink < 1.0:
            raise ValueError("step_shrink must be in (0, 1)")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if self.theta < 0:
            raise ValueError("theta must be >= 0")


@dataclass(frozen=True)
class LayoutResult:
    positions: np.ndarray  # (n, 2)
    iterations_used: int
    final_energy: float


class _FlatQuadtree:
    """Quadtree over points, stored as flat arrays for the kernels.

    Leaves hold a linked list of point indices (usually one; more only at
    the depth cap, where coincident points pile up). Children are compacted
    left-to-right, so child[c, 0] < 0 marks a leaf.
    """

    def __init__(self, x: np.ndarray, y: np.ndarray):
        n = len(x)
        xmin, xmax = float(x.min()), float(x.max())
        ymin, ymax = float(y.min()), float(y.max())
        half = max(xmax - xmin, ymax - ymin) / 2.0 + 1e-9
        cx0 = (xmin + xmax) / 2.0
        cy0 = (ymin + ymax) / 2.0

        self._gx: list[float] = [cx0]  # geometric centers
        self._gy: list[float] = [cy0]
        self._half: list[float] = [half]
        self._quad: list[list[int]] = [[-1, -1, -1, -1]]
        self._sumx: list[float] = [0.0]
        self._sumy: list[float] = [0.0]
        self._count: list[int] = [0]
        self._head: list[int] = [-1]
        self._leaf: list[bool] = [True]
        self.nextp = np.full(n, -1, dtype=np.int32)
        for p in range(n):
            self._insert(p, float(x[p]), float(y[p]))
        self._finalize()

    def _new_cell(self, gx: float, gy: float, half: float) -> int:
        self._gx.append(gx)
        self._gy.append(gy)
        self._half.append(half)
        self._quad.append([-1, -1, -1, -1])
        self._sumx.append(0.0)
        self._sumy.append(0.0)
        self._count.append(0)
        self._head.append(-1)
        self._leaf.append(True)
        return len(self._half) - 1

    def _quadrant(self, c: int, px: float, py: float) -> int:
        return (1 if px >= self._gx[c] else 0) | (2 if py >= self._gy[c] else 0)

    def _child_geometry(self, c: int, q: int) -> tuple[float, float, float]:
        h = self._half[c] / 2.0
        gx = self._gx[c] + (h if q & 1 else -h)
        gy = self._gy[c] + (h if q & 2 else -h)
        return gx, gy, h

    def _insert(self, p: int, px: float, py: float) -> None:
        c = 0
        depth = 0
        while True:
            self._count[c] += 1
            self._sumx[c] += px
            self._sumy[c] += py
            if self._leaf[c]:
                if self._head[c] < 0:
                    self._head[c] = p
                    return
                if depth >= MAX_TREE_DEPTH:
                    self.nextp[p] = self._head[c]
                    self._head[c] = p
                    return
                # split: push the resident point one level down
                old = self._head[c]
                self._head[c] = -1
                self._leaf[c] = False
                ox = self._sumx[c] - px
                oy = self._sumy[c] - py
                q = self._quadrant(c, ox, oy)
                nc = self._new_cell(*self._child_geometry(c, q))
                self._quad[c][q] = nc
                self._sumx[nc] = ox
                self._sumy[nc] = oy
                self._count[nc] = 1
                self._head[nc] = old
            q = self._quadrant(c, px, py)
            if self._quad[c][q] < 0:
                self._quad[c][q] = self._new_cell(*self._child_geometry(c, q))
            c = self._quad[c][q]
            depth += 1

    def _finalize(self) -> None:
        ncells = len(self._half)
        counts = np.array(self._count, dtype=np.float64)
        self.count = counts
        self.cx = np.array(self._sumx) / counts
        self.cy = np.array(self._sumy) / counts
        self.half = np.array(self._half)
        self.head = np.array(self._head, dtype=np.int32)
        child = np.full((ncells, 4), -1, dtype=np.int32)
        for c, quad in enumerate(self._quad):
            k = 0
            for q in range(4):
                if quad[q] >= 0:
                    child[c, k] = quad[q]
                    k += 1
        self.child = child


def _edge_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    if g.m == 0:
        return np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int32)
    edges = sorted(g.edges)
    esrc = np.array([e[0] for e in edges], dtype=np.int32)
    edst = np.array([e[1] for e in edges], dtype=np.int32)
    return esrc, edst


def yifan_hu_layout(g: Graph, params: LayoutParams = LayoutParams(), seed: int = 0) -> LayoutResult:
    """Lay out the graph in 2-D; deterministic per (graph, params, seed)."""
    n = g.n
    if n == 0:
        return LayoutResult(positions=np.empty((0, 2)), iterations_used=0, final_energy=0.0)
    if n == 1:
        return LayoutResult(positions=np.zeros((1, 2)), iterations_used=0, final_energy=0.0)

    K = params.optimal_distance
    C = params.relative_strength
    step_init = params.step_init if params.step_init is not None else 0.1 * math.sqrt(n)
    tol = params.convergence_tol if params.convergence_tol is not None else 1e-4 * K

    rng = SplitMix64(seed)
    box = K * math.sqrt(n)
    x = np.empty(n)
    y = np.empty(n)
    for v in range(n):
        x[v] = rng.random() * box
        y[v] = rng.random() * box
    esrc, edst = _edge_arrays(g)

    fx = np.zeros(n)
    fy = np.zeros(n)
    step = step_init
    energy = math.inf
    streak = 0
    iterations = 0
    for iterations in range(1, params.max_iter + 1):
        fx[:] = 0.0
        fy[:] = 0.0
        if n < EXACT_PAIRWISE_LIMIT:
            _kernels.repulsion_exact(x, y, C, K, fx, fy)
        else:
            tree = _FlatQuadtree(x, y)
            _kernels.repulsion_bh(
                x, y, C, K, params.theta,
                tree.child, tree.half, tree.cx, tree.cy, tree.count,
                tree.head, tree.nextp, fx, fy,
            )
        if esrc.size:
            _kernels.attraction(x, y, esrc, edst, K, fx, fy)

        norm = np.sqrt(fx * fx + fy * fy)
        new_energy = float(np.sum(fx * fx + fy * fy))
        moving = norm > 0.0
        x[moving] += step * fx[moving] / norm[moving]
        y[moving] += step * fy[moving] / norm[moving]
        total_change = step * float(np.count_nonzero(moving))

        # adaptive step: shrink on energy increase, grow after a streak of decreases
        if new_energy < energy:
            streak += 1
            if streak >= STEP_GROWTH_STREAK:
                streak = 0
                step = min(step / params.step_shrink, step_init)
        else:
            streak = 0
            step *= params.step_shrink
        energy = new_energy

        if total_change < tol:
            break

    return LayoutResult(
        positions=np.column_stack([x, y]),
        iterations_used=iterations,
        final_energy=energy,
    )
