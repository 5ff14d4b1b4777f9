"""Pure-Python reference implementation of the hot kernels.

Used when the compiled extension is unavailable. Loop structure and
arithmetic order mirror _speedups.pyx so both backends agree numerically.
"""

from __future__ import annotations

from collections import deque
from math import sqrt

import numpy as np

BACKEND = "python"


def betweenness(n, indptr, indices):
    """Brandes shortest-path betweenness over unordered pairs, endpoints
    excluded. CSR adjacency: neighbors of v are indices[indptr[v]:indptr[v+1]].
    """
    scores = np.zeros(n)
    for s in range(n):
        dist = [-1] * n
        sigma = [0] * n
        preds = [[] for _ in range(n)]
        dist[s] = 0
        sigma[s] = 1
        order = []
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w])
            if w != s:
                scores[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    scores *= 0.5
    return scores


def path_stats(n, indptr, indices, nodes):
    """Sum and max of shortest-path distances over ordered pairs of the
    given node set (assumed to be one connected component)."""
    total = 0.0
    diameter = 0
    dist = np.empty(n, dtype=np.int64)
    for s in nodes:
        dist[:] = -1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            dv = dist[v]
            if dv > diameter:
                diameter = dv
            total += dv
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue.append(w)
    return total, int(diameter)


def repulsion_exact(x, y, C, K, fx, fy):
    """Pairwise repulsive force -C*K^2/d, accumulated into fx/fy."""
    n = len(x)
    CK2 = C * K * K
    for i in range(n):
        for j in range(i + 1, n):
            dx = x[i] - x[j]
            dy = y[i] - y[j]
            d2 = dx * dx + dy * dy
            if d2 < 1e-18:
                d2 = 1e-18
                dx = 1e-9
                dy = 0.0
            f = CK2 / d2
            fx[i] += dx * f
            fy[i] += dy * f
            fx[j] -= dx * f
            fy[j] -= dy * f


def repulsion_bh(x, y, C, K, theta, child, half, cx, cy, count, head, nextp, fx, fy):
    """Barnes-Hut approximated repulsion over a flattened quadtree.

    A cell is used as an aggregate when width/distance < theta; leaf cells
    hold a linked list of point indices (head/nextp).
    """
    n = len(x)
    CK2 = C * K * K
    for i in range(n):
        xi = x[i]
        yi = y[i]
        stack = [0]
        while stack:
            c = stack.pop()
            dx = xi - cx[c]
            dy = yi - cy[c]
            d2 = dx * dx + dy * dy
            width = 2.0 * half[c]
            if child[c][0] < 0:
                # leaf: exact interaction with each stored point
                p = head[c]
                while p >= 0:
                    if p != i:
                        dx = xi - x[p]
                        dy = yi - y[p]
                        pd2 = dx * dx + dy * dy
                        if pd2 < 1e-18:
                            pd2 = 1e-18
                            dx = 1e-9
                            dy = 0.0
                        f = CK2 / pd2
                        fx[i] += dx * f
                        fy[i] += dy * f
                    p = nextp[p]
            elif width * width < theta * theta * d2:
                # far enough: treat the cell as count[c] points at its center of mass
                f = CK2 * count[c] / d2
                fx[i] += dx * f
                fy[i] += dy * f
            else:
                for q in range(4):
                    ch = child[c][q]
                    if ch >= 0:
                        stack.append(ch)


def attraction(x, y, esrc, edst, K, fx, fy):
    """Attractive force d^2/K along every edge."""
    for e in range(len(esrc)):
        i = esrc[e]
        j = edst[e]
        dx = x[i] - x[j]
        dy = y[i] - y[j]
        d = sqrt(dx * dx + dy * dy)
        if d < 1e-12:
            continue
        f = d / K  # (d^2/K) / d: direct scaling of the displacement vector
        fx[i] -= dx * f
        fy[i] -= dy * f
        fx[j] += dx * f
        fy[j] += dy * f
