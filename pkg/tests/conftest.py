"""Shared fixtures and independent oracles.

The oracles (Floyd-Warshall, exhaustive triangle counting, explicit
shortest-path enumeration, exhaustive partition search) deliberately avoid
the library's own algorithms so metric tests are dual-route.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np
import pytest

from mccnet.audio_io import AudioBuffer
from mccnet.graphs import Graph
from mccnet.rng import SplitMix64


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi style graph from the seeded stream."""
    rng = SplitMix64(seed)
    g = Graph(n=n)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                g.add_edge(i, j)
    return g


def floyd_warshall(g: Graph) -> np.ndarray:
    dist = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for u, v in g.edges:
        dist[u, v] = dist[v, u] = 1.0
    for k in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                if dist[i, k] + dist[k, j] < dist[i, j]:
                    dist[i, j] = dist[i, k] + dist[k, j]
    return dist


def oracle_apl_diameter(g: Graph) -> tuple[float, float]:
    """APL and diameter over the largest component, via Floyd-Warshall."""
    dist = floyd_warshall(g)
    comps = g.connected_components()
    comp = comps[0]
    total = 0.0
    diam = 0.0
    for i in comp:
        for j in comp:
            if i != j:
                total += dist[i, j]
                diam = max(diam, dist[i, j])
    if len(comp) < 2:
        return math.nan, 0.0
    return total / (len(comp) * (len(comp) - 1)), diam


def oracle_clustering(g: Graph) -> float:
    """Exhaustive neighbor-pair triangle counting."""
    adj = [set() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    total = 0.0
    for v in range(g.n):
        k = len(adj[v])
        if k < 2:
            continue
        t = sum(1 for a, b in itertools.combinations(sorted(adj[v]), 2) if b in adj[a])
        total += 2.0 * t / (k * (k - 1))
    return total / g.n


def oracle_betweenness(g: Graph) -> np.ndarray:
    """Explicit enumeration of every shortest path between every pair."""
    adj = g.adjacency()
    dist = floyd_warshall(g)
    scores = np.zeros(g.n)
    for s in range(g.n):
        for t in range(s + 1, g.n):
            if not np.isfinite(dist[s, t]):
                continue
            paths: list[list[int]] = []
            stack = [[s]]
            while stack:
                path = stack.pop()
                v = path[-1]
                if v == t:
                    paths.append(path)
                    continue
                for w in adj[v]:
                    if dist[s, w] == len(path) and dist[w, t] == dist[s, t] - len(path):
                        stack.append(path + [w])
            for path in paths:
                for v in path[1:-1]:
                    scores[v] += 1.0 / len(paths)
    return scores


def oracle_best_partition(g: Graph):
    """Exhaustive search over all partitions (tiny graphs only)."""
    from mccnet.graphs import Partition, modularity

    best_q = -math.inf
    best = None
    nodes = list(range(g.n))

    def partitions(collection):
        if len(collection) == 1:
            yield [collection]
            return
        first = collection[0]
        for smaller in partitions(collection[1:]):
            for i, subset in enumerate(smaller):
                yield smaller[:i] + [[first] + subset] + smaller[i + 1 :]
            yield [[first]] + smaller

    for blocks in partitions(nodes):
        comm = [0] * g.n
        for cid, block in enumerate(blocks):
            for v in block:
                comm[v] = cid
        q = modularity(g, Partition(tuple(comm)))
        if q > best_q + 1e-12:
            best_q = q
            best = blocks
    return best_q, best


def is_tree(g: Graph) -> bool:
    """Union-find check: connected and acyclic."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return g.m == g.n - 1


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    adj = g.adjacency()
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def sine_buffer(freq: float, duration_s: float, rate: int = 8000, amp: float = 0.5) -> AudioBuffer:
    t = np.arange(int(duration_s * rate)) / rate
    return AudioBuffer(samples=amp * np.sin(2 * np.pi * freq * t), sample_rate=rate)


@pytest.fixture
def tmp_wav(tmp_path):
    """Write a synthetic buffer to a temp WAV and return its path."""
    from mccnet.audio_io import save_wav

    def make(buffer: AudioBuffer, name: str = "piece.wav"):
        path = tmp_path / name
        save_wav(path, buffer)
        return path

    return make
