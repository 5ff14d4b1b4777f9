"""Undirected simple graphs and the five structural metrics: average path
length, diameter, density, modularity (with greedy community detection),
and average clustering coefficient. Plus betweenness centrality and the
core/important/general node tiers derived from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from . import _kernels
from .errors import NoEdgesError, SingleNodeError

TIER_CORE = "core"
TIER_IMPORTANT = "important"
TIER_GENERAL = "general"

CORE_FRACTION = 0.05
IMPORTANT_FRACTION = 0.20


@dataclass
class Graph:
    """Simple undirected graph on nodes 0..n-1."""

    n: int
    edges: set[tuple[int, int]] = field(default_factory=set)
    payloads: dict[int, Any] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be non-negative")
        for u, v in self.edges:
            self._check_pair(u, v)
        self.edges = {(min(u, v), max(u, v)) for u, v in self.edges}

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop at node {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) outside 0..{self.n - 1}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def add_edge(self, u: int, v: int) -> None:
        self._check_pair(u, v)
        self.edges.add((min(u, v), max(u, v)))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) int32 arrays for the kernel backends."""
        adj = self.adjacency()
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        for v, nbrs in enumerate(adj):
            indptr[v + 1] = indptr[v] + len(nbrs)
        indices = np.fromiter(
            (w for nbrs in adj for w in nbrs), dtype=np.int32, count=int(indptr[-1])
        )
        return indptr, indices

    def connected_components(self) -> list[list[int]]:
        """Components as sorted node lists, largest first (ties by smallest node)."""
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        comps.sort(key=lambda c: (-len(c), c[0]))
        return comps


@dataclass(frozen=True)
class MetricVector:
    """(APL, ND, GD, M, CC) for one graph."""

    apl: float
    nd: float
    gd: float
    m: float
    cc: float

    def as_array(self) -> np.ndarray:
        return np.array([self.apl, self.nd, self.gd, self.m, self.cc])

    def csv_row(self) -> str:
        return ",".join(f"{v:.6f}" for v in self.as_array())


@dataclass(frozen=True)
class Partition:
    """Community id per node."""

    communities: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.communities):
            raise ValueError("community ids must be non-negative")


def _largest_component_stats(g: Graph) -> tuple[float, int, int]:
    """(sum of distances, diameter, size) over the largest component."""
    comp = g.connected_components()[0]
    nodes = np.array(comp, dtype=np.int32)
    indptr, indices = g.to_csr()
    total, diam = _kernels.path_stats(g.n, indptr, indices, nodes)
    return total, diam, len(comp)


def apl(g: Graph) -> float:
    """Mean shortest-path length over ordered pairs of distinct nodes in the
    largest connected component."""
    if g.n < 2:
        raise SingleNodeError("average path length needs >= 2 nodes")
    total, _, size = _largest_component_stats(g)
    if size < 2:
        raise SingleNodeError("largest component is a single node")
    return total / (size * (size - 1))


def diameter(g: Graph) -> float:
    """Longest shortest path within the largest connected component."""
    if g.n < 1:
        raise SingleNodeError("diameter needs >= 1 node")
    if g.n == 1:
        return 0.0
    _, diam, _ = _largest_component_stats(g)
    return float(diam)


def density(g: Graph) -> float:
    if g.n < 2:
        raise SingleNodeError("density needs >= 2 nodes")
    return 2.0 * g.m / (g.n * (g.n - 1))


def modularity(g: Graph, p: Partition) -> float:
    """Q = (1/2S) * sum_ij (A_ij - k_i k_j / 2S) * [same community], with
    S = edge count and the sum over all ordered pairs including i = j."""
    if g.m < 1:
        raise NoEdgesError("modularity needs >= 1 edge")
    if len(p.communities) != g.n:
        raise ValueError("partition size does not match node count")
    two_s = 2.0 * g.m
    deg = g.degrees()
    intra = 0  # edges inside a community
    for u, v in g.edges:
        if p.communities[u] == p.communities[v]:
            intra += 1
    deg_sums: dict[int, float] = {}
    for v in range(g.n):
        deg_sums[p.communities[v]] = deg_sums.get(p.communities[v], 0.0) + deg[v]
    q = 2.0 * intra / two_s
    for dsum in deg_sums.values():
        q -= (dsum / two_s) ** 2
    return q


def detect_communities(g: Graph) -> Partition:
    """Greedy agglomerative modularity maximization (CNM-style).

    Starts from singleton communities and repeatedly applies the merge with
    the largest modularity gain until no merge is strictly positive. Ties
    break on the smallest (community-id, community-id) pair, so the result
    is deterministic.
    """
    if g.m < 1:
        raise NoEdgesError("community detection needs >= 1 edge")
    two_s = 2.0 * g.m
    comm = list(range(g.n))  # node -> community id (smallest member id)
    deg = g.degrees()
    a = {v: deg[v] / two_s for v in range(g.n)}  # community degree fraction
    # e[(c1, c2)]: fraction of edges between communities c1 < c2
    e: dict[tuple[int, int], float] = {}
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        e[key] = e.get(key, 0.0) + 1.0 / two_s

    while True:
        best_gain = 1e-15  # merges must be strictly positive
        best_pair = None
        # sorted iteration + strict improvement = smallest-pair tie-break
        for (c1, c2), e12 in sorted(e.items()):
            gain = 2.0 * (e12 - a[c1] * a[c2])
            if gain > best_gain:
                best_gain = gain
                best_pair = (c1, c2)
        if best_pair is None:
            break
        c1, c2 = best_pair  # merge c2 into c1 (c1 < c2)
        for v in range(g.n):
            if comm[v] == c2:
                comm[v] = c1
        a[c1] += a.pop(c2)
        merged: dict[tuple[int, int], float] = {}
        for (x, y), val in e.items():
            if (x, y) == (c1, c2):
                continue
            x = c1 if x == c2 else x
            y = c1 if y == c2 else y
            if x == y:
                continue  # now internal
            key = (min(x, y), max(x, y))
            merged[key] = merged.get(key, 0.0) + val
        e = merged
    return Partition(communities=tuple(comm))


def avg_clustering(g: Graph) -> float:
    """Mean over nodes of 2*t_i / (k_i (k_i - 1)); degree-<2 nodes count 0."""
    if g.n < 1:
        raise SingleNodeError("clustering needs >= 1 node")
    adj = g.adjacency()
    neighbor_sets = [set(nbrs) for nbrs in adj]
    total = 0.0
    for v in range(g.n):
        k = len(adj[v])
        if k < 2:
            continue
        t = 0
        nbrs = adj[v]
        for i in range(k):
            for j in range(i + 1, k):
                if nbrs[j] in neighbor_sets[nbrs[i]]:
                    t += 1
        total += 2.0 * t / (k * (k - 1))
    return total / g.n


def betweenness(g: Graph) -> np.ndarray:
    """Unnormalized shortest-path betweenness over unordered pairs,
    endpoints excluded (Brandes accumulation)."""
    if g.n < 1:
        raise SingleNodeError("betweenness needs >= 1 node")
    indptr, indices = g.to_csr()
    return _kernels.betweenness(g.n, indptr, indices)


def categorize_nodes(scores: Iterable[float]) -> list[str]:
    """Descending-score tiers: top ceil(5%) core, next ceil(20%) important,
    rest general. Ties resolve in favor of the lower node id."""
    scores = list(scores)
    n = len(scores)
    if n < 1:
        raise ValueError("need at least one score")
    order = sorted(range(n), key=lambda v: (-scores[v], v))
    n_core = math.ceil(CORE_FRACTION * n)
    n_important = math.ceil(IMPORTANT_FRACTION * n)
    tiers = [TIER_GENERAL] * n
    for rank, v in enumerate(order):
        if rank < n_core:
            tiers[v] = TIER_CORE
        elif rank < n_core + n_important:
            tiers[v] = TIER_IMPORTANT
    return tiers


def metric_vector(g: Graph) -> MetricVector:
    """The 5-tuple (APL, ND, GD, M, CC); M uses the detected communities."""
    if g.n < 2:
        raise SingleNodeError("metric vector needs >= 2 nodes")
    if g.m < 1:
        raise NoEdgesError("metric vector needs >= 1 edge")
    total, diam, size = _largest_component_stats(g)
    return MetricVector(
        apl=total / (size * (size - 1)),
        nd=float(diam),
        gd=density(g),
        m=modularity(g, detect_communities(g)),
        cc=avg_clustering(g),
    )


def component_coverage(g: Graph) -> float:
    """Fraction of nodes inside the largest connected component."""
    if g.n == 0:
        return 0.0
    return len(g.connected_components()[0]) / g.n
