"""Reference military-strategy topologies.

Four generators: RTN (uniform random-attachment tree), RAN (triangle seed;
each new node joins both endpoints of a random existing edge), SOS (layered
hierarchy with redundant upward links), and BA-NW-C2NM (growth mixing
degree-proportional and uniform attachment). All are driven by the seeded
splitmix64 stream, so an instance is fully determined by (variant, params,
seed).

Note: RAN here follows the edge-based rule (new node connects to the two
endpoints of a randomly chosen edge, which is kept), not the face-based
Apollonian rule that would connect to three triangle corners.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParamsError
from .graphs import Graph, MetricVector, metric_vector
from .rng import SplitMix64

VARIANTS = ("rtn", "ran", "sos", "ba")

SOS_DEFAULT_LAYERS = 3
SOS_DEFAULT_PARENTS = 2
SOS_DEFAULT_INTRA_P = 0.1
BA_DEFAULT_EDGES_PER_NODE = 2
BA_DEFAULT_PREF_P = 0.5


@dataclass(frozen=True)
class SosParams:
    layers: int = SOS_DEFAULT_LAYERS
    parents_per_node: int = SOS_DEFAULT_PARENTS
    intra_layer_p: float = SOS_DEFAULT_INTRA_P


@dataclass(frozen=True)
class BaParams:
    edges_per_node: int = BA_DEFAULT_EDGES_PER_NODE
    preferential_p: float = BA_DEFAULT_PREF_P


def gen_rtn(n: int, seed: int) -> Graph:
    """Random tree: each node i >= 1 attaches to one uniform random
    predecessor. Always connected and acyclic with n-1 edges."""
    if n < 1:
        raise InvalidParamsError("rtn needs n >= 1")
    rng = SplitMix64(seed)
    g = Graph(n=n)
    for i in range(1, n):
        g.add_edge(i, rng.randrange(i))
    return g


def gen_ran(n: int, seed: int) -> Graph:
    """Triangle seed; each new node picks a uniform random existing edge and
    connects to both its endpoints (the edge is kept). m = 2n - 3."""
    if n < 3:
        raise InvalidParamsError("ran needs n >= 3")
    rng = SplitMix64(seed)
    g = Graph(n=n)
    edge_list = [(0, 1), (0, 2), (1, 2)]
    for e in edge_list:
        g.add_edge(*e)
    for i in range(3, n):
        u, v = edge_list[rng.randrange(len(edge_list))]
        g.add_edge(i, u)
        g.add_edge(i, v)
        edge_list.append((min(i, u), max(i, u)))
        edge_list.append((min(i, v), max(i, v)))
    return g


def gen_sos(
    n: int,
    layers: int = SOS_DEFAULT_LAYERS,
    parents_per_node: int = SOS_DEFAULT_PARENTS,
    intra_layer_p: float = SOS_DEFAULT_INTRA_P,
    seed: int = 0,
) -> Graph:
    """Layered hierarchy: nodes go round-robin into `layers` levels; every
    node below the top links to min(k, layer size) distinct random nodes one
    level up; same-layer pairs link independently with probability
    intra_layer_p. The top layer is chained so the whole network is
    connected by construction (random parent wiring alone can leave an
    unpicked top node isolated)."""
    if layers < 2 or n < layers:
        raise InvalidParamsError("sos needs n >= layers >= 2")
    if parents_per_node < 1:
        raise InvalidParamsError("sos needs parents_per_node >= 1")
    if not 0.0 <= intra_layer_p <= 1.0:
        raise InvalidParamsError("intra_layer_p must be in [0, 1]")
    rng = SplitMix64(seed)
    g = Graph(n=n)
    layer_nodes: list[list[int]] = [[] for _ in range(layers)]
    for v in range(n):
        layer_nodes[v % layers].append(v)
    top = layer_nodes[0]
    for i in range(len(top) - 1):
        g.add_edge(top[i], top[i + 1])
    for ell in range(1, layers):
        above = layer_nodes[ell - 1]
        k = min(parents_per_node, len(above))
        for v in layer_nodes[ell]:
            chosen: set[int] = set()
            while len(chosen) < k:
                chosen.add(above[rng.randrange(len(above))])
            for u in sorted(chosen):
                g.add_edge(v, u)
    for nodes in layer_nodes:
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                if rng.random() < intra_layer_p:
                    g.add_edge(nodes[i], nodes[j])
    return g


def gen_ba_nw_c2nm(
    n: int,
    edges_per_node: int = BA_DEFAULT_EDGES_PER_NODE,
    preferential_p: float = BA_DEFAULT_PREF_P,
    seed: int = 0,
) -> Graph:
    """Seed clique of edges_per_node + 1 nodes; each arrival draws
    edges_per_node distinct targets, each preferentially (probability
    proportional to degree) with probability preferential_p, else uniformly.
    Duplicate targets are re-drawn."""
    m_new = edges_per_node
    if m_new < 1:
        raise InvalidParamsError("ba needs edges_per_node >= 1")
    if n < m_new + 1:
        raise InvalidParamsError("ba needs n >= edges_per_node + 1")
    if not 0.0 <= preferential_p <= 1.0:
        raise InvalidParamsError("preferential_p must be in [0, 1]")
    rng = SplitMix64(seed)
    g = Graph(n=n)
    clique = m_new + 1
    deg = [0] * n
    for i in range(clique):
        for j in range(i + 1, clique):
            g.add_edge(i, j)
            deg[i] += 1
            deg[j] += 1
    for i in range(clique, n):
        # degrees snapshot at arrival; the new node's own edges do not bias
        # later draws within the same step
        total_deg = sum(deg[:i])
        targets: set[int] = set()
        while len(targets) < m_new:
            if rng.random() < preferential_p:
                r = rng.random() * total_deg
                acc = 0.0
                t = i - 1
                for v in range(i):
                    acc += deg[v]
                    if r < acc:
                        t = v
                        break
            else:
                t = rng.randrange(i)
            targets.add(t)
        for t in sorted(targets):
            g.add_edge(i, t)
            deg[t] += 1
            deg[i] += 1
    return g


def generate(variant: str, n: int, seed: int, sos: SosParams | None = None, ba: BaParams | None = None) -> Graph:
    """Dispatch by variant name (rtn | ran | sos | ba)."""
    variant = variant.lower()
    if variant == "rtn":
        return gen_rtn(n, seed)
    if variant == "ran":
        return gen_ran(n, seed)
    if variant == "sos":
        p = sos or SosParams()
        return gen_sos(n, p.layers, p.parents_per_node, p.intra_layer_p, seed)
    if variant == "ba":
        p = ba or BaParams()
        return gen_ba_nw_c2nm(n, p.edges_per_node, p.preferential_p, seed)
    raise InvalidParamsError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def reference_metrics(
    variant: str,
    n: int,
    trials: int = 30,
    seed: int = 0,
    sos: SosParams | None = None,
    ba: BaParams | None = None,
) -> MetricVector:
    """Component-wise mean metric vector over independent instances.

    Trial seeds are spawned from the master seed, so the result is
    deterministic given (variant, n, trials, seed, params).
    """
    if trials < 1:
        raise InvalidParamsError("trials must be >= 1")
    rng = SplitMix64(seed)
    acc = np.zeros(5)
    for _ in range(trials):
        g = generate(variant, n, rng.spawn_seed(), sos=sos, ba=ba)
        acc += metric_vector(g).as_array()
    acc /= trials
    return MetricVector(*acc.tolist())
