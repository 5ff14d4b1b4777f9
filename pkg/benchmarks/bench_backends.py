"""Compare the compiled kernels against the pure-Python reference.

Usage: python3 benchmarks/bench_backends.py [--n 400] [--repeat 3]

Times betweenness centrality, BFS path statistics, and a fixed number of
force-directed layout iterations on the same random graph with each backend,
and checks the results agree.
"""

import argparse
import importlib
import time

import numpy as np

import mccnet._kernels as kernels
from mccnet._kernels import pyref
from mccnet.graphs import Graph
from mccnet.layout import LayoutParams, yifan_hu_layout
from mccnet.rng import SplitMix64


def random_graph(n, p, seed):
    g = Graph(n)
    rng = SplitMix64(seed)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def timeit(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def swap_backend(module):
    """Point the dispatch module at a specific implementation."""
    for name in ("betweenness", "path_stats", "repulsion_exact",
                 "repulsion_bh", "attraction"):
        setattr(kernels, name, getattr(module, name))
    kernels.BACKEND = module.BACKEND
    # layout reads kernels at call time, graphs at import time
    import mccnet.graphs as graphs
    importlib.reload(graphs)
    return graphs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=400, help="graph size")
    ap.add_argument("--repeat", type=int, default=3, help="timing repeats")
    args = ap.parse_args()

    try:
        from mccnet._kernels import _speedups
    except ImportError:
        _speedups = None

    g = random_graph(args.n, 4.0 / args.n, seed=9)
    indptr, indices = g.to_csr()
    nodes = np.arange(g.n, dtype=np.int32)
    params = LayoutParams(max_iter=50)

    backends = [("python", pyref)] + ([("c", _speedups)] if _speedups else [])
    if _speedups is None:
        print("compiled extension not available; timing pure Python only")

    results = {}
    for label, module in backends:
        swap_backend(module)
        t_bc, bc = timeit(lambda: kernels.betweenness(g.n, indptr, indices), args.repeat)
        t_ps, ps = timeit(lambda: kernels.path_stats(g.n, indptr, indices, nodes), args.repeat)
        t_ly, ly = timeit(lambda: yifan_hu_layout(g, params, seed=1), args.repeat)
        results[label] = (t_bc, t_ps, t_ly, bc, ps, ly.positions)
        print(f"{label:>7}: betweenness {t_bc * 1e3:9.2f} ms   "
              f"path_stats {t_ps * 1e3:9.2f} ms   "
              f"layout(50 iter) {t_ly * 1e3:9.2f} ms")

    if len(results) == 2:
        py, cc = results["python"], results["c"]
        assert np.allclose(py[3], cc[3], atol=1e-9), "betweenness mismatch"
        assert py[4] == cc[4], "path_stats mismatch"
        assert np.allclose(py[5], cc[5], atol=1e-9), "layout mismatch"
        print(f"speedups: betweenness {py[0] / cc[0]:.1f}x, "
              f"path_stats {py[1] / cc[1]:.1f}x, layout {py[2] / cc[2]:.1f}x "
              f"(results identical)")


if __name__ == "__main__":
    main()
