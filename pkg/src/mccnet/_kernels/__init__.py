"""Kernel backend selection: compiled extension if built, else pure Python.

Both backends expose the same functions over CSR adjacency / coordinate
arrays; `BACKEND` reports which one is active.
"""

try:
    from . import _speedups as _impl
except ImportError:
    from . import pyref as _impl

BACKEND = _impl.BACKEND
betweenness = _impl.betweenness
path_stats = _impl.path_stats
repulsion_exact = _impl.repulsion_exact
repulsion_bh = _impl.repulsion_bh
attraction = _impl.attraction
