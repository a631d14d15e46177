"""Kernel backend selection: compiled extension when available, else numpy.

Set MOLEX_FORCE_PY_KERNELS=1 to force the pure-Python fallback (used by the
backend-comparison benchmark and tests).
"""

import os

if os.environ.get("MOLEX_FORCE_PY_KERNELS") == "1":
    from . import pyk as _impl

    BACKEND = "python"
else:
    try:
        from . import _hnswk as _impl

        BACKEND = "cython"
    except ImportError:
        from . import pyk as _impl

        BACKEND = "python"

search_layer = _impl.search_layer
select_neighbors = _impl.select_neighbors
link_mutual = _impl.link_mutual


def get_backend(name=None):
    """Return (search_layer, select_neighbors, link_mutual) for `name`."""
    if name is None or name == BACKEND:
        return search_layer, select_neighbors, link_mutual
    if name == "python":
        from . import pyk as mod
    elif name == "cython":
        from . import _hnswk as mod
    else:
        raise ValueError(f"unknown kernel backend: {name!r}")
    return mod.search_layer, mod.select_neighbors, mod.link_mutual
