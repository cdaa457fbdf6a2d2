"""Enumeration kernels for the coset search.

The numba implementations in ``_jit`` are used when numba imports and
``PLANESWITCH_DISABLE_NUMBA`` is unset; otherwise the vectorised numpy
versions in ``_numpy`` run. Both expose the same functions with the same
results.
"""

import os

_disabled = os.environ.get("PLANESWITCH_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _disabled:
        raise ImportError
    from ._jit import (  # noqa: F401
        SCAN_BITS,
        bfs_leaders,
        codeword_min,
        max_capped_sets,
        sweep_keys,
        witness_scan,
    )

    BACKEND = "numba"
except ImportError:
    from ._numpy import (  # noqa: F401
        SCAN_BITS,
        bfs_leaders,
        codeword_min,
        max_capped_sets,
        sweep_keys,
        witness_scan,
    )

    BACKEND = "numpy"
