"""Pick the kernel implementation once, at import time.

Set ``GRAPHDECODE_DISABLE_NUMBA=1`` to force the numpy path.
"""

import logging
import os

log = logging.getLogger(__name__)

_FALSY = {"", "0", "false", "no", "off"}

if os.environ.get("GRAPHDECODE_DISABLE_NUMBA", "").strip().lower() not in _FALSY:
    from . import _kernels_numpy as kernels

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as kernels

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        log.warning("numba unavailable; using numpy kernels")
        from . import _kernels_numpy as kernels

        BACKEND = "numpy"

MAX_QUBITS = kernels.MAX_QUBITS

__all__ = ["kernels", "BACKEND", "MAX_QUBITS"]
