"""Kernel backend selection.

The compiled Cython backend is used when importable; the pure-Python
backend is the fallback and the reference.  Set SELFSIM_FORCE_PURE=1 to
skip the compiled module (used by the benchmark and the equality tests).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("SELFSIM_FORCE_PURE"):
    _impl = _pure
else:
    try:
        from . import _speed as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND_NAME
nbh_closure = _impl.nbh_closure
random_walk = _impl.random_walk
raster = _impl.raster

pure = _pure

__all__ = ["BACKEND", "nbh_closure", "random_walk", "raster", "pure"]
