"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting SWB_PURE_PYTHON=1
forces the numpy fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("SWB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on the build
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

siegel_sum = _impl.siegel_sum
log_delta = _impl.log_delta
eis_fourier = _impl.eis_fourier

__all__ = ["BACKEND", "eis_fourier", "log_delta", "siegel_sum"]
