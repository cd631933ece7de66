"""Integration kernels: compiled extension when available, numpy otherwise.

Set GEOPHASE_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by tests that exercise both paths).
"""

import os

from . import _rk4_py

if os.environ.get("GEOPHASE_PURE_PYTHON"):
    _impl = _rk4_py
    BACKEND = "python"
else:
    try:
        from . import _rk4 as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _rk4_py
        BACKEND = "python"

rk4_real = _impl.rk4_real
rk4_cplx = _impl.rk4_cplx

__all__ = ["rk4_real", "rk4_cplx", "BACKEND"]
