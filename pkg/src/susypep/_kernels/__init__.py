"""Numerov sweep kernels: compiled extension with a pure-Python fallback.

The compiled module is preferred when importable; set SUSYPEP_PURE_PYTHON=1
to force the fallback (used by the benchmark and backend-parity tests).
``BACKEND`` names the implementation actually in use.
"""
import os

from . import _numerov_py

if os.environ.get("SUSYPEP_PURE_PYTHON") == "1":
    _impl = _numerov_py
    BACKEND = "python"
else:
    try:
        from . import _numerov_cy as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _numerov_py
        BACKEND = "python"

sweep_outward = _impl.sweep_outward
sweep_inward = _impl.sweep_inward

__all__ = ["BACKEND", "sweep_outward", "sweep_inward"]
