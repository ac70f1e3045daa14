"""Kernel backend selection.

The compiled Cython kernels are used when importable; set
``SPEECHAUG_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
import os

from . import _kernels_py

if os.environ.get("SPEECHAUG_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
    NAME = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
        NAME = "cython"
    except ImportError:
        kernels = _kernels_py
        NAME = "python"

__all__ = ["kernels", "NAME"]
