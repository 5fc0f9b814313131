"""Selects the closure kernel at import time.

The compiled extension (slimlat._closure, built from _closure.pyx) is used
when present; otherwise the pure-Python twin takes over.  Setting
SLIMLAT_PURE_PYTHON=1 forces the fallback, which the benchmark and the
kernel-parity tests rely on.
"""
import os

if os.environ.get("SLIMLAT_PURE_PYTHON") == "1":
    from slimlat._closure_py import closure_labels
    KERNEL_IMPL = "python"
else:
    try:
        from slimlat._closure import closure_labels  # type: ignore[import-not-found]
        KERNEL_IMPL = "cython"
    except ImportError:
        from slimlat._closure_py import closure_labels
        KERNEL_IMPL = "python"

__all__ = ["closure_labels", "KERNEL_IMPL"]
