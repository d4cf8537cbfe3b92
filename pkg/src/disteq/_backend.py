"""Kernel backend selection.

The compiled extension is preferred; the NumPy fallback is used when the
extension is missing (source checkout without a build) or when the
environment variable DISTEQ_PURE_PYTHON is set to a non-empty value.
"""

import os

if os.environ.get("DISTEQ_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _ckernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def backend_name() -> str:
    """Name of the active kernel backend ("cython" or "python")."""
    return kernels.BACKEND
