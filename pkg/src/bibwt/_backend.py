"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``BIBWT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels as python_kernels

try:
    if os.environ.get("BIBWT_PURE_PYTHON"):
        raise ImportError("pure-Python kernels forced")
    from . import _ckernels as kernels
    BACKEND = "cython"
except ImportError:
    kernels = python_kernels
    BACKEND = "python"

try:
    from . import _ckernels as compiled_kernels
except ImportError:
    compiled_kernels = None

__all__ = ["BACKEND", "kernels", "python_kernels", "compiled_kernels"]
