"""Kernel selection: compiled core if importable, pure Python otherwise.

Set ``KZEROS_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("KZEROS_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.NAME
