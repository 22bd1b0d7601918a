"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module. Setting ``FCOMPAT_PURE_PYTHON=1`` forces the
fallback (used by the benchmark and the backend-equivalence tests).
"""

import os

from fcompat import _pykernels

if os.environ.get("FCOMPAT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from fcompat import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

poly_add = _impl.poly_add
poly_sub_scaled = _impl.poly_sub_scaled
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul
reduce_full = _impl.reduce_full
divides = _impl.divides
