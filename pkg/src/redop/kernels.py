"""Backend selection for the sparse elimination kernels.

The compiled extension is used when it was built; ``REDOP_PURE_PYTHON=1``
forces the Python implementation.
"""
import os

from . import _pykernels

if os.environ.get("REDOP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

add_scaled = _impl.add_scaled
remainder = _impl.remainder
insert_row = _impl.insert_row
reduce_rows = _impl.reduce_rows
intersect_rows = _impl.intersect_rows
apply_images = _impl.apply_images
