"""Backend selection for the inner loops.

The compiled extension is used when it imported cleanly; setting
``SUPERCONG_PURE_PYTHON=1`` forces the pure-Python versions.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("SUPERCONG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

hyper_sum_mod = _impl.hyper_sum_mod
cubic_char_sum = _impl.cubic_char_sum
affine_char_sum = _impl.affine_char_sum

__all__ = ["BACKEND", "hyper_sum_mod", "cubic_char_sum", "affine_char_sum"]
