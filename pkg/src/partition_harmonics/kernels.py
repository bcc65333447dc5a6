"""Selects the compiled inner loops when available, NumPy otherwise.

Set ``PH_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("PH_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

sine_ratio_product = _impl.sine_ratio_product
cosine_series = _impl.cosine_series
pairwise_sum = _impl.pairwise_sum
IMPLEMENTATION = _impl.IMPLEMENTATION

__all__ = ["sine_ratio_product", "cosine_series", "pairwise_sum", "IMPLEMENTATION"]
