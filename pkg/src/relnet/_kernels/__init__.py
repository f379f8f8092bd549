"""Hot loops used by enumeration and the factor join.

The compiled extension is used when it was built; otherwise the
pure-Python module is loaded.  Set ``RELNET_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _pykernels

if os.environ.get("RELNET_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

connected_labelings = _impl.connected_labelings
consistent_combinations = _impl.consistent_combinations
pair_index = _pykernels.pair_index

__all__ = ["BACKEND", "connected_labelings", "consistent_combinations", "pair_index"]
