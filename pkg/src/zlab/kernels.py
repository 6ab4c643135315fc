"""Backend selection for the hot kernels.

The compiled core (``zlab._core``) is used when it was built; otherwise the
pure-Python twin in ``zlab._pycore`` is.  Setting ``ZLAB_PURE_PYTHON=1``
forces the fallback.
"""
from __future__ import annotations

import os

from . import _pycore

if os.environ.get("ZLAB_PURE_PYTHON") == "1":
    _impl = _pycore
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _pycore

BACKEND = "cython" if _impl is not _pycore else "python"

UTKernel = _impl.UTKernel
rank_mod_p = _impl.rank_mod_p


def backends() -> dict:
    """All importable backends by name (used by tests and the benchmark)."""
    found = {"python": _pycore}
    try:
        from . import _core
    except ImportError:
        pass
    else:
        found["cython"] = _core
    return found
