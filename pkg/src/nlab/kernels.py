"""Kernel selection: compiled extension if available, pure Python otherwise.

Set NLAB_PURE_PY=1 to force the Python path (used by the benchmark for
comparison).  Both backends expose `canonical_data`, `scan_pairings` and
a BACKEND name string.
"""

from __future__ import annotations

import os

if os.environ.get("NLAB_PURE_PY"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
canonical_data = _impl.canonical_data
scan_pairings = _impl.scan_pairings
