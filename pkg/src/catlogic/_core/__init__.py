"""Backend selection for the hot kernels.

Imports the compiled extension when it is available, otherwise the
pure-Python reference implementation. Set CATLOGIC_PURE=1 to force the
fallback (the benchmark and the backend-equivalence tests use this).
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("CATLOGIC_PURE"):
    _impl = pure
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND: str = _impl.BACKEND

reduce_word = _impl.reduce_word
scan_tables = _impl.scan_tables
search_tables = _impl.search_tables
hom_image_table = _impl.hom_image_table
check_hom_table = _impl.check_hom_table
