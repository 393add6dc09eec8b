"""Kernel backend selection.

The compiled kernel is used when its extension module importable, unless the
environment variable SRLAB_PURE=1 forces the pure Python twin.  Both expose
the same functions; everything above this module imports `kernel` from here.
"""

from __future__ import annotations

import os

if os.environ.get("SRLAB_PURE") == "1":
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel_cy as kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as kernel

BACKEND: str = kernel.BACKEND
