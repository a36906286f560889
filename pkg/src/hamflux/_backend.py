"""Kernel selection.

Imports the compiled elimination core when present, falling back to the
pure-Python twin. Set HAMFLUX_PURE=1 to force the fallback (used by the
benchmark and by tests that compare the two).
"""

import os

if os.environ.get("HAMFLUX_PURE"):
    from hamflux._core_py import rref_ints

    BACKEND = "pure"
else:
    try:
        from hamflux._core import rref_ints  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from hamflux._core_py import rref_ints  # type: ignore[no-redef]

        BACKEND = "pure"


def backend_name():
    """Name of the active elimination kernel: 'compiled' or 'pure'."""
    return BACKEND
