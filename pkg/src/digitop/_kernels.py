"""Kernel backend selection.

The compiled extension ``digitop._core`` is preferred when it imports; the
pure-Python module ``digitop._pure`` is the fallback.  Both expose the same
functions with identical outputs, so everything above this module is backend
agnostic.

Set ``DIGITOP_BACKEND=python`` to force the fallback, or
``DIGITOP_BACKEND=cython`` to require the extension (ImportError if absent).
"""

from __future__ import annotations

import os

_requested = os.environ.get("DIGITOP_BACKEND", "auto").strip().lower()

if _requested in ("auto", "", "cython", "c"):
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        if _requested in ("cython", "c"):
            raise
        from . import _pure as _impl

        BACKEND = "python"
elif _requested in ("python", "pure"):
    from . import _pure as _impl

    BACKEND = "python"
else:
    raise ValueError(f"unknown DIGITOP_BACKEND value: {_requested!r}")

canonical_rows = _impl.canonical_rows
classify_flags = _impl.classify_flags
min_image_nonsurjective = _impl.min_image_nonsurjective
lattice_rows = _impl.lattice_rows
