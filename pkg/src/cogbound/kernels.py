"""Backend selection for the sweep kernels.

The compiled extension is used when importable; otherwise the numpy
implementation takes over.  Set ``COGBOUND_PURE_PYTHON=1`` to force the
fallback (useful for the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("COGBOUND_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

sweep_support = _impl.sweep_support
refine_support = _impl.refine_support
