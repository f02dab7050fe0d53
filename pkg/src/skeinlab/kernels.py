"""Kernel selection: compiled extension if built, pure Python otherwise.

Set the environment variable ``SKEINLAB_PURE=1`` before import to force
the pure-Python implementation (the benchmark harness does this to
compare both).
"""

import os

if os.environ.get("SKEINLAB_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME

state_circles = _impl.state_circles
all_state_circles = _impl.all_state_circles
bracket_histogram = _impl.bracket_histogram
