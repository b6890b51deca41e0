"""Gate-kernel backend selection.

The compiled Cython extension is preferred when present; otherwise the
NumPy fallback is used. ``QDGAS_BACKEND=python`` or ``QDGAS_BACKEND=compiled``
forces a choice (the latter raises if the extension is missing).
"""

import os

_requested = os.environ.get("QDGAS_BACKEND", "").strip().lower()
if _requested not in ("", "compiled", "python"):
    raise RuntimeError(
        f"QDGAS_BACKEND must be 'compiled' or 'python', got {_requested!r}"
    )

backend = "python"
if _requested != "python":
    try:
        from ._cext import kernel_hadamard, kernel_phase, kernel_swap, kernel_x

        backend = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise

if backend == "python":
    from ._fallback import kernel_hadamard, kernel_phase, kernel_swap, kernel_x

__all__ = ["backend", "kernel_hadamard", "kernel_phase", "kernel_swap", "kernel_x"]
