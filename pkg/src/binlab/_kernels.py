"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set BINLAB_KERNEL=python or BINLAB_KERNEL=native to force a backend; the
default ("auto") prefers the compiled extension.
"""

from __future__ import annotations

import os

from . import _kernels_py

_mode = os.environ.get("BINLAB_KERNEL", "auto").lower()

_native = None
if _mode in ("auto", "native"):
    try:
        from . import _native as _native_mod
        _native = _native_mod
    except ImportError:
        if _mode == "native":
            raise

if _mode == "python":
    _impl = _kernels_py
else:
    _impl = _native if _native is not None else _kernels_py

BACKEND = "native" if _impl is not _kernels_py else "python"

peel_deg = _impl.peel_deg
peel_arc = _impl.peel_arc


def backends():
    """All importable backends, for benchmarking."""
    out = {"python": _kernels_py}
    if _native is not None:
        out["native"] = _native
    else:
        try:
            from . import _native as nat
            out["native"] = nat
        except ImportError:
            pass
    return out
