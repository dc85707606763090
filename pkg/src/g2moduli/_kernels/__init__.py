"""Kernel backend selection: compiled extension when available, else pure Python.

Set G2MODULI_FORCE_PURE=1 to skip the compiled extension (used by the
benchmark for side-by-side timing).
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("G2MODULI_FORCE_PURE"):
    fastcore = pure
else:
    try:
        from . import fastcore  # type: ignore[no-redef]
    except ImportError:
        fastcore = pure

BACKEND = fastcore.BACKEND_NAME


def get_backend(name: str | None = None):
    """The kernel module: 'pure', 'compiled', or the default selection."""
    if name in (None, ""):
        return fastcore
    if name == "pure":
        return pure
    if name == "compiled":
        from . import fastcore as compiled  # raises ImportError when absent

        if compiled.BACKEND_NAME != "compiled":
            raise ImportError("compiled kernel extension is not built")
        return compiled
    raise ValueError(f"unknown backend {name!r}")
