"""Select the branch-and-bound kernel.

The compiled extension is used when it was built; otherwise, or when
``LVPATHS_PURE_PYTHON=1`` is set, the pure-Python kernel is used.
"""
from __future__ import annotations

import os

from . import _bnb_py

try:
    if os.environ.get("LVPATHS_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure python requested")
    from . import _bnb as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

# scaled objective values are held in int64 by the compiled kernel
_INT64_SAFE = 2**62


def get_kernel(name: str | None = None):
    """Return a ``bnb_search`` callable; ``name`` forces "python" or "cython"."""
    name = name or BACKEND
    if name == "python":
        return _bnb_py.bnb_search
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available; build the extension first")
        return _compiled.bnb_search
    raise ValueError(f"unknown backend {name!r}")


def available() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])
