"""Select the kernel implementation at import time.

The compiled ``_kernels`` extension is preferred; setting the environment
variable ``GENDISCORD_PURE_PYTHON=1`` (or a failed build) falls back to the
numpy implementation in ``_kernels_py``.
"""

import importlib
import os


def load_backend(name: str):
    """Return the kernel module called ``name`` ("compiled" or "python")."""
    if name == "compiled":
        return importlib.import_module("gendiscord._kernels")
    if name == "python":
        return importlib.import_module("gendiscord._kernels_py")
    raise ValueError(f"unknown backend {name!r}")


def _select():
    if os.environ.get("GENDISCORD_PURE_PYTHON", "") not in ("", "0"):
        return load_backend("python")
    try:
        return load_backend("compiled")
    except ImportError:
        return load_backend("python")


kernels = _select()
BACKEND = kernels.NAME
