"""Shooting-kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
twin takes over.  Set QES_SHOOT_BACKEND=python to force the fallback.
"""

from __future__ import annotations

import os

from . import _shoot_py

if os.environ.get("QES_SHOOT_BACKEND", "").lower() == "python":
    _backend = _shoot_py
    BACKEND = "python"
else:
    try:
        from . import _shoot_cy as _backend  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _backend = _shoot_py
        BACKEND = "python"

integrate = _backend.integrate


def available_backends() -> dict[str, object]:
    """Name -> integrate callable for every importable backend."""
    out = {"python": _shoot_py.integrate}
    try:
        from . import _shoot_cy

        out["cython"] = _shoot_cy.integrate
    except ImportError:
        pass
    return out
