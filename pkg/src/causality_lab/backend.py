"""Kernel backend selection.

The hot kernels (null geodesic integration, chronology-graph longest path)
ship in two functionally identical implementations: numba-compiled loops and
pure numpy. The numba path is the default; set CAUSALITY_LAB_NO_NUMBA=1 to
force the numpy path (also used automatically when numba is unavailable).
"""
import os

ENV_FLAG = "CAUSALITY_LAB_NO_NUMBA"


def numba_disabled_by_env() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


def _numba_importable() -> bool:
    try:
        import numba  # noqa: F401
    except Exception:
        return False
    return True


if numba_disabled_by_env():
    USE_NUMBA = False
else:
    USE_NUMBA = _numba_importable()

ACTIVE_BACKEND = "numba" if USE_NUMBA else "numpy"
