"""Numba switch.

Set ``SCHURKIT_DISABLE_JIT=1`` to run every kernel through its pure-numpy
path. The flag is read once at import time.
"""
import os

_disabled = os.environ.get("SCHURKIT_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit as _njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    _njit = None

USE_NUMBA = HAVE_NUMBA and not _disabled


def njit(*args, **kwargs):
    """``numba.njit`` with on-disk caching, or a no-op when numba is off."""
    kwargs.setdefault("cache", True)
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    return _njit(*args, **kwargs)
