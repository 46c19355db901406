"""Numba switch for the hot kernels.

Set ``DOMAINLEARN_DISABLE_NUMBA=1`` before import to force the pure-numpy
path. The flag is read once; :func:`set_enabled` flips it at runtime (tests
and the benchmark use that to run both paths in one process).
"""
import os

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_FALSY = {"", "0", "false", "no"}
_enabled = HAVE_NUMBA and os.environ.get("DOMAINLEARN_DISABLE_NUMBA", "").lower() in _FALSY


def enabled():
    return _enabled


def set_enabled(flag):
    """Turn the numba path on or off; returns the previous setting."""
    global _enabled
    previous = _enabled
    _enabled = bool(flag) and HAVE_NUMBA
    return previous


def njit(*args, **kwargs):
    """``numba.njit`` with caching, or a no-op decorator without numba."""
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return numba.njit(*args, **kwargs)
