"""Selects the kernel backend.

Numba is used when importable unless ``KRASNER_NO_NUMBA`` is set to a
truthy value, in which case the pure-numpy kernels are dispatched.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}


def _numba_requested():
    return os.environ.get("KRASNER_NO_NUMBA", "").strip().lower() in _FALSY


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()


def njit(*args, **kwargs):
    """``numba.njit`` when numba is installed, otherwise a no-op decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)

    def wrapper(f):
        return f

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return wrapper


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
