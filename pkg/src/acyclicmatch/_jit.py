"""JIT switch for the numeric kernels.

Set ``ACYCLICMATCH_DISABLE_JIT=1`` to run every kernel as plain Python.
The flag is read once, at import time.
"""

import os

try:
    import numba as nb

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

JIT_DISABLED = (not HAVE_NUMBA) or os.environ.get(
    "ACYCLICMATCH_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes")


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, identity decorator otherwise.

    When jitting, the undecorated function stays reachable as ``.py_func``
    so tests can compare both paths in one process.
    """
    if not JIT_DISABLED:
        return nb.njit(*args, **kwargs)

    def wrap(func):
        func.py_func = func
        return func

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return wrap(args[0])
    return wrap
