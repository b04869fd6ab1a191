"""Selection of the accelerated kernel path.

The hot kernels in :mod:`psispec._kernels` exist twice: as explicit loops
compiled with numba's ``@njit``, and as vectorized numpy fallbacks.  The
environment variable ``PSISPEC_NO_NUMBA`` (set to ``1``/``true``/``yes``/``on``)
forces the numpy path; otherwise numba is used when importable.
"""

import os


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


NUMBA_REQUESTED = not _env_flag("PSISPEC_NO_NUMBA")

if NUMBA_REQUESTED:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a hard dependency
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def njit(*args, **kwargs):  # noqa: D103 - identity decorator stand-in
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


#: Name of the kernel implementation actually in use.
ACTIVE_IMPL = "numba" if NUMBA_ENABLED else "numpy"
