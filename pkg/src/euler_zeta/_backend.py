"""Backend selection for the numeric kernels.

``EULER_ZETA_BACKEND=numpy`` forces the pure-numpy path; ``numba`` (the
default when numba imports) JIT-compiles the loops. ``EULER_ZETA_THREADS``
caps numba's thread pool (0 or unset means automatic).
"""

import os

BACKEND_ENV = "EULER_ZETA_BACKEND"
THREADS_ENV = "EULER_ZETA_THREADS"

# the TBB layer is probed (and warns) when too old; workqueue is always present
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:  # pragma: no cover - depends on the environment
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def requested_backend() -> str:
    name = os.environ.get(BACKEND_ENV, "").strip().lower()
    if name in ("", "auto"):
        return "numba" if HAVE_NUMBA else "numpy"
    if name not in ("numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError(f"{BACKEND_ENV}=numba but numba is not importable")
    return name


def apply_thread_cap() -> None:
    if not HAVE_NUMBA:
        return
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    n = int(raw)
    if n > 0:
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
