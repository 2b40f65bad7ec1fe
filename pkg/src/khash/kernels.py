"""Backend selection for the hot k-hash scan.

The compiled extension is used when it was built; otherwise the pure-Python
fallback with the same interface is imported.  Both modules stay importable
on their own so they can be compared directly.
"""

from . import _kernels_py as python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

HASHED = python_backend.HASHED
WITNESS = python_backend.WITNESS
BUDGET = python_backend.BUDGET


def scan_khash(words, k, budget):
    return backend.scan_khash(words, k, budget)
