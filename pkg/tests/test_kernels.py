import numpy as np
import pytest

from khash import kernels
from khash.codes import codeword_array, random_linear_code
from khash.gf import field_of_order

compiled = pytest.mark.skipif(kernels.compiled_backend is None, reason="extension not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
    if kernels.compiled_backend is not None:
        assert kernels.BACKEND == "cython"


def test_python_backend_small_cases():
    words = np.array([[1, 0], [2, 0], [0, 1]], dtype=np.uint8)
    status, idx, work, _ = kernels.python_backend.scan_khash(words, 3, 10**6)
    # {0, (1,0), (2,0)} is separated in the first coordinate, so the first witness uses (0,1)
    assert status == kernels.WITNESS and tuple(idx) == (0, 2)
    status, idx, _, _ = kernels.python_backend.scan_khash(words[:1], 3, 10**6)
    assert status == kernels.HASHED


@compiled
@pytest.mark.parametrize("q,n,m,k", [(3, 4, 2, 3), (4, 6, 3, 3), (5, 6, 2, 4), (7, 8, 2, 3), (8, 6, 2, 4)])
def test_backends_agree(q, n, m, k):
    F = field_of_order(q)
    for t in range(10):
        words = codeword_array(random_linear_code(F, n, m, [q, n, m, t]))[1:]
        a = kernels.python_backend.scan_khash(words, k, 10**8)
        b = kernels.compiled_backend.scan_khash(words, k, 10**8)
        assert a[0] == b[0]
        assert tuple(a[1]) == tuple(b[1])
        assert a[2] == b[2]


@compiled
def test_backends_agree_on_budget():
    words = codeword_array(random_linear_code(field_of_order(64), 3, 1, 0))[1:]
    a = kernels.python_backend.scan_khash(words, 5, 1000)
    b = kernels.compiled_backend.scan_khash(words, 5, 1000)
    assert a[0] == b[0] == kernels.BUDGET
