# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled k-hash subset scan; mirrors ``_kernels_py.scan_khash`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

HASHED = 0
WITNESS = 1
BUDGET = 2


def scan_khash(words, int k, long long budget):
    cdef cnp.ndarray[uint8_t, ndim=2, mode="c"] w = np.ascontiguousarray(words, dtype=np.uint8)
    cdef Py_ssize_t N = w.shape[0]
    cdef Py_ssize_t n = w.shape[1]
    cdef int r = k - 1
    if r < 1 or N < r:
        return HASHED, (), 0, 1.0

    # per depth: n symbol masks, an alive list and its length
    cdef uint64_t *used = <uint64_t *> malloc((r + 1) * n * sizeof(uint64_t))
    cdef Py_ssize_t *alive = <Py_ssize_t *> malloc((r + 1) * n * sizeof(Py_ssize_t))
    cdef Py_ssize_t *nalive = <Py_ssize_t *> malloc((r + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(r * sizeof(Py_ssize_t))
    if used == NULL or alive == NULL or nalive == NULL or idx == NULL:
        free(used); free(alive); free(nalive); free(idx)
        raise MemoryError()

    cdef Py_ssize_t c, j, i, last, na, col
    cdef int depth = 0
    cdef long long work = 0
    cdef long long steps = 0
    cdef uint64_t b, u
    cdef uint8_t *row
    cdef uint64_t *cu
    cdef uint64_t *nu
    cdef Py_ssize_t *ca
    cdef Py_ssize_t *nxa
    cdef int status = HASHED
    cdef double progress = 1.0
    cdef long long check_every = 65536
    found = ()

    try:
        for c in range(n):
            used[c] = 1
            alive[c] = c
        nalive[0] = n
        idx[0] = -1
        while depth >= 0:
            idx[depth] += 1
            last = N - (r - depth)
            if idx[depth] > last:
                depth -= 1
                continue
            i = idx[depth]
            row = &w[i, 0]
            cu = used + depth * n
            nu = used + (depth + 1) * n
            ca = alive + depth * n
            nxa = alive + (depth + 1) * n
            na = 0
            for c in range(n):
                nu[c] = cu[c]
            for j in range(nalive[depth]):
                col = ca[j]
                b = (<uint64_t> 1) << row[col]
                u = cu[col]
                if not (u & b):
                    nu[col] = u | b
                    nxa[na] = col
                    na += 1
            work += nalive[depth]
            steps += 1
            if na == 0:
                found = tuple([idx[j] for j in range(depth + 1)]) + tuple(range(i + 1, i + r - depth))
                status = WITNESS
                progress = idx[0] / <double> N
                break
            if steps % check_every == 0 and work > budget:
                status = BUDGET
                progress = idx[0] / <double> N
                break
            if depth + 1 < r:
                nalive[depth + 1] = na
                depth += 1
                idx[depth] = i
    finally:
        free(used); free(alive); free(nalive); free(idx)
    return status, found, work, progress
