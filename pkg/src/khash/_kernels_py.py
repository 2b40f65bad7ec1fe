"""Pure-Python k-hash subset scan (fallback for the compiled ``_kernels``).

Both implementations walk the same depth-first enumeration, so they return
identical witnesses and work counts.
"""

import numpy as np

HASHED = 0
WITNESS = 1
BUDGET = 2

CHECK_EVERY = 1 << 16


def scan_khash(words, k, budget):
    """Search for k-1 rows of ``words`` that, together with the zero word,
    are not simultaneously distinct in any coordinate.

    ``words`` is an (N, n) uint8 array of distinct nonzero words with symbol
    values below 64.  Index tuples are visited in lexicographic order and a
    prefix whose every coordinate already holds a repeated symbol is completed
    with the next indices, so the first witness in that order is returned.

    Returns ``(status, indices, work, progress)`` where status is HASHED,
    WITNESS or BUDGET; ``work`` counts coordinate comparisons and
    ``progress`` is the fraction of first-level branches finished.
    """
    words = np.ascontiguousarray(words, dtype=np.uint8)
    N, n = words.shape
    r = k - 1
    if r < 1 or N < r:
        return HASHED, (), 0, 1.0
    bits = [[1 << int(v) for v in row] for row in words.tolist()]

    used = [[1] * n] + [None] * r  # symbol sets per coordinate; zero word holds symbol 0
    alive = [list(range(n))] + [None] * r
    idx = [0] * r
    work = 0
    steps = 0
    depth = 0
    idx[0] = -1
    while depth >= 0:
        idx[depth] += 1
        last = N - (r - depth)
        if idx[depth] > last:
            depth -= 1
            continue
        i = idx[depth]
        row = bits[i]
        cur_used = used[depth]
        nxt_used = list(cur_used)
        nxt_alive = []
        for c in alive[depth]:
            b = row[c]
            if not cur_used[c] & b:
                nxt_used[c] = cur_used[c] | b
                nxt_alive.append(c)
        work += len(alive[depth])
        steps += 1
        if not nxt_alive:
            found = tuple(idx[: depth + 1]) + tuple(range(i + 1, i + r - depth))
            return WITNESS, found, work, idx[0] / N
        if steps % CHECK_EVERY == 0 and work > budget:
            return BUDGET, (), work, idx[0] / N
        if depth + 1 < r:
            used[depth + 1] = nxt_used
            alive[depth + 1] = nxt_alive
            depth += 1
            idx[depth] = i
    return HASHED, (), work, 1.0
