"""Compare the compiled and pure-Python k-hash scans on the same inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from khash import kernels
from khash.codes import codeword_array, random_linear_code
from khash.gf import field_of_order

# (q, n, m, k); one-dimensional codes are k-hash, so those force a full scan
CASES = [(64, 3, 1, 4), (64, 3, 1, 5), (49, 4, 1, 5), (7, 8, 3, 4), (9, 8, 3, 3)]


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if kernels.compiled_backend is None:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'q':>3} {'n':>2} {'m':>2} {'k':>2} {'status':>8} {'work':>10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for q, n, m, k in CASES:
        G = random_linear_code(field_of_order(q), n, m, [q, n, m])
        words = codeword_array(G)[1:]
        tp, out = best_time(lambda: kernels.python_backend.scan_khash(words, k, 10**12), args.repeat)
        status = {kernels.HASHED: "hashed", kernels.WITNESS: "witness"}.get(out[0], "budget")
        if kernels.compiled_backend is not None:
            tc, outc = best_time(lambda: kernels.compiled_backend.scan_khash(words, k, 10**12), args.repeat)
            assert outc[0] == out[0] and tuple(outc[1]) == tuple(out[1])
            print(f"{q:>3} {n:>2} {m:>2} {k:>2} {status:>8} {out[2]:>10} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
        else:
            print(f"{q:>3} {n:>2} {m:>2} {k:>2} {status:>8} {out[2]:>10} {tp:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
