"""Benchmark: compiled kernels vs the pure-Python fallback.

Times the three hot kernels on random dense matrices over Z/p^N at the sizes
the acceptance suite actually exercises.  Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import random
import time

from iwalab import _kernels_py

try:
    from iwalab import _kernels as _compiled
except ImportError:
    _compiled = None


def bench(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def rand_rows(rng, n, q):
    return [[rng.randrange(q) for _ in range(n)] for _ in range(n)]


def main():
    p, N = 3, 64
    q = p**N
    rng = random.Random(0)
    impls = [("python", _kernels_py)]
    if _compiled is not None:
        impls.append(("cython", _compiled))
    else:
        print("compiled kernels unavailable; timing the fallback only")

    print(f"{'kernel':>14} {'size':>5}" + "".join(f" {name:>12}" for name, _ in impls) + f" {'speedup':>9}")
    cases = [
        ("smith_exponents", [40, 80, 162], lambda impl, rows: impl.smith_exponents(rows, p, N)),
        ("det_mod", [40, 80, 162], lambda impl, rows: impl.det_mod(rows, p, N)),
        ("charpoly_mod", [18, 32, 50], lambda impl, rows: impl.charpoly_mod(rows, q)),
    ]
    for name, sizes, call in cases:
        for n in sizes:
            rows = rand_rows(rng, n, q)
            times = [bench(call, impl, rows) for _, impl in impls]
            speed = f"{times[0] / times[-1]:8.1f}x" if len(times) == 2 else "       --"
            cells = "".join(f" {t * 1000:10.1f}ms" for t in times)
            print(f"{name:>14} {n:>5}{cells} {speed}")


if __name__ == "__main__":
    main()
