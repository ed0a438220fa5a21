"""Benchmark the twist-map kernels: numba @njit loops vs pure-numpy vectorized.

Run:  python benchmarks/bench_kernels.py [npoints]

The numba path is what the package selects by default; setting
CANTORTHOMPSON_DISABLE_NUMBA=1 makes the package fall back to the numpy path.
This script times both directly (no env juggling needed).
"""

import sys
import time

import numpy as np

from cantorthompson import _kernels as k


def bench(fn, z, L, q, repeats=5):
    fn(z[:64], L, q)  # warm up / compile
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(z, L, q)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000_000
    rng = np.random.default_rng(0)
    z = (rng.uniform(-3, 4, n) + 1j * rng.uniform(-3, 3, n)).astype(np.complex128)
    L, q = 1.0, 0.78

    rows = [("psi0 numpy", bench(k.psi0_apply_numpy, z, L, q)),
            ("psi1 numpy", bench(k.psi1_apply_numpy, z, L, q))]
    if k.psi0_apply_numba is not None:
        rows += [("psi0 numba", bench(k.psi0_apply_numba, z, L, q)),
                 ("psi1 numba", bench(k.psi1_apply_numba, z, L, q))]
    else:
        print("numba unavailable or disabled; timing numpy path only")

    print(f"{n} points, best of 5:")
    for name, secs in rows:
        print(f"  {name:12s} {secs * 1e3:8.1f} ms   {n / secs / 1e6:6.1f} Mpts/s")
    if k.psi0_apply_numba is not None:
        s0 = rows[0][1] / rows[2][1]
        s1 = rows[1][1] / rows[3][1]
        print(f"  speedup: psi0 x{s0:.2f}, psi1 x{s1:.2f}")


if __name__ == "__main__":
    main()
