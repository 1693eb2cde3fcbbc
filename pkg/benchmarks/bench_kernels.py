"""Benchmark the numba-compiled kernels against the pure-numpy fallback.

Runs the same permutation-null workload in two subprocesses, one with
COMBINF_NO_NUMBA=1, and reports wall times. Usage:

    python3 benchmarks/bench_kernels.py [--perms N] [--p P] [--n N]
"""

import argparse
import os
import subprocess
import sys

WORKLOAD = """
import os, time
import numpy as np
from combinf import _kernels

perms_count = {perms}
n, p = {n}, {p}

rng = np.random.default_rng(0)
Z = np.ascontiguousarray(rng.standard_normal((2 * n, p)))
perms = np.array([rng.permutation(2 * n) for _ in range(perms_count)],
                 dtype=np.int64)
iu, ju = np.triu_indices(p, k=1)
iu = iu.astype(np.int64); ju = ju.astype(np.int64)

# warm-up (includes JIT compilation on the numba path)
_kernels.permutation_null(Z, perms[:2], iu, ju, True)

t0 = time.perf_counter()
null = _kernels.permutation_null(Z, perms, iu, ju, True)
elapsed = time.perf_counter() - t0

a = np.sort(rng.standard_normal(500))
b = np.sort(rng.standard_normal(500))
_kernels.discrepancy_sorted(a, b)
t0 = time.perf_counter()
for _ in range(2000):
    _kernels.discrepancy_sorted(a, b)
disc = time.perf_counter() - t0

print(f"{{_kernels.backend()}}\t{{elapsed:.4f}}\t{{disc:.4f}}\t{{int(null.sum())}}")
"""


def run(no_numba, args):
    env = dict(os.environ, COMBINF_NO_NUMBA="1" if no_numba else "0")
    code = WORKLOAD.format(perms=args.perms, n=args.n, p=args.p)
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    backend, perm_t, disc_t, checksum = out.stdout.strip().split("\t")
    return backend, float(perm_t), float(disc_t), checksum


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--perms", type=int, default=1000)
    parser.add_argument("--p", type=int, default=40)
    parser.add_argument("--n", type=int, default=10)
    args = parser.parse_args()

    print(f"workload: {args.perms} permutations, n={args.n}, p={args.p}")
    results = [run(False, args), run(True, args)]
    for backend, perm_t, disc_t, _ in results:
        print(f"{backend:>6}: permutation null {perm_t:8.4f} s   "
              f"discrepancy x2000 {disc_t:8.4f} s")
    if results[0][3] != results[1][3]:
        print("WARNING: backends disagree on the null statistics!")
        return 1
    speedup = results[1][1] / results[0][1]
    print(f"numba speedup on permutation null: {speedup:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
