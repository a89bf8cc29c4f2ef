"""Compare the numba and numpy kernel backends.

Each backend runs in a fresh subprocess so that EULER_ZETA_BACKEND is read
cleanly. Numba timings exclude the first (compiling) call.

Usage:
    python benchmarks/bench_kernels.py [--primes 20000] [--points 2000] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json, sys, time
import numpy as np
from euler_zeta import kernels

n_primes, n_points, repeat = map(int, sys.argv[1:4])
rng = np.random.default_rng(0)
limit = int(n_primes * (np.log(n_primes) + np.log(np.log(n_primes)) + 2)) + 100
primes = np.flatnonzero(kernels.prime_flags(limit))[:n_primes]
logp = np.log(primes.astype(float))
alpha = np.exp(2j * np.pi * rng.integers(0, 4, (n_primes, 2)) / 4)
v = np.full(2, 1.5)
w = rng.uniform(0, 100, (n_points, 2))

def bench(fn):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best

res = {
    "sieve_1e7": bench(lambda: kernels.prime_flags(10**7)),
    "euler_product": bench(lambda: kernels.euler_batch(alpha, logp, v, w, kernels.MODE_PRODUCT)),
    "euler_log": bench(lambda: kernels.euler_batch(alpha, logp, v, w, kernels.MODE_LOG)),
}
print(json.dumps(res))
"""


def run_backend(backend, args):
    env = dict(os.environ, EULER_ZETA_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, str(args.primes), str(args.points), str(args.repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, default=20000)
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    results = {b: run_backend(b, args) for b in ("numpy", "numba")}
    print(f"{'kernel':<16}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name in results["numpy"]:
        a, b = results["numpy"][name], results["numba"][name]
        print(f"{name:<16}{a:>12.4f}{b:>12.4f}{a / b:>10.1f}")


if __name__ == "__main__":
    main()
