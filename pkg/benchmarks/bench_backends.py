"""Compare the numba and numpy kernel backends on the same exact workloads.

Each backend runs in its own interpreter (the backend is fixed at import time
by QBAILEY_NUMBA).  JIT compilation is excluded by a warm-up pass.

    python benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from fractions import Fraction
import numpy as np
from qbailey import _kernels
from qbailey.cyclotomic import cyclotomic_ring
from qbailey.qprims import ThetaSpec, theta_buckets
from qbailey.catalog import verify_identity

repeat = int(sys.argv[1])

def theta():
    spec = ThetaSpec(Fraction(7, 2), Fraction(5, 2), "square", 1, "j+k", "quadratic", "sgn", 1)
    for N in (101, 151, 199):
        theta_buckets(spec, N)

def products():
    rng = np.random.default_rng(0)
    for N in (60, 97, 128):
        ring = cyclotomic_ring(N)
        xs = [ring.random_element(rng, 50, 1) for _ in range(40)]
        acc = ring.one
        for x in xs:
            acc = (acc * x).scale(Fraction(1, 1))
            acc = ring.from_coeffs([c % 1000 for c in acc.coeffs])

def grid():
    for N in range(1, 17):
        for m in (1, 2, 3):
            verify_identity("thm3", N, m)
            verify_identity("halfway-thm3-b", N, m)

out = {"backend": _kernels.BACKEND}
for name, fn in (("theta_buckets", theta), ("cyclotomic_products", products), ("thm3_grid", grid)):
    fn()  # warm-up, includes JIT compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter(); fn(); times.append(time.perf_counter() - t0)
    out[name] = min(times)
print(json.dumps(out))
"""


def run(flag: str, repeat: int) -> dict:
    env = {**os.environ, "QBAILEY_NUMBA": flag}
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    numba_res = run("1", args.repeat)
    numpy_res = run("0", args.repeat)
    print(f"{'workload':<22}{numba_res['backend']:>12}{numpy_res['backend']:>12}{'speedup':>10}")
    for key in ("theta_buckets", "cyclotomic_products", "thm3_grid"):
        a, b = numba_res[key], numpy_res[key]
        print(f"{key:<22}{a:>11.4f}s{b:>11.4f}s{b / a:>9.2f}x")


if __name__ == "__main__":
    main()
