import os
import subprocess
import sys

import numpy as np
import pytest

from qbailey import _kernels
from qbailey.cyclotomic import cyclotomic_ring

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba backend disabled")


def _table(N):
    return cyclotomic_ring(N)._table64


@needs_numba
@pytest.mark.parametrize("N", [3, 8, 15, 30])
def test_mul_reduce_backends_agree(N):
    rng = np.random.default_rng(N)
    table = _table(N)
    d = cyclotomic_ring(N).degree
    for _ in range(20):
        a = rng.integers(-1000, 1000, d).astype(np.int64)
        b = rng.integers(-1000, 1000, d).astype(np.int64)
        np.testing.assert_array_equal(_kernels.mul_reduce_numba(a, b, table),
                                      _kernels.mul_reduce_numpy(a, b, table))


@needs_numba
@pytest.mark.parametrize("N", [1, 4, 9, 24])
def test_fold_reduce_backends_agree(N):
    rng = np.random.default_rng(100 + N)
    table = _table(N)
    for length in (N, 3 * N + 1):
        cyc = rng.integers(-50, 50, length).astype(np.int64)
        np.testing.assert_array_equal(_kernels.fold_reduce_numba(cyc, table, N),
                                      _kernels.fold_reduce_numpy(cyc, table, N))


@needs_numba
@pytest.mark.parametrize("flags", [(1, False, False, False), (-1, True, True, True), (1, True, False, True)])
def test_theta_backends_agree(flags):
    N = 11
    avals = np.array([k * k + k for k in range(-N, N)], dtype=np.int64)
    bvals = np.array([j * (3 * j + 1) // 2 for j in range(-N, N + 1)], dtype=np.int64)
    np.testing.assert_array_equal(_kernels.theta_accumulate_numba(avals, bvals, N, *flags),
                                  _kernels.theta_accumulate_numpy(avals, bvals, N, *flags))


def test_backend_flag_selects_numpy():
    code = ("from qbailey import _kernels; from qbailey.catalog import verify_identity;"
            "r = verify_identity('cohen-main', 4, 1);"
            "print(_kernels.BACKEND, r.status, r.side_a.to_json())")
    env = {**os.environ, "QBAILEY_NUMBA": "0"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split(" ", 2)[:2] == ["numpy", "pass"]
    assert '{"N":4,"coeffs":["-2/1","1/1"]}' in out.stdout
