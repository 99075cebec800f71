"""Overflow-proof integer vector arithmetic.

Vectors are int64 numpy arrays while every entry is below ``LIMIT`` in
absolute value and object arrays of Python ints otherwise.  Before each
kernel call an a-priori bound on every intermediate is checked; when it is
not below ``LIMIT`` the computation is repeated with Python integers.
"""

from __future__ import annotations

import numpy as np

from . import _kernels

LIMIT = 1 << 62


def maxabs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(x)) for x in arr)
    return int(np.abs(arr).max())


def pack(arr: np.ndarray) -> tuple[np.ndarray, int]:
    """Return ``arr`` in the narrowest exact dtype together with its max-abs."""
    m = maxabs(arr)
    if arr.dtype == object:
        if m < LIMIT:
            return arr.astype(np.int64), m
        return arr, m
    return arr, m


def from_ints(values) -> tuple[np.ndarray, int]:
    values = [int(v) for v in values]
    m = max((abs(v) for v in values), default=0)
    if m < LIMIT:
        return np.array(values, dtype=np.int64), m
    arr = np.empty(len(values), dtype=object)
    arr[:] = values
    return arr, m


def _obj(arr: np.ndarray) -> np.ndarray:
    return arr if arr.dtype == object else arr.astype(object)


def add(a, ma, b, mb):
    if ma + mb < LIMIT:
        return a + b, None
    return pack(_obj(a) + _obj(b))


def sub(a, ma, b, mb):
    if ma + mb < LIMIT:
        return a - b, None
    return pack(_obj(a) - _obj(b))


def scale(a, ma, c: int):
    if ma * abs(c) < LIMIT:
        return a * c, ma * abs(c)
    return pack(_obj(a) * c)


def mul_reduce(a, ma, b, mb, table64, table_obj, tmax):
    la, lb = a.shape[0], b.shape[0]
    bound = min(la, lb) * ma * mb * (la + lb - 1) * tmax
    if bound < LIMIT and a.dtype != object and b.dtype != object:
        return _kernels.mul_reduce(a, b, table64), None
    conv = np.convolve(_obj(a), _obj(b))
    return pack(conv @ table_obj[: conv.shape[0]])


def fold_reduce(cyc, mc, n, table64, table_obj, tmax):
    length = cyc.shape[0]
    bound = length * mc * min(length, n) * tmax
    if bound < LIMIT and cyc.dtype != object:
        return _kernels.fold_reduce(cyc, table64, n), None
    cyc = _obj(cyc)
    folded = np.zeros(n, dtype=object)
    folded[:] = 0
    for e in range(length):
        folded[e % n] += cyc[e]
    return pack(folded @ table_obj[:n])
