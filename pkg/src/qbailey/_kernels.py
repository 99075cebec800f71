"""Integer kernels behind the exact cyclotomic arithmetic.

Two implementations of each kernel exist: numba ``@njit`` versions and
pure-numpy versions.  ``QBAILEY_NUMBA=0`` in the environment selects numpy;
otherwise numba is used when it imports.  Both operate on int64 arrays and
are only ever called by :mod:`qbailey._intvec` after it has proven that no
intermediate value can leave the int64 range, so exactness never depends on
which backend runs.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("QBAILEY_NUMBA", "1").strip().lower()
_WANT_NUMBA = _FLAG not in ("0", "false", "off", "no")

try:
    if not _WANT_NUMBA:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# ---------------------------------------------------------------- numpy path


def mul_reduce_numpy(a: np.ndarray, b: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Product of two power-basis vectors, reduced through ``table``.

    ``table[e]`` holds the power-basis coordinates of x**e; it must have at
    least ``len(a) + len(b) - 1`` rows.
    """
    conv = np.convolve(a, b)
    return conv @ table[: conv.shape[0]]


def fold_reduce_numpy(cyc: np.ndarray, table: np.ndarray, n: int) -> np.ndarray:
    length = cyc.shape[0]
    if length > n:
        pad = (-length) % n
        cyc = np.concatenate((cyc, np.zeros(pad, dtype=cyc.dtype))).reshape(-1, n).sum(axis=0)
    return cyc @ table[: cyc.shape[0]]


def _theta_terms(avals, bvals, n, exp_sign, jk_sign, weighted, use_sgn):
    ks = np.arange(-n, n, dtype=np.int64)
    lengths = np.abs(2 * ks + 1)
    starts = np.where(ks >= 0, -ks, ks + 1)
    conv = np.where(ks >= 0, 1, -1)
    if use_sgn:
        conv = conv * np.where(ks >= 0, 1, -1)
    k_rep = np.repeat(ks, lengths)
    offsets = np.arange(k_rep.shape[0]) - np.repeat(np.cumsum(lengths) - lengths, lengths)
    j_rep = np.repeat(starts, lengths) + offsets
    q = avals[k_rep + n] - bvals[j_rep + n]
    parity = j_rep + k_rep if jk_sign else j_rep
    coef = np.repeat(conv, lengths) * np.where(parity % 2 == 0, 1, -1)
    if weighted:
        coef = coef * q
    return (exp_sign * q) % n, coef


def theta_accumulate_numpy(avals, bvals, n, exp_sign, jk_sign, weighted, use_sgn):
    idx, coef = _theta_terms(avals, bvals, n, exp_sign, jk_sign, weighted, use_sgn)
    out = np.zeros(n, dtype=np.int64)
    np.add.at(out, idx, coef)
    return out


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def mul_reduce_numba(a, b, table):
        la = a.shape[0]
        lb = b.shape[0]
        width = table.shape[1]
        conv = np.zeros(la + lb - 1, dtype=np.int64)
        for i in range(la):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(lb):
                conv[i + j] += ai * b[j]
        out = np.zeros(width, dtype=np.int64)
        for e in range(conv.shape[0]):
            ce = conv[e]
            if ce == 0:
                continue
            for t in range(width):
                out[t] += ce * table[e, t]
        return out

    @njit(cache=True)
    def fold_reduce_numba(cyc, table, n):
        folded = np.zeros(n, dtype=np.int64)
        for e in range(cyc.shape[0]):
            folded[e % n] += cyc[e]
        width = table.shape[1]
        out = np.zeros(width, dtype=np.int64)
        for e in range(n):
            ce = folded[e]
            if ce == 0:
                continue
            for t in range(width):
                out[t] += ce * table[e, t]
        return out

    @njit(cache=True)
    def theta_accumulate_numba(avals, bvals, n, exp_sign, jk_sign, weighted, use_sgn):
        out = np.zeros(n, dtype=np.int64)
        for k in range(-n, n):
            if k >= 0:
                lo = -k
                hi = k
                sign = 1
            else:
                lo = k + 1
                hi = -k - 1
                sign = -1
                if use_sgn:
                    sign = 1
            ak = avals[k + n]
            for j in range(lo, hi + 1):
                q = ak - bvals[j + n]
                parity = j + k if jk_sign else j
                c = sign if parity % 2 == 0 else -sign
                if weighted:
                    c *= q
                out[(exp_sign * q) % n] += c
        return out

    mul_reduce = mul_reduce_numba
    fold_reduce = fold_reduce_numba
    theta_accumulate = theta_accumulate_numba
    BACKEND = "numba"
else:
    mul_reduce = mul_reduce_numpy
    fold_reduce = fold_reduce_numpy
    theta_accumulate = theta_accumulate_numpy
    BACKEND = "numpy"
