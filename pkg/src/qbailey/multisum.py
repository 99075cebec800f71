"""Nested sums over weakly increasing chains top >= n_m >= ... >= n_1 >= 0.

Every multisum in the catalog and in the explicit Bailey-chain formulas has
the shape

    sum  outer(n_m, n_1) * prod_{i=1}^{m-1} link(n_i, n_{i+1})

so it is evaluated as repeated lower-triangular matrix-vector products
instead of enumerating chains.
"""

from __future__ import annotations

from typing import Callable, Optional


def link_matrix(ctx, top: int, link: Callable[[int, int], object]) -> list[list]:
    """L[y][x] = link(x, y) for 0 <= x <= y <= top."""
    return [[link(x, y) for x in range(y + 1)] for y in range(top + 1)]


def _apply(ctx, mat, vec, lo: int = 0):
    out = [ctx.zero] * len(vec)
    nz = [x for x in range(lo, len(vec)) if not ctx.is_zero(vec[x])]
    for y in range(lo, len(vec)):
        row = mat[y]
        acc = ctx.zero
        for x in nz:
            if x > y:
                break
            w = row[x]
            if not ctx.is_zero(w):
                acc = acc + w * vec[x]
        out[y] = acc
    return out


def chain_sum(
    ctx,
    m: int,
    top: int,
    link: Optional[Callable[[int, int], object]] = None,
    *,
    top_weight: Optional[Callable[[int], object]] = None,
    bottom_weight: Optional[Callable[[int], object]] = None,
    coupled: Optional[Callable[[int, int], object]] = None,
    matrix: Optional[list[list]] = None,
):
    """Sum over top >= n_m >= ... >= n_1 >= 0 of

        top_weight(n_m) * bottom_weight(n_1) * coupled(n_m, n_1) * prod link(n_i, n_{i+1})

    Any of the three outer factors may be omitted (treated as 1).  When
    ``bottom_weight(n_1)`` vanishes the whole column is skipped, which is how
    a vanishing Pochhammer prefix truncates the sum.  ``matrix`` may supply a
    precomputed :func:`link_matrix`.
    """
    if m < 1:
        raise ValueError("chain length m must be >= 1")
    if top < 0:
        return ctx.zero
    one = ctx.one

    def tw(n):
        return top_weight(n) if top_weight is not None else one

    def bw(n):
        return bottom_weight(n) if bottom_weight is not None else one

    if m == 1:
        total = ctx.zero
        for n in range(top + 1):
            b = bw(n)
            if ctx.is_zero(b):
                continue
            term = tw(n) * b
            if coupled is not None:
                term = term * coupled(n, n)
            total = total + term
        return total

    if matrix is None:
        if link is None:
            raise ValueError("m > 1 needs a link function or matrix")
        matrix = link_matrix(ctx, top, link)

    if coupled is None:
        vec = [bw(n) for n in range(top + 1)]
        for _ in range(m - 1):
            vec = _apply(ctx, matrix, vec)
        total = ctx.zero
        for y in range(top + 1):
            if not ctx.is_zero(vec[y]):
                total = total + tw(y) * vec[y]
        return total

    total = ctx.zero
    for n1 in range(top + 1):
        b = bw(n1)
        if ctx.is_zero(b):
            continue
        vec = [ctx.zero] * (top + 1)
        vec[n1] = b
        for _ in range(m - 1):
            vec = _apply(ctx, matrix, vec, lo=n1)
        for y in range(n1, top + 1):
            if not ctx.is_zero(vec[y]):
                total = total + tw(y) * coupled(y, n1) * vec[y]
    return total
