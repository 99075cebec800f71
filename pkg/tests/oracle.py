"""Floating-point brute force over explicit index chains, independent of the exact engine."""

import cmath
import itertools


def poch(a, q, n):
    out = 1
    for k in range(n):
        out *= 1 - a * q**k
    return out


def gauss(n, k, q):
    if k < 0 or k > n:
        return 0
    rows = [[1]]
    for r in range(1, n + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i - 1] + q**i * prev[i] for i in range(1, r)] + [1])
    return rows[n][k]


def chains(length, top):
    """Tuples (n_1, ..., n_length) with top >= n_length >= ... >= n_1 >= 0."""
    for c in itertools.combinations_with_replacement(range(top + 1), length):
        yield c


def link(c, q, s=1):
    out = 1
    for i in range(len(c) - 1):
        out *= q ** (s * (c[i] ** 2 + c[i])) * gauss(c[i + 1], c[i], q**s)
    return out


def thm1(q, m, top):
    lhs = sum(poch(q, q, c[-1]) * (-1) ** c[0] * q ** (-(c[0] * (c[0] + 1) // 2)) * link(c, q)
              for c in chains(m, top))
    rhs = sum(poch(q, q, c[-1]) * poch(q, q, c[0]) * q ** (c[-1] + 1) * link(c, q) for c in chains(m, top))
    return lhs, rhs


def thm2(q, m, top):
    lhs = sum(poch(-q, q, c[-1]) * poch(q, q, c[0]) * q ** (c[-1] + 1) * link(c, q) for c in chains(m, top))
    rhs = -sum(poch(-q, q, c[-1]) * (-1) ** (c[-1] + c[0]) * q ** (-(c[0] * (c[0] + 1) // 2)) * link(c, q)
               for c in chains(m, top))
    return lhs, rhs


def thm3_right(q, m, top):
    return sum(poch(-q ** (2 * c[0] + 2), q, 2 * c[-1] - 2 * c[0]) * (-1) ** c[-1] * q ** (-(c[-1] + 1) ** 2)
               * poch(q**2, q**2, c[0]) * link(c, q, 2) for c in chains(m, top))


def thm3(q, m, top):
    lhs = sum(poch(-q ** (c[0] + 1), q, c[-1] - c[0]) * (-1) ** c[-1] * poch(q, q, c[0]) * link(c, q)
              for c in chains(2 * m - 1, top))
    return lhs, thm3_right(q, m, top)


def thm4(q, m, top):
    rhs = sum(poch(-q ** (2 * c[0] + 1), q, 2 * c[-1] - 2 * c[0]) * (-1) ** c[-1] * q ** (-c[-1] ** 2)
              * poch(q, q**2, c[0]) * link(c, q, 2) for c in chains(m, top))
    return thm3_right(q, m, top), rhs


def zeta(N):
    return cmath.exp(2j * cmath.pi / N)
