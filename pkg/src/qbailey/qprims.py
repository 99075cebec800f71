"""q-series building blocks evaluated in an arbitrary ring context.

A *ring context* is any object with ``one``, ``zero``, ``q(e)`` (the e-th
power of the evaluation point, e possibly negative), ``scalar(c)`` and
``is_zero(x)``.  Three contexts ship with the package:

* :class:`RationalPoint` -- q is a fixed nonzero rational; elements are Fractions;
* :class:`~qbailey.cyclotomic.CyclotomicRing` -- q is a primitive N-th root of unity;
* :data:`~qbailey.laurent.LAURENT` -- q stays formal; elements are LaurentPoly.
"""

from __future__ import annotations

import json
import threading
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import _intvec, _kernels
from .cyclotomic import CyclotomicNumber, CyclotomicRing


@dataclass(frozen=True)
class RationalPoint:
    """Evaluation context at a fixed rational q."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    one = Fraction(1)
    zero = Fraction(0)

    def q(self, e: int) -> Fraction:
        return self.value**e

    def scalar(self, c) -> Fraction:
        return Fraction(c)

    def is_zero(self, x) -> bool:
        return x == 0


# ---------------------------------------------------------------- Pochhammers


@dataclass(frozen=True)
class PochArgument:
    """The monomial a = sign * q**q_exponent in (a; q**base_exponent)_n.

    A negative base exponent gives the inverted base, as in (q^-1; q^-1)_n.
    """

    sign: int = 1
    q_exponent: int = 1
    base_exponent: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.base_exponent == 0:
            raise ValueError("base_exponent must be nonzero")


def poch_value(ctx, a, n: int, base):
    """prod_{k<n} (1 - a * base**k) for ring elements a and base."""
    if n < 0:
        raise ValueError("Pochhammer length must be non-negative")
    out = ctx.one
    term = a
    for _ in range(n):
        out = out * (ctx.one - term)
        term = term * base
    return out


def _factor(ctx, arg: PochArgument, k: int):
    mono = ctx.q(arg.q_exponent + arg.base_exponent * k)
    return ctx.one - mono if arg.sign == 1 else ctx.one + mono


def pochhammer(arg: PochArgument, n: int, ctx):
    """(a; q**s)_n with a = arg.sign * q**arg.q_exponent and s = arg.base_exponent."""
    if n < 0:
        raise ValueError("Pochhammer length must be non-negative")
    out = ctx.one
    for k in range(n):
        out = out * _factor(ctx, arg, k)
    return out


class PrefixStream:
    """Successive values (a)_0, (a)_1, ... of one Pochhammer symbol.

    Each step costs one multiplication.  Once a prefix vanishes every later
    prefix does too; ``first_zero`` records that index once it is reached.
    """

    def __init__(self, arg: PochArgument, ctx):
        self.arg = arg
        self.ctx = ctx
        self.first_zero: int | None = None
        self._values = [ctx.one]

    def __getitem__(self, n: int):
        while len(self._values) <= n:
            k = len(self._values) - 1
            prev = self._values[-1]
            if self.first_zero is not None:
                self._values.append(prev)
                continue
            val = prev * _factor(self.ctx, self.arg, k)
            if self.ctx.is_zero(val):
                self.first_zero = k + 1
                val = self.ctx.zero
            self._values.append(val)
        return self._values[n]

    def __iter__(self) -> Iterator:
        n = 0
        while True:
            yield self[n]
            n += 1

    def first_zero_index(self, limit: int) -> int | None:
        """Index of the first vanishing prefix, searching indices <= limit."""
        for n in range(limit + 1):
            self[n]
            if self.first_zero is not None:
                return self.first_zero
        return None


def pochhammer_prefix_stream(arg: PochArgument, ctx) -> PrefixStream:
    return PrefixStream(arg, ctx)


def prefix_table(arg: PochArgument, ctx, top: int) -> list:
    """[(a)_0, ..., (a)_top] computed incrementally."""
    stream = PrefixStream(arg, ctx)
    return [stream[n] for n in range(top + 1)]


# ---------------------------------------------------------------- Gaussian binomials

_binom_cache: dict = {}
_binom_lock = threading.Lock()


def q_binomial_rows(nmax: int, s: int, ctx) -> list[list]:
    """Rows 0..nmax of Gaussian binomials in base q**s, via the Pascal-type
    recurrence [n, k] = [n-1, k-1] + q**(s*k) [n-1, k] (no division)."""
    key = (ctx, s)
    with _binom_lock:
        rows = _binom_cache.setdefault(key, [[ctx.one]])
        while len(rows) <= nmax:
            prev = rows[-1]
            n = len(rows)
            row = [ctx.one]
            for k in range(1, n):
                row.append(prev[k - 1] + ctx.q(s * k) * prev[k])
            row.append(ctx.one)
            rows.append(row)
        return rows[: nmax + 1]


def q_binomial(n: int, k: int, s: int = 1, ctx=None):
    """Gaussian binomial [n, k] in base q**s; zero outside 0 <= k <= n."""
    if ctx is None:
        raise TypeError("q_binomial needs a ring context")
    if n < 0 or k < 0 or k > n:
        return ctx.zero
    return q_binomial_rows(n, s, ctx)[n][k]


# ---------------------------------------------------------------- summation helpers


def sgn(k: int) -> int:
    return 1 if k >= 0 else -1


def signed_range_sum(f: Callable[[int], object], a: int, b: int, zero=0):
    """sum_{j=a}^{b} f(j), extended to a > b by -sum_{j=b+1}^{a-1} f(j)."""
    total = zero
    if a <= b:
        for j in range(a, b + 1):
            total = total + f(j)
        return total
    for j in range(b + 1, a):
        total = total - f(j)
    return total


# ---------------------------------------------------------------- theta sums

J_QUADRATICS = {
    "pentagonal": lambda j: Fraction(j * (3 * j + 1), 2),
    "square": lambda j: Fraction(j * j),
}


@dataclass(frozen=True)
class ThetaSpec:
    """A truncated indefinite theta double sum.

    scalar * sum_{k=-N}^{N-1} sum_{j=-k}^{k} [sgn(k)] [A(k) - B(j)] sign * q**(e * (A(k) - B(j)))

    where A(k) = a2*k**2 + a1*k, B is selected by ``j_quadratic``, e is
    ``exponent_sign``, sign is (-1)**j or (-1)**(j+k) per ``sign_mode``,
    and the inner sum follows the signed-range convention for k < 0.
    """

    a2: Fraction
    a1: Fraction
    j_quadratic: str = "pentagonal"
    exponent_sign: int = 1
    sign_mode: str = "j"
    weight_mode: str = "quadratic"
    sgn_mode: str = "none"
    scalar: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("a2", "a1", "scalar"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.j_quadratic not in J_QUADRATICS:
            raise ValueError(f"unknown j_quadratic {self.j_quadratic!r}")
        if self.exponent_sign not in (1, -1):
            raise ValueError("exponent_sign must be +1 or -1")
        if self.sign_mode not in ("j", "j+k"):
            raise ValueError(f"unknown sign_mode {self.sign_mode!r}")
        if self.weight_mode not in ("quadratic", "unweighted"):
            raise ValueError(f"unknown weight_mode {self.weight_mode!r}")
        if self.sgn_mode not in ("sgn", "none"):
            raise ValueError(f"unknown sgn_mode {self.sgn_mode!r}")

    def k_form(self, k: int) -> int:
        v = self.a2 * k * k + self.a1 * k
        if v.denominator != 1:
            raise ValueError(f"A({k}) = {v} is not an integer")
        return int(v)

    def j_form(self, j: int) -> int:
        v = J_QUADRATICS[self.j_quadratic](j)
        if v.denominator != 1:
            raise ValueError(f"B({j}) = {v} is not an integer")
        return int(v)

    def with_scalar(self, scalar) -> "ThetaSpec":
        return ThetaSpec(**{**asdict(self), "scalar": Fraction(scalar)})

    def to_json_obj(self) -> dict:
        d = asdict(self)
        for name in ("a2", "a1", "scalar"):
            v = d[name]
            d[name] = f"{v.numerator}/{v.denominator}"
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ThetaSpec":
        obj = dict(obj)
        for name in ("a2", "a1", "scalar"):
            obj[name] = Fraction(obj[name])
        return cls(**obj)


def _theta_buckets_python(avals, bvals, n, spec):
    out = [0] * n
    for k in range(-n, n):
        lo, hi, sign = (-k, k, 1) if k >= 0 else (k + 1, -k - 1, -1)
        if spec.sgn_mode == "sgn" and k < 0:
            sign = -sign
        for j in range(lo, hi + 1):
            q = avals[k + n] - bvals[j + n]
            parity = j + k if spec.sign_mode == "j+k" else j
            c = sign if parity % 2 == 0 else -sign
            if spec.weight_mode == "quadratic":
                c *= q
            out[(spec.exponent_sign * q) % n] += c
    return out


def theta_buckets(spec: ThetaSpec, n: int) -> list[int] | np.ndarray:
    """Integer coefficients c_e with sum_e c_e * zeta**e equal to the unscaled sum."""
    avals = [spec.k_form(k) for k in range(-n, n)]
    bvals = [spec.j_form(j) for j in range(-n, n + 1)]
    maxw = max(map(abs, avals)) + max(map(abs, bvals))
    count = 2 * n * n
    bound = count * (maxw if spec.weight_mode == "quadratic" else 1) + maxw
    if bound >= _intvec.LIMIT:
        return _theta_buckets_python(avals, bvals, n, spec)
    return _kernels.theta_accumulate(
        np.array(avals, dtype=np.int64),
        np.array(bvals, dtype=np.int64),
        n,
        spec.exponent_sign,
        spec.sign_mode == "j+k",
        spec.weight_mode == "quadratic",
        spec.sgn_mode == "sgn",
    )


def theta_double_sum(spec: ThetaSpec, ring: CyclotomicRing) -> CyclotomicNumber:
    if spec.scalar == 0:
        return ring.zero
    return ring.from_cyclic(theta_buckets(spec, ring.N)).scale(spec.scalar)
