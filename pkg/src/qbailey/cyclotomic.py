"""Cyclotomic polynomials and exact arithmetic in Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z**(phi(N)-1) modulo the
N-th cyclotomic polynomial, as an integer numerator vector over a positive
common denominator kept in lowest terms.  That form is canonical, so
equality of field elements is equality of the stored data.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _intvec
from .errors import LimitDoesNotExistError, NotInvertibleError, RingMismatchError
from .laurent import LaurentPoly


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dn)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dn]
        quot[i] = c
        if c:
            for j in range(dn + 1):
                num[i + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("division is not exact")
    return quot


@lru_cache(maxsize=None)
def _cyclotomic_tuple(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, _cyclotomic_tuple(d))
    return tuple(poly)


def cyclotomic_poly(n: int) -> list[int]:
    """Coefficients of Phi_n, constant term first.

    >>> cyclotomic_poly(6)
    [1, -1, 1]
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"cyclotomic_poly needs a positive integer, got {n!r}")
    return list(_cyclotomic_tuple(int(n)))


def euler_phi(n: int) -> int:
    return len(_cyclotomic_tuple(n)) - 1


class CyclotomicRing:
    """The field Q(zeta_N), also usable as an evaluation context at q = zeta_N."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("root order must be positive")
        self.N = int(n)
        self.phi = _cyclotomic_tuple(self.N)
        self.degree = len(self.phi) - 1
        self.is_even = self.N % 2 == 0
        self.is_odd = not self.is_even

        rows = max(self.N, 2 * self.degree - 1)
        table = []
        row = [1] + [0] * (self.degree - 1)
        for _ in range(rows):
            table.append(row)
            top = row[-1]
            row = [0] + row[:-1]
            if top:
                row = [r - top * c for r, c in zip(row, self.phi[:-1])]
        self._table_obj = np.empty((rows, self.degree), dtype=object)
        self._table_obj[:, :] = table
        self._tmax = max(abs(x) for r in table for x in r)
        if self._tmax < _intvec.LIMIT:
            self._table64 = np.array(table, dtype=np.int64)
        else:
            self._table64 = None
        self._zeta_powers: list[CyclotomicNumber | None] = [None] * self.N
        self._inv_perm = [(-i) % self.N for i in range(self.degree)]
        self.zero = CyclotomicNumber._raw(self, np.zeros(self.degree, dtype=np.int64), 1, 0)
        one = np.zeros(self.degree, dtype=np.int64)
        one[0] = 1
        self.one = CyclotomicNumber._raw(self, one, 1, 1)

    def __eq__(self, other):
        return isinstance(other, CyclotomicRing) and other.N == self.N

    def __hash__(self):
        return hash(("CyclotomicRing", self.N))

    def __repr__(self):
        return f"CyclotomicRing(N={self.N})"

    # evaluation-context protocol ----------------------------------------

    def q(self, e: int) -> "CyclotomicNumber":
        """zeta_N ** e for any integer e (negative exponents wrap modulo N)."""
        e %= self.N
        z = self._zeta_powers[e]
        if z is None:
            vec, mag = _intvec.pack(self._table_obj[e].copy()) if self._table64 is None else (self._table64[e].copy(), None)
            z = CyclotomicNumber._raw(self, vec, 1, mag)
            self._zeta_powers[e] = z
        return z

    @property
    def zeta(self) -> "CyclotomicNumber":
        return self.q(1)

    def scalar(self, c) -> "CyclotomicNumber":
        c = Fraction(c)
        num = np.zeros(self.degree, dtype=np.int64)
        if abs(c.numerator) >= _intvec.LIMIT:
            num = num.astype(object)
        num[0] = c.numerator
        return CyclotomicNumber._raw(self, num, c.denominator, abs(c.numerator))

    def is_zero(self, x: "CyclotomicNumber") -> bool:
        return x.is_zero()

    # construction helpers -----------------------------------------------

    def from_coeffs(self, coeffs: Iterable) -> "CyclotomicNumber":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coeffs)}")
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        num, mag = _intvec.from_ints(c.numerator * (den // c.denominator) for c in coeffs)
        return CyclotomicNumber._make(self, num, mag, den)

    def from_cyclic(self, values, den: int = 1) -> "CyclotomicNumber":
        """Image of sum(values[e] * x**e) / den under x -> zeta_N."""
        if isinstance(values, np.ndarray) and values.dtype != object:
            arr, mag = values.astype(np.int64, copy=False), _intvec.maxabs(values)
        else:
            arr, mag = _intvec.from_ints(values)
        return CyclotomicNumber._make(self, *self._fold(arr, mag), den)

    def _fold(self, cyc, mag):
        if self._table64 is None:
            cyc = cyc.astype(object)
        vec, m = _intvec.fold_reduce(cyc, mag, self.N, self._table64, self._table_obj, self._tmax)
        return vec, m

    def random_element(self, rng, height: int = 5, den_max: int = 3) -> "CyclotomicNumber":
        coeffs = [Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, den_max + 1)))
                  for _ in range(self.degree)]
        return self.from_coeffs(coeffs)


@lru_cache(maxsize=None)
def cyclotomic_ring(n: int) -> CyclotomicRing:
    """Shared, read-only ring instance for root order n."""
    return CyclotomicRing(n)


def _rat_poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = len(b) - 1
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + lb] / lead
        q[i] = c
        if c:
            for j in range(lb + 1):
                a[i + j] -= c * b[j]
    r = a[:lb] if lb else []
    while r and r[-1] == 0:
        r.pop()
    return q, r


def _rat_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _rat_poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


class CyclotomicNumber:
    """An element of Q(zeta_N)."""

    __slots__ = ("ring", "_num", "_den", "_mag")

    def __init__(self, ring: CyclotomicRing, coeffs: Iterable):
        other = ring.from_coeffs(coeffs)
        self.ring = ring
        self._num, self._den, self._mag = other._num, other._den, other._mag

    @classmethod
    def _raw(cls, ring, num, den, mag):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._num = num
        obj._den = den
        obj._mag = mag
        return obj

    @classmethod
    def _make(cls, ring, num, mag, den=1):
        den = int(den)
        if den != 1:
            if den < 0:
                num, den = -num, -den
            g = den
            if num.dtype == object:
                for x in num:
                    g = math.gcd(g, int(x))
                    if g == 1:
                        break
            else:
                g = math.gcd(g, int(np.gcd.reduce(num))) if num.size else g
            if g != 1:
                num = num // g
                den //= g
                mag = None
        return cls._raw(ring, num, den, mag)

    # accessors -----------------------------------------------------------

    @property
    def mag(self) -> int:
        if self._mag is None:
            self._mag = _intvec.maxabs(self._num)
        return self._mag

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(x), self._den) for x in self._num)

    @property
    def N(self) -> int:
        return self.ring.N

    def is_zero(self) -> bool:
        return self.mag == 0

    def is_rational(self) -> bool:
        return not np.any(self._num[1:])

    # arithmetic ----------------------------------------------------------

    def _check(self, other: "CyclotomicNumber"):
        if other.ring.N != self.ring.N:
            raise RingMismatchError(f"operands in Q(zeta_{self.ring.N}) and Q(zeta_{other.ring.N})")

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return self.ring.scalar(other)
        return NotImplemented

    def _aligned(self, other):
        da, db = self._den, other._den
        if da == db:
            return self._num, self.mag, other._num, other.mag, da
        den = math.lcm(da, db)
        a, ma = _intvec.scale(self._num, self.mag, den // da)
        b, mb = _intvec.scale(other._num, other.mag, den // db)
        return a, _mag(a, ma), b, _mag(b, mb), den

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, ma, b, mb, den = self._aligned(other)
        num, mag = _intvec.add(a, ma, b, mb)
        return CyclotomicNumber._make(self.ring, num, mag, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        a, ma, b, mb, den = self._aligned(other)
        num, mag = _intvec.sub(a, ma, b, mb)
        return CyclotomicNumber._make(self.ring, num, mag, den)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return CyclotomicNumber._raw(self.ring, -self._num, self._den, self._mag)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            num, mag = _intvec.scale(self._num, self.mag, int(other))
            return CyclotomicNumber._make(self.ring, num, mag, self._den)
        if isinstance(other, Fraction):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.ring.zero
        r = self.ring
        a, b = self._num, other._num
        if r._table64 is None:
            a, b = a.astype(object), b.astype(object)
        num, mag = _intvec.mul_reduce(a, self.mag, b, other.mag, r._table64, r._table_obj, r._tmax)
        return CyclotomicNumber._make(r, num, mag, self._den * other._den)

    __rmul__ = __mul__

    def scale(self, c) -> "CyclotomicNumber":
        """Multiply by a rational scalar."""
        c = Fraction(c)
        num, mag = _intvec.scale(self._num, self.mag, c.numerator)
        return CyclotomicNumber._make(self.ring, num, mag, self._den * c.denominator)

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse by the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise NotInvertibleError(f"cannot invert zero in Q(zeta_{self.ring.N})")
        if self.is_rational():
            return self.ring.scalar(1 / self.coeffs[0])
        a = list(self.coeffs)
        while a and a[-1] == 0:
            a.pop()
        m = [Fraction(c) for c in self.ring.phi]
        # invariant: r_i = s_i * a  (mod m)
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _rat_poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _rat_poly_sub(s0, _rat_poly_mul(q, s1))
        c = r1[0]
        inv = [x / c for x in s1]
        inv = _rat_poly_divmod(inv, m)[1] if len(inv) > self.ring.degree else inv
        inv = inv + [Fraction(0)] * (self.ring.degree - len(inv))
        return self.ring.from_coeffs(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            if other == 0:
                raise NotInvertibleError("division by zero")
            return self.scale(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inversion_map(self) -> "CyclotomicNumber":
        """Image under the automorphism zeta -> zeta**(-1)."""
        r = self.ring
        cyc = np.zeros(r.N, dtype=self._num.dtype)
        for i, j in enumerate(r._inv_perm):
            cyc[j] += self._num[i]
        num, mag = r._fold(cyc, self.mag)
        return CyclotomicNumber._make(r, num, mag, self._den)

    # comparison / serialization -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            other = self.ring.scalar(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return (other.ring.N == self.ring.N and other._den == self._den
                and bool(np.array_equal(self._num, other._num)))

    def __hash__(self):
        return hash((self.ring.N, self._den, tuple(int(x) for x in self._num)))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CyclotomicNumber(N={self.ring.N}, {self.pretty()})"

    def pretty(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and abs(c) == 1:
                txt = mono
            else:
                txt = f"{abs(c)}{'*' + mono if mono else ''}"
            parts.append(("-" if c < 0 else "+", txt))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {t}" for s, t in parts[1:])

    def to_json_obj(self) -> dict:
        return {"N": self.ring.N, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CyclotomicNumber":
        ring = cyclotomic_ring(int(obj["N"]))
        return ring.from_coeffs(Fraction(s) for s in obj["coeffs"])

    @classmethod
    def from_json(cls, text: str) -> "CyclotomicNumber":
        return cls.from_json_obj(json.loads(text))


def _mag(arr, mag):
    return _intvec.maxabs(arr) if mag is None else mag


def inversion_map(x: CyclotomicNumber) -> CyclotomicNumber:
    return x.inversion_map()


def reduce(p: LaurentPoly, ring: CyclotomicRing) -> CyclotomicNumber:
    """Image of a Laurent polynomial under q -> zeta_N."""
    if p.is_zero():
        return ring.zero
    buckets: dict[int, Fraction] = {}
    for e, c in p.items():
        k = e % ring.N
        buckets[k] = buckets.get(k, 0) + c
    den = math.lcm(*(Fraction(c).denominator for c in buckets.values()))
    cyc = [0] * ring.N
    for k, c in buckets.items():
        c = Fraction(c)
        cyc[k] = c.numerator * (den // c.denominator)
    return ring.from_cyclic(cyc, den)


def lhopital_at_root(F: LaurentPoly, ring: CyclotomicRing) -> CyclotomicNumber:
    """lim_{q -> zeta_N} F(q) / (1 - q**N), which equals (-zeta/N) * F'(zeta)."""
    if not reduce(F, ring).is_zero():
        raise LimitDoesNotExistError(
            f"F does not vanish at a primitive {ring.N}-th root of unity; the limit diverges"
        )
    return (ring.zeta * reduce(F.derivative(), ring)).scale(Fraction(-1, ring.N))
