"""Rational Laurent polynomials in the formal variable q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class LaurentPoly:
    """Finite sum of terms c * q**e with integer e (possibly negative).

    Instances are immutable and never store zero coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            c = _as_fraction(c)
            if c:
                e = int(e)
                s = acc.get(e, 0) + c
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        self._terms = dict(sorted(acc.items()))
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> int | None:
        return next(iter(self._terms), None)

    def max_exponent(self) -> int | None:
        return next(reversed(self._terms), None)

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            return LaurentPoly({e * k: c**k})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "LaurentPoly(0)"
        parts = [f"{c}*q^{e}" for e, c in self._terms.items()]
        return "LaurentPoly(" + " + ".join(parts) + ")"

    # calculus and evaluation ---------------------------------------------

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: c * e for e, c in self._terms.items() if e})

    def evaluate(self, q) -> Fraction:
        q = _as_fraction(q)
        return sum((c * q**e for e, c in self._terms.items()), Fraction(0))

    def substitute_inverse(self) -> "LaurentPoly":
        """The polynomial obtained by replacing q with 1/q."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})


def formal_derivative(p: LaurentPoly) -> LaurentPoly:
    return p.derivative()


class LaurentContext:
    """Ring context whose elements are LaurentPoly (the formal ring Q[q, 1/q])."""

    one = LaurentPoly.constant(1)
    zero = LaurentPoly()

    def q(self, e: int) -> LaurentPoly:
        return LaurentPoly.monomial(e)

    def scalar(self, c) -> LaurentPoly:
        return LaurentPoly.constant(c)

    def is_zero(self, x: LaurentPoly) -> bool:
        return x.is_zero()

    def __repr__(self):
        return "LaurentContext()"


LAURENT = LaurentContext()
