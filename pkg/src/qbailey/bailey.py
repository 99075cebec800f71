"""Bailey pairs relative to q, Bailey-lemma steps, base changes and key lemmas.

A pair is a label plus two generators ``alpha(ctx, n)`` and ``beta(ctx, n)``
evaluated in a ring context (normally :class:`~qbailey.qprims.RationalPoint`,
since the defining relation involves division by Pochhammer symbols that
vanish at roots of unity).

``base_exponent`` records the base: a base-1 pair satisfies the defining
relation in q; a base-2 pair stores alpha_n(q^2), beta_n(q^2) as functions of
q, i.e. it satisfies the relation with q replaced by Q = q^2.  Every lemma in
this module is applied in the pair's own base Q = q^s, except the two base
changes, which turn a base-2 pair into a base-1 pair.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import BaseExponentError, DenominatorVanishingError, UnknownPairError
from .multisum import chain_sum
from .qprims import RationalPoint, poch_value, q_binomial_rows

DEFAULT_POINTS = (Fraction(2, 3), Fraction(5, 7), Fraction(3, 2))

Generator = Callable[[object, int], object]


class BaileyPair:
    """A Bailey pair relative to Q = q**base_exponent, with memoized generators."""

    def __init__(self, label: str, alpha: Generator, beta: Generator, base_exponent: int = 1):
        if base_exponent not in (1, 2):
            raise ValueError("base_exponent must be 1 or 2")
        self.label = label
        self.base_exponent = base_exponent
        self._alpha = alpha
        self._beta = beta
        self._memo: dict = {}
        self._lock = threading.Lock()

    def _get(self, which, fn, ctx, n):
        key = (which, ctx, n)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        try:
            val = fn(ctx, n)
        except ZeroDivisionError as exc:
            raise DenominatorVanishingError(f"{self.label}: {which}_{n} undefined at {ctx}") from exc
        with self._lock:
            self._memo[key] = val
        return val

    def alpha(self, ctx, n: int):
        return self._get("alpha", self._alpha, ctx, n)

    def beta(self, ctx, n: int):
        return self._get("beta", self._beta, ctx, n)

    def __repr__(self):
        return f"BaileyPair({self.label!r}, base_exponent={self.base_exponent})"


# ---------------------------------------------------------------- small helpers


def _Q(ctx, s: int, e: int):
    return ctx.q(s * e)


def _poch(ctx, x, n: int, base):
    return poch_value(ctx, x, n, base)


def _geom(ctx, terms: int, step: int = 1):
    """1 + q^step + ... + q^(step*(terms-1)), i.e. (1 - q^(step*terms)) / (1 - q^step)."""
    total = ctx.zero
    for i in range(terms):
        total = total + ctx.q(step * i)
    return total


def _pent(j: int) -> int:
    return j * (3 * j + 1) // 2


def _tri(n: int) -> int:
    return n * (n + 1) // 2


def _theta_j(ctx, k: int, exponent: Callable[[int], int]):
    total = ctx.zero
    for j in range(-k, k + 1):
        term = ctx.q(exponent(j))
        total = total + term if j % 2 == 0 else total - term
    return total


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


def _squared(ctx):
    if isinstance(ctx, RationalPoint):
        return RationalPoint(ctx.value * ctx.value)
    raise TypeError(f"cannot square the evaluation point of {ctx!r}")


# ---------------------------------------------------------------- seeds


def _posdefpair2():
    def alpha(ctx, k):
        return _geom(ctx, 2 * k + 1) * ctx.q(-k) * _theta_j(ctx, k, _pent)

    def beta(ctx, k):
        return ctx.q(-k) / _poch(ctx, ctx.q(1), k, ctx.q(1))

    return BaileyPair("posdefpair2", alpha, beta, 1)


def _indefpair1():
    def alpha(ctx, k):
        return _geom(ctx, 2 * k + 1) * ctx.q(2 * k * k + k) * _theta_j(ctx, k, lambda j: -_pent(j))

    def beta(ctx, k):
        return ctx.one

    return BaileyPair("indefpair1", alpha, beta, 1)


def _indefpair2():
    def alpha(ctx, k):
        return _geom(ctx, 2 * k + 1) * ctx.q(_pent(k)) * _theta_j(ctx, k, lambda j: -j * j)

    def beta(ctx, k):
        return ctx.one / _poch(ctx, -ctx.q(1), k, ctx.q(1))

    return BaileyPair("indefpair2", alpha, beta, 1)


def _indefpair4():
    # stored with q -> q^2 so that no half-integer powers appear
    def alpha(ctx, k):
        return _geom(ctx, 2 * k + 1) * ctx.q(2 * k * k + k) * _theta_j(ctx, k, lambda j: -j * j)

    def beta(ctx, k):
        return ctx.one / _poch(ctx, -ctx.q(2), 2 * k, ctx.q(1))

    return BaileyPair("indefpair4", alpha, beta, 2)


def _bp14():
    # stored with q -> q^2 so that no half-integer powers appear
    def alpha(ctx, k):
        return _geom(ctx, 2 * k + 1, 2) * ctx.q(2 * k * k) * _theta_j(ctx, k, lambda j: -j * j)

    def beta(ctx, k):
        num = _poch(ctx, ctx.q(1), k, ctx.q(2))
        den = _poch(ctx, ctx.q(2), k, ctx.q(2)) * _poch(ctx, -ctx.q(1), 2 * k, ctx.q(1))
        return num / den

    return BaileyPair("bp14", alpha, beta, 2)


_SEEDS = {
    "posdefpair2": _posdefpair2,
    "indefpair1": _indefpair1,
    "indefpair2": _indefpair2,
    "indefpair4": _indefpair4,
    "bp14": _bp14,
}
_ALIASES = {"BP1.4": "bp14", "bp1.4": "bp14"}
SEED_IDS = tuple(_SEEDS)


def seed_pair(seed_id: str) -> BaileyPair:
    """A fresh instance of one of the five seed pairs (memo not shared)."""
    key = _ALIASES.get(seed_id, seed_id)
    try:
        return _SEEDS[key]()
    except KeyError:
        raise UnknownPairError(seed_id) from None


def lift_to_q2(pair: BaileyPair) -> BaileyPair:
    """Re-express a base-1 pair through alpha_n(q^2), beta_n(q^2) (a base-2 pair)."""
    if pair.base_exponent != 1:
        raise BaseExponentError(f"{pair.label} is already in base q^2")
    return BaileyPair(
        f"{pair.label}(q^2)",
        lambda ctx, n: pair.alpha(_squared(ctx), n),
        lambda ctx, n: pair.beta(_squared(ctx), n),
        2,
    )


# ---------------------------------------------------------------- pair verification


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {"check": self.name, "status": "pass" if self.passed else "fail",
                "checked": self.checked, "failures": [str(f) for f in self.failures]}


def _check_point(q, s: int, n_max: int):
    q = Fraction(q)
    if q == 0:
        raise DenominatorVanishingError("q = 0 is not a valid sample point")
    Q = q**s
    if Q in (1, -1):
        raise DenominatorVanishingError(f"(q^{s}; q^{s})_k vanishes at q = {q}")
    return RationalPoint(q)


def relation_beta(pair: BaileyPair, ctx, n: int):
    """beta_n from the defining sum over alpha_k / ((Q;Q)_{n-k} (Q^2;Q)_{n+k})."""
    s = pair.base_exponent
    Q = _Q(ctx, s, 1)
    total = ctx.zero
    for k in range(n + 1):
        total = total + pair.alpha(ctx, k) / (_poch(ctx, Q, n - k, Q) * _poch(ctx, _Q(ctx, s, 2), n + k, Q))
    return total


def relation_beta_reversed(pair: BaileyPair, ctx, n: int):
    """beta_n from the reversed-Pochhammer form of the defining relation."""
    s = pair.base_exponent
    Q = _Q(ctx, s, 1)
    pre = ctx.one / (_poch(ctx, Q, n, Q) * _poch(ctx, _Q(ctx, s, 2), n, Q))
    total = ctx.zero
    for k in range(n + 1):
        num = _poch(ctx, _Q(ctx, s, -n), k, Q) * _sgn(k) * _Q(ctx, s, n * k - k * (k - 1) // 2)
        total = total + num / _poch(ctx, _Q(ctx, s, n + 2), k, Q) * pair.alpha(ctx, k)
    return pre * total


def verify_pair(pair: BaileyPair, n_max: int = 8, sample_points: Iterable = DEFAULT_POINTS) -> CheckReport:
    """Check both forms of the defining relation for n <= n_max at each sample point."""
    ctxs = [_check_point(p, pair.base_exponent, n_max) for p in sample_points]
    report = CheckReport(f"verify_pair:{pair.label}", True)
    for ctx in ctxs:
        for n in range(n_max + 1):
            b = pair.beta(ctx, n)
            r1 = relation_beta(pair, ctx, n)
            r2 = relation_beta_reversed(pair, ctx, n)
            report.checked += 1
            if not (b == r1 == r2):
                report.passed = False
                report.failures.append((ctx.value, n, b, r1, r2))
    return report


# ---------------------------------------------------------------- Bailey lemma steps


@dataclass(frozen=True)
class Monomial:
    """coeff * Q**exponent, Q being the base of the pair it acts on."""

    coeff: Fraction
    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff == 0:
            raise ValueError("monomial coefficient must be nonzero")

    def value(self, ctx, s: int):
        return ctx.scalar(self.coeff) * _Q(ctx, s, self.exponent)


STEP_KINDS = ("general", "bc_to_infinity", "bc_to_zero", "base_change_D1", "base_change_D4")


@dataclass(frozen=True)
class ChainStep:
    kind: str
    b: Optional[Monomial] = None
    c: Optional[Monomial] = None
    beta_form: str = "sum"  # "sum" or "reversed" for the general step

    def __post_init__(self):
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.kind == "general" and (self.b is None or self.c is None):
            raise ValueError("the general step needs b and c")
        if self.beta_form not in ("sum", "reversed"):
            raise ValueError("beta_form must be 'sum' or 'reversed'")


def _general(pair: BaileyPair, step: ChainStep) -> BaileyPair:
    s = pair.base_exponent

    def parts(ctx):
        Q = _Q(ctx, s, 1)
        Q2 = _Q(ctx, s, 2)
        b = step.b.value(ctx, s)
        c = step.c.value(ctx, s)
        return Q, Q2, b, c, Q2 / (b * c)

    def alpha(ctx, n):
        Q, Q2, b, c, r = parts(ctx)
        num = _poch(ctx, b, n, Q) * _poch(ctx, c, n, Q) * r**n
        return num / (_poch(ctx, Q2 / b, n, Q) * _poch(ctx, Q2 / c, n, Q)) * pair.alpha(ctx, n)

    def beta_sum(ctx, n):
        Q, Q2, b, c, r = parts(ctx)
        total = ctx.zero
        for k in range(n + 1):
            t = _poch(ctx, b, k, Q) * _poch(ctx, c, k, Q) * _poch(ctx, r, n - k, Q) * r**k
            total = total + t / _poch(ctx, Q, n - k, Q) * pair.beta(ctx, k)
        return total / (_poch(ctx, Q2 / b, n, Q) * _poch(ctx, Q2 / c, n, Q))

    def beta_reversed(ctx, n):
        Q, Q2, b, c, r = parts(ctx)
        pre = _poch(ctx, r, n, Q) / (_poch(ctx, Q, n, Q) * _poch(ctx, Q2 / b, n, Q) * _poch(ctx, Q2 / c, n, Q))
        total = ctx.zero
        shifted = b * c * _Q(ctx, s, -n - 1)
        for k in range(n + 1):
            t = _poch(ctx, b, k, Q) * _poch(ctx, c, k, Q) * _poch(ctx, _Q(ctx, s, -n), k, Q) * _Q(ctx, s, k)
            total = total + t / _poch(ctx, shifted, k, Q) * pair.beta(ctx, k)
        return pre * total

    beta = beta_sum if step.beta_form == "sum" else beta_reversed
    return BaileyPair(f"{pair.label}>general", alpha, beta, s)


def _bc_infinity(pair: BaileyPair) -> BaileyPair:
    s = pair.base_exponent

    def alpha(ctx, n):
        return _Q(ctx, s, n * n + n) * pair.alpha(ctx, n)

    def beta(ctx, n):
        Q = _Q(ctx, s, 1)
        total = ctx.zero
        for k in range(n + 1):
            total = total + _Q(ctx, s, k * k + k) / _poch(ctx, Q, n - k, Q) * pair.beta(ctx, k)
        return total

    return BaileyPair(f"{pair.label}>inf", alpha, beta, s)


def _bc_zero(pair: BaileyPair) -> BaileyPair:
    s = pair.base_exponent

    def alpha(ctx, n):
        return _Q(ctx, s, -n * n - n) * pair.alpha(ctx, n)

    def beta(ctx, n):
        Q = _Q(ctx, s, 1)
        total = ctx.zero
        for k in range(n + 1):
            t = _Q(ctx, s, _tri(k) - n * k) * _sgn(k)
            total = total + t / _poch(ctx, Q, n - k, Q) * pair.beta(ctx, k)
        return _sgn(n) * _Q(ctx, s, -_tri(n) - n) * total

    return BaileyPair(f"{pair.label}>zero", alpha, beta, s)


def _base_change(pair: BaileyPair, kind: str) -> BaileyPair:
    if pair.base_exponent != 2:
        raise BaseExponentError(
            f"{kind} consumes alpha_n(q^2), beta_n(q^2); {pair.label} is a base-q pair (use lift_to_q2)"
        )
    d4 = kind == "base_change_D4"

    def alpha(ctx, n):
        a = pair.alpha(ctx, n)
        if d4:
            return (ctx.one + ctx.q(1)) / (ctx.one + ctx.q(2 * n + 1)) * ctx.q(n) * a
        return a

    def beta(ctx, n):
        q = ctx.q(1)
        total = ctx.zero
        for k in range(n + 1):
            if d4:
                t = _poch(ctx, -q, 2 * k, q) * ctx.q(k)
            else:
                t = _poch(ctx, -ctx.q(2), 2 * k, q) * ctx.q(n - k)
            total = total + t / _poch(ctx, ctx.q(2), n - k, ctx.q(2)) * pair.beta(ctx, k)
        return total

    return BaileyPair(f"{pair.label}>{'D4' if d4 else 'D1'}", alpha, beta, 1)


def apply_step(pair: BaileyPair, step: ChainStep | str) -> BaileyPair:
    """Transform a Bailey pair by one Bailey-lemma step or base change."""
    if isinstance(step, str):
        step = ChainStep(step)
    if step.kind == "general":
        return _general(pair, step)
    if step.kind == "bc_to_infinity":
        return _bc_infinity(pair)
    if step.kind == "bc_to_zero":
        return _bc_zero(pair)
    return _base_change(pair, step.kind)


# ---------------------------------------------------------------- chains

CHAIN_STEP = {
    "posdefpair2": "bc_to_zero",
    "indefpair1": "bc_to_infinity",
    "indefpair2": "bc_to_infinity",
    "indefpair4": "bc_to_infinity",
    "bp14": "bc_to_infinity",
}


def chain_pair(seed_id: str, m: int) -> BaileyPair:
    """The seed after m - 1 applications of its chain step."""
    seed_id = _ALIASES.get(seed_id, seed_id)
    pair = seed_pair(seed_id)
    for _ in range(m - 1):
        pair = apply_step(pair, CHAIN_STEP[seed_id])
    return pair


def explicit_chain_beta(seed_id: str, m: int, n: int, ctx):
    """beta_n of the (m-1)-fold chain from its closed multisum over n = n_m >= ... >= n_1 >= 0."""
    seed_id = _ALIASES.get(seed_id, seed_id)
    if seed_id not in _SEEDS:
        raise UnknownPairError(seed_id)
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    s = 2 if seed_id in ("indefpair4", "bp14") else 1
    q = ctx.q(1)
    Q = ctx.q(s)
    rows = q_binomial_rows(n, s, ctx)

    def only_top(y):
        return ctx.one if y == n else ctx.zero

    if seed_id == "posdefpair2":
        inner = chain_sum(
            ctx, m, n,
            lambda x, y: ctx.q(-x * y - x) * rows[y][x],
            top_weight=only_top,
            bottom_weight=lambda x: ctx.q(_tri(x)) * _sgn(x),
        )
        return _sgn(n) * ctx.q(-_tri(n) - n) / _poch(ctx, q, n, q) * inner

    if seed_id == "indefpair1":
        bottom = lambda x: _poch(ctx, q, x, q)
    elif seed_id == "indefpair2":
        bottom = lambda x: _poch(ctx, q, x, q) / _poch(ctx, -q, x, q)
    elif seed_id == "indefpair4":
        bottom = lambda x: _poch(ctx, Q, x, Q) / _poch(ctx, -ctx.q(2), 2 * x, q)
    else:
        bottom = lambda x: _poch(ctx, q, x, ctx.q(2)) / _poch(ctx, -q, 2 * x, q)
    inner = chain_sum(
        ctx, m, n,
        lambda x, y: ctx.q(s * (x * x + x)) * rows[y][x],
        top_weight=only_top,
        bottom_weight=bottom,
    )
    return inner / _poch(ctx, Q, n, Q)


def chain_alpha_closed(seed_id: str, m: int, n: int, ctx):
    """Closed form of alpha_n after m - 1 chain steps."""
    seed_id = _ALIASES.get(seed_id, seed_id)
    if seed_id == "indefpair1":
        return ctx.q((m + 1) * n * n + m * n) * _geom(ctx, 2 * n + 1) * _theta_j(ctx, n, lambda j: -_pent(j))
    if seed_id == "posdefpair2":
        return ctx.q(-(m - 1) * n * n - m * n) * _geom(ctx, 2 * n + 1) * _theta_j(ctx, n, _pent)
    if seed_id == "indefpair2":
        e = _pent(n) + (m - 1) * (n * n + n)
        return ctx.q(e) * _geom(ctx, 2 * n + 1) * _theta_j(ctx, n, lambda j: -j * j)
    if seed_id == "indefpair4":
        e = 2 * m * n * n + (2 * m - 1) * n
        return ctx.q(e) * _geom(ctx, 2 * n + 1) * _theta_j(ctx, n, lambda j: -j * j)
    if seed_id == "bp14":
        e = 2 * n * n + (2 * m - 2) * (n * n + n)
        return ctx.q(e) * _geom(ctx, 2 * n + 1, 2) * _theta_j(ctx, n, lambda j: -j * j)
    raise UnknownPairError(seed_id)


# ---------------------------------------------------------------- key lemmas

KEY_LEMMAS = ("KL1", "KL2", "KL3", "b0cq", "b0c-q", "binftyc-q")


def _kl1(pair, n, ctx, b, c):
    s = pair.base_exponent
    Q, Q2 = _Q(ctx, s, 1), _Q(ctx, s, 2)
    bv, cv = b.value(ctx, s), c.value(ctx, s)
    r = Q2 / (bv * cv)
    m1 = _Q(ctx, s, 1 - n)
    pre = (_poch(ctx, r, n - 1, Q) * _poch(ctx, Q2, n - 1, Q)
           / (_poch(ctx, Q2 / bv, n - 1, Q) * _poch(ctx, Q2 / cv, n - 1, Q)))
    left = ctx.zero
    right = ctx.zero
    for k in range(n):
        bc_k = _poch(ctx, bv, k, Q) * _poch(ctx, cv, k, Q)
        lt = bc_k * _poch(ctx, m1, k, Q) * _Q(ctx, s, k) / _poch(ctx, bv * cv * _Q(ctx, s, -n), k, Q)
        left = left + lt * pair.beta(ctx, k)
        num = _poch(ctx, m1, k, Q) * bc_k * _Q(ctx, s, n * k - _tri(k)) * (-r) ** k
        den = _poch(ctx, _Q(ctx, s, 1 + n), k, Q) * _poch(ctx, Q2 / bv, k, Q) * _poch(ctx, Q2 / cv, k, Q)
        right = right + num / den * pair.alpha(ctx, k)
    return pre * left, right


def _specialization(which, pair, n, ctx):
    s = pair.base_exponent
    Q = _Q(ctx, s, 1)
    m1 = _Q(ctx, s, 1 - n)
    left = ctx.zero
    right = ctx.zero
    for k in range(n):
        ratio = _poch(ctx, m1, k, Q) / _poch(ctx, _Q(ctx, s, 1 + n), k, Q)
        if which == "b0cq":
            lt = _poch(ctx, Q, k, Q) * _poch(ctx, m1, k, Q) * _Q(ctx, s, k + 1)
            rt = ratio * _Q(ctx, s, n * k - k * k - k)
        elif which == "b0c-q":
            lt = _poch(ctx, -Q, k, Q) * _poch(ctx, m1, k, Q) * _Q(ctx, s, k + 1)
            rt = ratio * _Q(ctx, s, n * k - k * k - k) * _sgn(k)
        else:  # binftyc-q
            lt = _poch(ctx, -Q, k, Q) * _poch(ctx, m1, k, Q) * _sgn(k) * _Q(ctx, s, n * k)
            rt = ratio * _Q(ctx, s, n * k) * _sgn(k)
        left = left + lt * pair.beta(ctx, k)
        right = right + rt * pair.alpha(ctx, k)
    if which == "b0cq":
        left = left * (ctx.one - _Q(ctx, s, n)) / (ctx.one - Q)
        right = right * _Q(ctx, s, n)
    else:
        pre = _poch(ctx, -Q, n - 1, Q) / _poch(ctx, _Q(ctx, s, 2), n - 1, Q)
        if which == "b0c-q":
            pre = -(_sgn(n) * _Q(ctx, s, n)) * pre
        right = right * pre
    return left, right


def _kl23(which, pair, n, ctx):
    if pair.base_exponent != 2:
        raise BaseExponentError(f"{which} consumes alpha_k(q^2), beta_k(q^2); {pair.label} is a base-q pair")
    q = ctx.q(1)
    q2 = ctx.q(2)
    m1 = ctx.q(1 - n)
    left = ctx.zero
    right = ctx.zero
    for k in range(n):
        p2 = _poch(ctx, ctx.q(2 - 2 * n), k, q2) * _sgn(k)
        ratio = _poch(ctx, m1, k, q) / _poch(ctx, ctx.q(1 + n), k, q) * _sgn(k)
        if which == "KL2":
            lt = _poch(ctx, -q2, 2 * k, q) * p2 * ctx.q(n * (2 * k + 1) - k * k - 2 * k - 1)
            rt = ratio * ctx.q(n * k - _tri(k))
        else:
            lt = _poch(ctx, -q, 2 * k, q) * p2 * ctx.q(2 * n * k - k * k)
            rt = ratio * (ctx.one + q) / (ctx.one + ctx.q(2 * k + 1)) * ctx.q(n * k - k * (k - 1) // 2)
        left = left + lt * pair.beta(ctx, k)
        right = right + rt * pair.alpha(ctx, k)
    pre = _poch(ctx, -q, n - 1, q) / _poch(ctx, q2, n - 1, q)
    return left, pre * right


def key_lemma_eval(which: str, pair: BaileyPair, n: int, ctx, b: Monomial | None = None,
                   c: Monomial | None = None):
    """Both sides of a key lemma (or one of its b, c specializations) at index n >= 1."""
    if n < 1:
        raise ValueError("key lemmas are stated for n >= 1")
    try:
        if which == "KL1":
            if b is None or c is None:
                raise ValueError("KL1 needs monomial parameters b and c")
            return _kl1(pair, n, ctx, b, c)
        if which in ("b0cq", "b0c-q", "binftyc-q"):
            return _specialization(which, pair, n, ctx)
        if which in ("KL2", "KL3"):
            return _kl23(which, pair, n, ctx)
    except ZeroDivisionError as exc:
        if isinstance(exc, DenominatorVanishingError):
            raise
        raise DenominatorVanishingError(f"{which} has a vanishing denominator at {ctx}") from exc
    raise ValueError(f"unknown key lemma {which!r}")
