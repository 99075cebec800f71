"""Catalog of quantum q-series identities evaluated exactly in Q(zeta_N).

Each entry pairs two independent side evaluators.  Series sides are summed
with every index capped at N - 1 and cut short once a Pochhammer prefix
vanishes; theta sides go through :func:`qbailey.qprims.theta_double_sum`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .cyclotomic import CyclotomicNumber, CyclotomicRing, cyclotomic_ring, inversion_map
from .errors import ApplicabilityError, ParameterRangeError, UnknownIdentityError
from .multisum import chain_sum, link_matrix
from .qprims import PochArgument, PrefixStream, ThetaSpec, prefix_table, q_binomial_rows, theta_double_sum

__all__ = [
    "IdentitySpec",
    "VerificationReport",
    "catalog",
    "get_identity",
    "evaluate_side",
    "verify_identity",
    "reduction_check_m1",
    "inversion_map",
]

Side = Callable[[CyclotomicRing, int], CyclotomicNumber]


# ---------------------------------------------------------------- single sums


def _series(ring: CyclotomicRing, arg: PochArgument, term, cap: Optional[int] = None, truncate: bool = True):
    """sum_{n=0}^{cap} term(n, (a)_n), cap defaulting to N - 1."""
    cap = ring.N - 1 if cap is None else cap
    stream = PrefixStream(arg, ring)
    total = ring.zero
    for n in range(cap + 1):
        p = stream[n]
        if truncate and stream.first_zero is not None and n >= stream.first_zero:
            break
        total = total + term(n, p)
    return total


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def cohen_lhs(ring, cap=None, truncate=True):
    """sum (-1)^n (q^-1; q^-1)_n"""
    return _series(ring, PochArgument(1, -1, -1), lambda n, p: p * _sign(n), cap, truncate)


def q2_series(ring, cap=None, truncate=True):
    """sum (q^2; q^2)_n q^(n+1)"""
    return _series(ring, PochArgument(1, 2, 2), lambda n, p: p * ring.q(n + 1), cap, truncate)


def neg_inverse_series(ring, cap=None, truncate=True):
    """-sum (-q^-1; q^-1)_n"""
    return -_series(ring, PochArgument(-1, -1, -1), lambda n, p: p, cap, truncate)


def odd_base_series(ring, cap=None, truncate=True):
    """sum (q; q^2)_n"""
    return _series(ring, PochArgument(1, 1, 2), lambda n, p: p, cap, truncate)


def bopr_lhs(ring, cap=None, truncate=True):
    """sum (q^-1; q^-1)_n"""
    return _series(ring, PochArgument(1, -1, -1), lambda n, p: p, cap, truncate)


def bopr_rhs(ring, cap=None, truncate=True):
    """sum (q)_n^2 q^(n+1)"""
    return _series(ring, PochArgument(1, 1, 1), lambda n, p: p * p * ring.q(n + 1), cap, truncate)


def poch_sum(ring, cap=None, truncate=True):
    """sum (q)_k"""
    return _series(ring, PochArgument(1, 1, 1), lambda n, p: p, cap, truncate)


def alt_poch_sum(ring, cap=None, truncate=True):
    """sum (q)_k (-1)^k"""
    return _series(ring, PochArgument(1, 1, 1), lambda n, p: p * _sign(n), cap, truncate)


def neg_poch_sum(ring, cap=None, truncate=True):
    """sum (-q)_k"""
    return _series(ring, PochArgument(-1, 1, 1), lambda n, p: p, cap, truncate)


CLASSIC_SERIES = {
    "cohen_lhs": cohen_lhs,
    "q2_series": q2_series,
    "neg_inverse_series": neg_inverse_series,
    "odd_base_series": odd_base_series,
    "bopr_lhs": bopr_lhs,
    "bopr_rhs": bopr_rhs,
    "poch_sum": poch_sum,
    "alt_poch_sum": alt_poch_sum,
    "neg_poch_sum": neg_poch_sum,
}


# ---------------------------------------------------------------- multisums


def _link(ring: CyclotomicRing, s: int):
    """Matrix of q^(s(x^2+x)) [y, x]_{q^s}."""
    top = ring.N - 1
    rows = q_binomial_rows(top, s, ring)
    return link_matrix(ring, top, lambda x, y: ring.q(s * (x * x + x)) * rows[y][x])


def _shifted_poch(ring: CyclotomicRing, shift: Callable[[int], int], step: int):
    """coupled(y, n1) = (-q^{shift(n1)}; q)_{step*(y - n1)}, tabulated lazily per n1."""
    top = ring.N - 1
    tables: dict[int, list] = {}

    def coupled(y, n1):
        t = tables.get(n1)
        if t is None:
            t = prefix_table(PochArgument(-1, shift(n1), 1), ring, step * (top - n1))
            tables[n1] = t
        return t[step * (y - n1)]

    return coupled


def _tri(n: int) -> int:
    return n * (n + 1) // 2


def thm1_lhs(ring, m):
    top = ring.N - 1
    qp = prefix_table(PochArgument(1, 1, 1), ring, top)
    return chain_sum(ring, m, top, matrix=_link(ring, 1) if m > 1 else None,
                     top_weight=lambda n: qp[n],
                     bottom_weight=lambda n: ring.q(-_tri(n)) * _sign(n))


def thm1_rhs(ring, m):
    top = ring.N - 1
    qp = prefix_table(PochArgument(1, 1, 1), ring, top)
    return chain_sum(ring, m, top, matrix=_link(ring, 1) if m > 1 else None,
                     top_weight=lambda n: qp[n] * ring.q(n + 1),
                     bottom_weight=lambda n: qp[n])


def thm2_lhs(ring, m):
    top = ring.N - 1
    qp = prefix_table(PochArgument(1, 1, 1), ring, top)
    mq = prefix_table(PochArgument(-1, 1, 1), ring, top)
    return chain_sum(ring, m, top, matrix=_link(ring, 1) if m > 1 else None,
                     top_weight=lambda n: mq[n] * ring.q(n + 1),
                     bottom_weight=lambda n: qp[n])


def thm2_rhs(ring, m):
    top = ring.N - 1
    mq = prefix_table(PochArgument(-1, 1, 1), ring, top)
    return -chain_sum(ring, m, top, matrix=_link(ring, 1) if m > 1 else None,
                      top_weight=lambda n: mq[n] * _sign(n),
                      bottom_weight=lambda n: ring.q(-_tri(n)) * _sign(n))


def short_chain_lhs(ring, length):
    """sum (-q^{n_1+1})_{n_L - n_1} (-1)^{n_L} (q)_{n_1} prod q^{n_i^2+n_i} [n_{i+1}, n_i]"""
    top = ring.N - 1
    qp = prefix_table(PochArgument(1, 1, 1), ring, top)
    return chain_sum(ring, length, top, matrix=_link(ring, 1) if length > 1 else None,
                     top_weight=lambda n: ring.one * _sign(n),
                     bottom_weight=lambda n: qp[n],
                     coupled=_shifted_poch(ring, lambda n1: n1 + 1, 1))


def thm3_lhs(ring, m):
    return short_chain_lhs(ring, 2 * m - 1)


def thm3_rhs(ring, m):
    """sum (-q^{2n_1+2})_{2n_m-2n_1} (-1)^{n_m} q^{-(n_m+1)^2} (q^2;q^2)_{n_1} prod ..."""
    top = ring.N - 1
    q2 = prefix_table(PochArgument(1, 2, 2), ring, top)
    return chain_sum(ring, m, top, matrix=_link(ring, 2) if m > 1 else None,
                     top_weight=lambda n: ring.q(-(n + 1) ** 2) * _sign(n),
                     bottom_weight=lambda n: q2[n],
                     coupled=_shifted_poch(ring, lambda n1: 2 * n1 + 2, 2))


def thm4_rhs(ring, m):
    """sum (-q^{2n_1+1})_{2n_m-2n_1} (-1)^{n_m} q^{-n_m^2} (q;q^2)_{n_1} prod ..."""
    top = ring.N - 1
    qo = prefix_table(PochArgument(1, 1, 2), ring, top)
    return chain_sum(ring, m, top, matrix=_link(ring, 2) if m > 1 else None,
                     top_weight=lambda n: ring.q(-n * n) * _sign(n),
                     bottom_weight=lambda n: qo[n],
                     coupled=_shifted_poch(ring, lambda n1: 2 * n1 + 1, 2))


# ---------------------------------------------------------------- theta sides

PENT_K = (Fraction(3, 2), Fraction(1, 2))


def _parity_theta(N, a2, a1, jq, esign, odd_scalar, even_scalar) -> ThetaSpec:
    if N % 2:
        return ThetaSpec(a2, a1, jq, esign, "j+k", "quadratic", "sgn", odd_scalar)
    return ThetaSpec(a2, a1, jq, esign, "j+k", "unweighted", "sgn", even_scalar)


def theta_prop_bopr_a(N, m):
    return ThetaSpec(1, 0, "pentagonal", -1, "j", "quadratic", "none", Fraction(-1, N))


def theta_prop_bopr_b(N, m):
    return ThetaSpec(1, 0, "pentagonal", 1, "j", "quadratic", "none", Fraction(-1, N))


def theta_prop_cohenex1_a(N, m):
    return _parity_theta(N, 1, 0, "pentagonal", 1, Fraction(-1, N * N), Fraction(-1, 4))


def theta_prop_cohenex1_b(N, m):
    return ThetaSpec(1, 0, "pentagonal", -1, "j+k", "unweighted", "sgn", Fraction(1, 4))


def theta_prop_cohen_a(N, m):
    return _parity_theta(N, *PENT_K, "square", 1, Fraction(-1, N * N), Fraction(1, 4))


def theta_prop_cohen_b(N, m):
    return _parity_theta(N, *PENT_K, "square", -1, Fraction(-1, N * N), Fraction(1, 4))


def theta_prop_cohenex2(N, m):
    return ThetaSpec(*PENT_K, "square", -1, "j+k", "quadratic", "sgn", Fraction(-1, N * N))


def theta_halfway_thm1(N, m):
    return ThetaSpec(m, m - 1, "pentagonal", 1, "j", "quadratic", "none", Fraction(-1, N))


def theta_halfway_thm2(N, m):
    # overall factor -1/4: the +1/4 variant equals the exact negation of the series side
    return ThetaSpec(m, m - 1, "pentagonal", 1, "j+k", "unweighted", "sgn", Fraction(-1, 4))


def theta_halfway_thm3_a(N, m):
    a2, a1 = PENT_K[0] + (m - 1), PENT_K[1] + (m - 1)
    return _parity_theta(N, a2, a1, "square", 1, Fraction(-1, N * N), Fraction(1, 4))


def theta_halfway_thm3_b(N, m):
    a2, a1 = PENT_K[0] + (2 * m - 2), PENT_K[1] + (2 * m - 2)
    return _parity_theta(N, a2, a1, "square", 1, Fraction(-1, N * N), Fraction(1, 4))


def theta_halfway_thm4(N, m):
    a2, a1 = PENT_K[0] + (2 * m - 2), PENT_K[1] + (2 * m - 2)
    return ThetaSpec(a2, a1, "square", 1, "j+k", "quadratic", "sgn", Fraction(-1, N * N))


def _theta_side(make_spec):
    return lambda ring, m: theta_double_sum(make_spec(ring.N, m), ring)


def _fixed(fn):
    return lambda ring, m: fn(ring)


# ---------------------------------------------------------------- catalog


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    side_a: Side
    side_b: Side
    parity: str = "any"
    m_fixed: bool = True
    theta: Optional[Callable[[int, int], ThetaSpec]] = None
    description: str = ""

    def applicable(self, N: int) -> bool:
        if N < 1:
            return False
        if self.parity == "even":
            return N % 2 == 0
        if self.parity == "odd":
            return N % 2 == 1
        return True

    def m_ok(self, m: int) -> bool:
        return m == 1 if self.m_fixed else m >= 1

    @property
    def m_range(self) -> tuple[int, Optional[int]]:
        return (1, 1) if self.m_fixed else (1, None)


def _build() -> tuple[IdentitySpec, ...]:
    I = IdentitySpec
    return (
        I("cohen-main", _fixed(cohen_lhs), _fixed(q2_series), "any",
          description="sum (-1)^n (q^-1;q^-1)_n = sum (q^2;q^2)_n q^(n+1)"),
        I("cohen-even", _fixed(q2_series), _fixed(neg_inverse_series), "even",
          description="sum (q^2;q^2)_n q^(n+1) = -sum (-q^-1;q^-1)_n"),
        I("cohen-odd", _fixed(q2_series), _fixed(odd_base_series), "odd",
          description="sum (q^2;q^2)_n q^(n+1) = sum (q;q^2)_n"),
        I("bopr", _fixed(bopr_lhs), _fixed(bopr_rhs), "any",
          description="sum (q^-1;q^-1)_n = sum (q)_n^2 q^(n+1)"),
        I("thm1", thm1_lhs, thm1_rhs, "any", False,
          description="m-fold Bailey-chain generalization of bopr"),
        I("thm2", thm2_lhs, thm2_rhs, "even", False,
          description="m-fold Bailey-chain generalization of cohen-even"),
        I("thm3", thm3_lhs, thm3_rhs, "any", False,
          description="(2m-1)-fold versus m-fold multisum generalizing cohen-main"),
        I("thm4", thm3_rhs, thm4_rhs, "odd", False,
          description="m-fold multisums generalizing cohen-odd"),
        I("prop-bopr-a", _fixed(poch_sum), _theta_side(theta_prop_bopr_a), "any",
          theta=theta_prop_bopr_a, description="sum (q)_k as a weighted theta sum"),
        I("prop-bopr-b", _fixed(bopr_rhs), _theta_side(theta_prop_bopr_b), "any",
          theta=theta_prop_bopr_b, description="sum (q)_k^2 q^(k+1) as a weighted theta sum"),
        I("prop-cohenex1-a", _fixed(q2_series), _theta_side(theta_prop_cohenex1_a), "any",
          theta=theta_prop_cohenex1_a, description="sum (q^2;q^2)_k q^(k+1), parity-split theta sum"),
        I("prop-cohenex1-b", _fixed(neg_poch_sum), _theta_side(theta_prop_cohenex1_b), "even",
          theta=theta_prop_cohenex1_b, description="sum (-q)_k at even roots"),
        I("prop-cohen-a", _fixed(alt_poch_sum), _theta_side(theta_prop_cohen_a), "any",
          theta=theta_prop_cohen_a, description="sum (q)_k (-1)^k, parity-split theta sum"),
        I("prop-cohen-b", _fixed(q2_series), _theta_side(theta_prop_cohen_b), "any",
          theta=theta_prop_cohen_b, description="sum (q^2;q^2)_k q^(k+1), inverted theta sum"),
        I("prop-cohenex2", _fixed(odd_base_series), _theta_side(theta_prop_cohenex2), "odd",
          theta=theta_prop_cohenex2, description="sum (q;q^2)_n at odd roots"),
        I("halfway-thm1", thm1_rhs, _theta_side(theta_halfway_thm1), "any", False,
          theta=theta_halfway_thm1, description="right multisum of thm1 as a theta sum"),
        I("halfway-thm2", thm2_lhs, _theta_side(theta_halfway_thm2), "even", False,
          theta=theta_halfway_thm2, description="left multisum of thm2 as a theta sum"),
        I("halfway-thm3-a", short_chain_lhs, _theta_side(theta_halfway_thm3_a), "any", False,
          theta=theta_halfway_thm3_a, description="m-fold left chain of thm3 as a theta sum"),
        I("halfway-thm3-b", thm3_rhs, _theta_side(theta_halfway_thm3_b), "any", False,
          theta=theta_halfway_thm3_b, description="right multisum of thm3 as a theta sum"),
        I("halfway-thm4", thm4_rhs, _theta_side(theta_halfway_thm4), "odd", False,
          theta=theta_halfway_thm4, description="right multisum of thm4 as a theta sum"),
    )


_CATALOG = _build()
_BY_ID = {spec.id: spec for spec in _CATALOG}


def catalog() -> list[IdentitySpec]:
    return list(_CATALOG)


def get_identity(identity_id: str) -> IdentitySpec:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise UnknownIdentityError(identity_id) from None


def _spec(spec) -> IdentitySpec:
    return get_identity(spec) if isinstance(spec, str) else spec


def evaluate_side(spec, side: str, N: int, m: int = 1) -> CyclotomicNumber:
    spec = _spec(spec)
    if not spec.applicable(N):
        raise ApplicabilityError(f"{spec.id} is not asserted for N={N} ({spec.parity} N only)")
    if not spec.m_ok(m):
        raise ParameterRangeError(f"{spec.id} does not accept m={m}")
    ring = cyclotomic_ring(N)
    if side.upper() == "A":
        return spec.side_a(ring, m)
    if side.upper() == "B":
        return spec.side_b(ring, m)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


# ---------------------------------------------------------------- reports


@dataclass
class VerificationReport:
    id: str
    N: int
    m: int
    status: str
    side_a: Optional[CyclotomicNumber] = None
    side_b: Optional[CyclotomicNumber] = None
    elapsed: float = 0.0
    message: str = ""
    difference: Optional[CyclotomicNumber] = field(default=None)

    @property
    def sort_key(self):
        return (self.id, self.N, self.m)

    def to_json_obj(self, timings: bool = False) -> dict:
        out: dict = {"id": self.id, "N": self.N, "m": self.m, "status": self.status}
        if self.side_a is not None:
            out["side_A"] = self.side_a.to_json_obj()
        if self.side_b is not None:
            out["side_B"] = self.side_b.to_json_obj()
        if self.difference is not None:
            out["difference"] = self.difference.to_json_obj()
        if self.message:
            out["message"] = self.message
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def verify_identity(spec, N: int, m: int = 1) -> VerificationReport:
    """Evaluate both sides exactly and compare."""
    spec = _spec(spec)
    if not spec.applicable(N):
        return VerificationReport(spec.id, N, m, "skipped-inapplicable",
                                  message=f"requires {spec.parity} N")
    if not spec.m_ok(m):
        return VerificationReport(spec.id, N, m, "skipped-inapplicable",
                                  message=f"m={m} outside parameter range")
    t0 = time.perf_counter()
    try:
        a = evaluate_side(spec, "A", N, m)
        b = evaluate_side(spec, "B", N, m)
    except Exception as exc:  # evaluation fault, not a mathematical mismatch
        return VerificationReport(spec.id, N, m, "error", elapsed=time.perf_counter() - t0,
                                  message=f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    if a == b:
        return VerificationReport(spec.id, N, m, "pass", a, b, elapsed)
    return VerificationReport(spec.id, N, m, "fail", a, b, elapsed, difference=a - b,
                              message="sides differ")


# ---------------------------------------------------------------- m = 1 reductions

_REDUCTIONS = {
    "thm1": ("bopr", False),
    "thm2": ("cohen-even", False),
    "thm3": ("cohen-main", True),
    "thm4": ("cohen-odd", True),
}


@dataclass
class ReductionReport:
    theorem: str
    classic: str
    N: int
    passed: bool
    details: dict


def reduction_check_m1(theorem_id: str, N: int) -> ReductionReport:
    """Compare the m = 1 case of a theorem with the classical identity it generalizes.

    thm3 and thm4 match their classical counterparts only after q -> 1/q,
    realized as the automorphism zeta -> zeta^-1.
    """
    if theorem_id not in _REDUCTIONS:
        raise UnknownIdentityError(theorem_id)
    classic, invert = _REDUCTIONS[theorem_id]
    thm = get_identity(theorem_id)
    if not thm.applicable(N):
        raise ApplicabilityError(f"{theorem_id} is not asserted for N={N}")
    details = {}
    ok = True
    for side in ("A", "B"):
        t = evaluate_side(thm, side, N, 1)
        if invert:
            t = inversion_map(t)
        c = evaluate_side(classic, side, N, 1)
        details[side] = (t, c)
        ok = ok and t == c
    return ReductionReport(theorem_id, classic, N, ok, details)
