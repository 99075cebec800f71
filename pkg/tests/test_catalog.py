import itertools
from fractions import Fraction

import pytest

from qbailey import catalog as cat
from qbailey.catalog import (catalog, evaluate_side, get_identity, reduction_check_m1, verify_identity)
from qbailey.cyclotomic import cyclotomic_ring, inversion_map
from qbailey.errors import ApplicabilityError, ParameterRangeError, UnknownIdentityError
from qbailey.qprims import PochArgument, pochhammer, q_binomial, theta_double_sum

import oracle
from conftest import to_complex

IDS = [s.id for s in catalog()]


def close(a, b, scale=1.0):
    return abs(a - b) < 1e-7 * max(1.0, abs(b), scale)


def test_catalog_contents():
    assert len(IDS) == 20 == len(set(IDS))
    assert {"cohen-main", "cohen-even", "cohen-odd", "bopr", "thm1", "thm2", "thm3", "thm4",
            "prop-bopr-a", "prop-bopr-b", "prop-cohenex1-a", "prop-cohenex1-b", "prop-cohen-a",
            "prop-cohen-b", "prop-cohenex2", "halfway-thm1", "halfway-thm2", "halfway-thm3-a",
            "halfway-thm3-b", "halfway-thm4"} == set(IDS)
    assert get_identity("cohen-even").parity == "even"
    assert get_identity("thm4").parity == "odd"
    assert get_identity("thm1").m_range == (1, None)
    with pytest.raises(UnknownIdentityError):
        get_identity("thm9")


def test_worked_values():
    ring4 = cyclotomic_ring(4)
    minus2_plus_i = ring4.from_coeffs([-2, 1])
    assert evaluate_side("cohen-main", "A", 4) == minus2_plus_i == evaluate_side("cohen-main", "B", 4)
    assert evaluate_side("bopr", "A", 1) == cyclotomic_ring(1).one
    ring3 = cyclotomic_ring(3)
    six_plus_w = ring3.scalar(6) + ring3.zeta
    assert evaluate_side("bopr", "A", 3) == six_plus_w == evaluate_side("bopr", "B", 3)
    assert evaluate_side("prop-bopr-a", "A", 2) == cyclotomic_ring(2).scalar(3)
    assert evaluate_side("prop-bopr-a", "B", 2) == cyclotomic_ring(2).scalar(3)
    # bopr at q = i is 8 + 3i, not the cohen-main value
    assert evaluate_side("bopr", "A", 4) == ring4.from_coeffs([8, 3])


def test_preconditions():
    with pytest.raises(ApplicabilityError):
        evaluate_side("cohen-even", "A", 3)
    with pytest.raises(ParameterRangeError):
        evaluate_side("bopr", "A", 5, m=2)
    with pytest.raises(ValueError):
        evaluate_side("bopr", "C", 5)


def test_verify_identity_records():
    assert verify_identity("cohen-main", 4).status == "pass"
    r = verify_identity("cohen-even", 3)
    assert r.status == "skipped-inapplicable" and r.side_a is None
    assert verify_identity("thm1", 5, 2).status == "pass"
    assert verify_identity("cohen-main", 4, 2).status == "skipped-inapplicable"


def test_mismatch_is_reported_with_values(monkeypatch):
    spec = get_identity("bopr")
    broken = cat.IdentitySpec("broken", spec.side_a, lambda ring, m: spec.side_b(ring, m) + 1)
    r = verify_identity(broken, 5)
    assert r.status == "fail" and r.side_a != r.side_b
    assert r.difference == r.side_a - r.side_b
    obj = r.to_json_obj()
    assert {"side_A", "side_B", "difference"} <= set(obj) and "elapsed" not in obj


def test_evaluation_fault_is_an_error_record():
    def boom(ring, m):
        raise ZeroDivisionError("bad")

    r = verify_identity(cat.IdentitySpec("boom", boom, boom), 3)
    assert r.status == "error" and "ZeroDivisionError" in r.message


# ---------------------------------------------------------------- independent float oracle

CLASSIC_ORACLE = {
    "cohen_lhs": lambda q, n: (-1) ** n * oracle.poch(1 / q, 1 / q, n),
    "q2_series": lambda q, n: oracle.poch(q**2, q**2, n) * q ** (n + 1),
    "neg_inverse_series": lambda q, n: -oracle.poch(-1 / q, 1 / q, n),
    "odd_base_series": lambda q, n: oracle.poch(q, q**2, n),
    "bopr_lhs": lambda q, n: oracle.poch(1 / q, 1 / q, n),
    "bopr_rhs": lambda q, n: oracle.poch(q, q, n) ** 2 * q ** (n + 1),
    "poch_sum": lambda q, n: oracle.poch(q, q, n),
    "alt_poch_sum": lambda q, n: oracle.poch(q, q, n) * (-1) ** n,
    "neg_poch_sum": lambda q, n: oracle.poch(-q, q, n),
}


@pytest.mark.parametrize("name", sorted(CLASSIC_ORACLE))
def test_classic_series_against_float_oracle(name):
    for N in range(1, 16):
        q = oracle.zeta(N)
        expect = sum(CLASSIC_ORACLE[name](q, n) for n in range(N))
        got = to_complex(cat.CLASSIC_SERIES[name](cyclotomic_ring(N)))
        assert close(got, expect), (name, N)


@pytest.mark.parametrize("thm,parity,make", [
    ("thm1", "any", oracle.thm1), ("thm2", "even", oracle.thm2),
    ("thm3", "any", oracle.thm3), ("thm4", "odd", oracle.thm4),
])
def test_multisums_against_float_oracle(thm, parity, make):
    spec = get_identity(thm)
    for N in range(1, 8):
        if not spec.applicable(N):
            continue
        for m in (1, 2):
            a, b = make(oracle.zeta(N), m, N - 1)
            assert close(to_complex(evaluate_side(thm, "A", N, m)), a), (thm, N, m)
            assert close(to_complex(evaluate_side(thm, "B", N, m)), b), (thm, N, m)


@pytest.mark.parametrize("thm,make", [("thm1", oracle.thm1), ("thm2", oracle.thm2)])
def test_truncating_multisums_need_no_cap(thm, make):
    # the chain sums of thm1/thm2 vanish beyond N - 1 on their own
    spec = get_identity(thm)
    for N in range(2, 7):
        if not spec.applicable(N):
            continue
        a, b = make(oracle.zeta(N), 2, 2 * N - 1)
        assert close(to_complex(evaluate_side(thm, "A", N, 2)), a)
        assert close(to_complex(evaluate_side(thm, "B", N, 2)), b)


# ---------------------------------------------------------------- structural properties


@pytest.mark.parametrize("name", sorted(cat.CLASSIC_SERIES))
def test_truncation_soundness(name):
    fn = cat.CLASSIC_SERIES[name]
    for N in range(1, 13):
        ring = cyclotomic_ring(N)
        capped = fn(ring)
        extended = fn(ring, cap=2 * N - 1, truncate=False)
        stream_zero = any(
            pochhammer(arg, N, ring).is_zero()
            for arg in (PochArgument(1, 1, 1), PochArgument(1, 2, 2), PochArgument(1, 1, 2),
                        PochArgument(1, -1, -1), PochArgument(-1, 1, 1), PochArgument(-1, -1, -1)))
        assert stream_zero
        if name in ("neg_inverse_series", "neg_poch_sum") and N % 2:
            continue  # (-q)_n never vanishes at odd roots; these sums are not asserted there
        if name == "odd_base_series" and N % 2 == 0:
            continue  # (q;q^2)_n never vanishes at even roots
        assert extended == capped, (name, N)


def _guard_factors(ring, chain):
    n1, top = chain[0], chain[-1]
    yield pochhammer(PochArgument(1, 2, 2), n1, ring)
    yield pochhammer(PochArgument(-1, 2 * n1 + 2, 1), 2 * top - 2 * n1, ring)
    for lo, hi in zip(chain, chain[1:]):
        yield q_binomial(hi, lo, 2, ring)


@pytest.mark.parametrize("N", range(2, 13, 2))
def test_halfway_thm3_b_zero_over_zero_guard(N):
    # every chain with n_m >= N/2 carries a vanishing factor, so the removed 0/0 quotient never matters
    ring = cyclotomic_ring(N)
    for m in (1, 2, 3):
        for chain in itertools.combinations_with_replacement(range(N), m):
            if chain[-1] >= N // 2:
                assert any(f.is_zero() for f in _guard_factors(ring, chain)), (N, chain)


def test_guard_needs_the_binomial_factors():
    # at q = i the chain (1, 2) survives both Pochhammer factors; [2, 1]_{q^2} = 1 + q^2 kills it
    ring = cyclotomic_ring(4)
    first, second, binom = _guard_factors(ring, (1, 2))
    assert not first.is_zero() and not second.is_zero() and binom.is_zero()


@pytest.mark.parametrize("N", range(1, 21))
def test_bopr_theta_sides_are_conjugate(N):
    a = evaluate_side("prop-bopr-a", "B", N)
    b = evaluate_side("prop-bopr-b", "B", N)
    assert a == inversion_map(b)


@pytest.mark.parametrize("N", range(1, 21))
def test_cohen_theta_sides_are_conjugate(N):
    ring = cyclotomic_ring(N)
    a = theta_double_sum(cat.theta_prop_cohen_a(N, 1), ring)
    b = theta_double_sum(cat.theta_prop_cohen_b(N, 1), ring)
    assert inversion_map(a) == b


@pytest.mark.parametrize("N", range(2, 25, 2))
def test_halfway_thm2_printed_sign_gives_negation(N):
    # with overall +1/4 the theta side is exactly minus the series side
    for m in (1, 2):
        series = evaluate_side("halfway-thm2", "A", N, m)
        flipped = theta_double_sum(cat.theta_halfway_thm2(N, m).with_scalar(Fraction(1, 4)), cyclotomic_ring(N))
        assert flipped == -series
        assert not series.is_zero()


@pytest.mark.parametrize("thm", ["thm1", "thm2", "thm3", "thm4"])
def test_m1_reductions(thm):
    spec = get_identity(thm)
    for N in range(1, 13):
        if spec.applicable(N):
            assert reduction_check_m1(thm, N).passed


def test_reduction_preconditions():
    with pytest.raises(ApplicabilityError):
        reduction_check_m1("thm2", 3)
    with pytest.raises(UnknownIdentityError):
        reduction_check_m1("bopr", 3)


@pytest.mark.parametrize("ident", IDS)
def test_every_entry_small_grid(ident):
    spec = get_identity(ident)
    for N in range(1, 11):
        for m in ((1,) if spec.m_fixed else (1, 2, 3)):
            r = verify_identity(spec, N, m)
            assert r.status in ("pass", "skipped-inapplicable"), (ident, N, m, r.message)
            assert (r.status == "pass") == spec.applicable(N)
