"""Grid verification and engine self-checks behind the command line."""

from __future__ import annotations

import csv
import io
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import bailey
from .catalog import VerificationReport, catalog, get_identity, verify_identity
from .cyclotomic import cyclotomic_ring, lhopital_at_root, reduce
from .errors import BaseExponentError, DenominatorVanishingError, UnknownIdentityError, UnknownPairError
from .laurent import LaurentPoly, formal_derivative
from .qprims import RationalPoint

STATUSES = ("pass", "fail", "skipped-inapplicable", "error")


def default_jobs() -> int:
    raw = os.environ.get("QBAILEY_JOBS", "").strip()
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        raise ValueError(f"QBAILEY_JOBS must be a positive integer, got {raw!r}") from None
    if jobs < 1:
        raise ValueError("QBAILEY_JOBS must be >= 1")
    return jobs


@dataclass
class RunConfig:
    identities: Sequence[str] | str = "all"
    N_range: tuple[int, int] = (1, 12)
    m_range: tuple[int, int] = (1, 1)
    sample_points: Sequence[Fraction] = bailey.DEFAULT_POINTS
    format: str = "json"
    jobs: int = 1
    timings: bool = False
    n_max: int = 10
    pairs: Sequence[str] | str = "all"
    base_exponent: Optional[int] = None

    def __post_init__(self):
        for name in ("N_range", "m_range"):
            lo, hi = getattr(self, name)
            if lo < 1:
                raise ValueError(f"{name} lower bound must be >= 1")
            if hi < lo:
                raise ValueError(f"{name} is empty: {lo}..{hi}")
        if self.format not in ("json", "csv", "human"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def identity_ids(self) -> list[str]:
        if self.identities == "all" or list(self.identities) == ["all"]:
            return sorted(spec.id for spec in catalog())
        ids = sorted(set(self.identities))
        for i in ids:
            get_identity(i)  # raises UnknownIdentityError before any work
        return ids


def parse_range(text: str) -> tuple[int, int]:
    """'lo..hi' or a single integer."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def parse_points(text: str) -> list[Fraction]:
    return [Fraction(p.strip()) for p in text.split(",") if p.strip()]


# ---------------------------------------------------------------- grid runs


def _cell(args) -> VerificationReport:
    ident, N, m = args
    return verify_identity(ident, N, m)


def grid_cells(config: RunConfig) -> list[tuple[str, int, int]]:
    ids = config.identity_ids()
    return [(i, N, m)
            for i in ids
            for N in range(config.N_range[0], config.N_range[1] + 1)
            for m in range(config.m_range[0], config.m_range[1] + 1)]


def summarize(reports: Iterable) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0, "error": 0}
    for r in reports:
        key = "skipped" if r.status.startswith("skipped") else r.status
        counts[key] += 1
    return counts


def run_grid(config: RunConfig) -> tuple[list[VerificationReport], dict]:
    """Verify every (identity, N, m) cell; output order is canonical whatever the schedule."""
    cells = grid_cells(config)
    if config.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_cell, cells, chunksize=1))
    else:
        reports = [_cell(c) for c in cells]
    reports.sort(key=lambda r: r.sort_key)
    return reports, summarize(reports)


def exit_code(summary: dict) -> int:
    if summary["error"]:
        return 3
    if summary["fail"]:
        return 1
    return 0


def format_grid(reports: list[VerificationReport], summary: dict, fmt: str, timings: bool = False) -> str:
    if fmt == "json":
        payload = [r.to_json_obj(timings) for r in reports] + [summary]
        return json.dumps(payload, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["id", "N", "m", "status", "message"] + (["elapsed"] if timings else [])
        w.writerow(header)
        for r in reports:
            row = [r.id, r.N, r.m, r.status, r.message]
            if timings:
                row.append(f"{r.elapsed:.6f}")
            w.writerow(row)
        return buf.getvalue()
    lines = []
    for r in reports:
        line = f"{r.status.upper():<22} {r.id:<16} N={r.N:<4} m={r.m}"
        if r.side_a is not None:
            line += f"  A={r.side_a.pretty()}"
        if r.status == "fail" and r.side_b is not None:
            line += f"  B={r.side_b.pretty()}"
        if r.message and r.status != "pass":
            line += f"  ({r.message})"
        if timings:
            line += f"  [{r.elapsed:.3f}s]"
        lines.append(line)
    lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in summary.items()))
    return "\n".join(lines) + "\n"


def dump_theta_specs(config: RunConfig) -> list[dict]:
    out = []
    for ident, N, m in grid_cells(config):
        spec = get_identity(ident)
        if spec.theta is None or not spec.applicable(N) or not spec.m_ok(m):
            continue
        out.append({"id": ident, "N": N, "m": m, "theta_spec": spec.theta(N, m).to_json_obj()})
    return out


# ---------------------------------------------------------------- engine checks


def resolve_pair(label: str, base_exponent: Optional[int] = None) -> bailey.BaileyPair:
    """Seed pair by label, optionally re-based; asking a base-q^2 pair for base q is rejected."""
    pair = bailey.seed_pair(label)
    if base_exponent is None or base_exponent == pair.base_exponent:
        return pair
    if base_exponent == 2:
        return bailey.lift_to_q2(pair)
    raise BaseExponentError(
        f"{label} is delivered in base q^2; it has no base-q form with integral exponents")


def _as_base2(pair: bailey.BaileyPair) -> bailey.BaileyPair:
    return pair if pair.base_exponent == 2 else bailey.lift_to_q2(pair)


def _kl_report(name, pair, lemmas, ctxs, n_hi, b, c):
    rep = bailey.CheckReport(name, True)
    for which in lemmas:
        for ctx in ctxs:
            for n in range(1, n_hi + 1):
                left, right = bailey.key_lemma_eval(which, pair, n, ctx, b, c)
                rep.checked += 1
                if left != right:
                    rep.passed = False
                    rep.failures.append((which, ctx.value, n))
    return rep


def _arith_reports(rng: random.Random) -> list[bailey.CheckReport]:
    lh = bailey.CheckReport("lhopital:F*(1-q^N)", True)
    for N in range(1, 31):
        ring = cyclotomic_ring(N)
        F = LaurentPoly({rng.randint(-8, 12): Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                         for _ in range(rng.randint(1, 5))})
        lh.checked += 1
        if lhopital_at_root(F * (1 - LaurentPoly.monomial(N)), ring) != reduce(F, ring):
            lh.passed = False
            lh.failures.append(N)
    deriv = bailey.CheckReport("derivative:(-q)_{N-1}=-N^2/(4z)", True)
    q = LaurentPoly.monomial(1)
    for N in range(2, 21, 2):
        ring = cyclotomic_ring(N)
        F = LaurentPoly.constant(1)
        for k in range(1, N):
            F = F * (1 + q**k)
        deriv.checked += 1
        # the value is -N^2 / (4 zeta); this sign is what makes the even-N scalar -1/4
        expect = ring.zeta.inverse().scale(Fraction(-N * N, 4))
        if not (reduce(F, ring).is_zero() and reduce(formal_derivative(F), ring) == expect):
            deriv.passed = False
            deriv.failures.append(N)
    return [lh, deriv]


def run_engine_checks(config: RunConfig, seed: int = 0) -> list[bailey.CheckReport]:
    """Pair relations, lemma steps, key lemmas, the chain oracle and arithmetic facts.

    Invalid sample points raise DenominatorVanishingError and base misuse raises
    BaseExponentError, both before any check runs.
    """
    labels = list(bailey.SEED_IDS) if config.pairs in ("all", ["all"]) else list(config.pairs)
    pairs = [resolve_pair(lbl, config.base_exponent) for lbl in labels]
    for p in config.sample_points:
        for s in (1, 2):
            bailey._check_point(p, s, config.n_max)
    ctxs = [RationalPoint(p) for p in config.sample_points]
    small = min(config.n_max, 6)
    b = bailey.Monomial(Fraction(3, 7), 1)
    c = bailey.Monomial(Fraction(-2, 5), 0)
    reports = []
    for pair in pairs:
        reports.append(bailey.verify_pair(pair, config.n_max, config.sample_points))
        steps = [bailey.ChainStep("general", b, c), bailey.ChainStep("general", b, c, "reversed"),
                 bailey.ChainStep("bc_to_infinity"), bailey.ChainStep("bc_to_zero")]
        for step in steps:
            rep = bailey.verify_pair(bailey.apply_step(pair, step), small, config.sample_points)
            rep.name = f"step:{step.kind}:{step.beta_form}:{pair.label}"
            reports.append(rep)
        base2 = _as_base2(pair)
        for kind in ("base_change_D1", "base_change_D4"):
            rep = bailey.verify_pair(bailey.apply_step(base2, kind), small, config.sample_points)
            rep.name = f"step:{kind}:{base2.label}"
            reports.append(rep)
        reports.append(_kl_report(f"key-lemmas:{pair.label}", pair,
                                  ("KL1", "b0cq", "b0c-q", "binftyc-q"), ctxs, small, b, c))
        reports.append(_kl_report(f"key-lemmas-q2:{base2.label}", base2, ("KL2", "KL3"), ctxs, small, b, c))
        if pair.label in bailey.CHAIN_STEP:
            rep = bailey.CheckReport(f"chain-oracle:{pair.label}", True)
            ctx = ctxs[0]
            for m in (1, 2, 3):
                composed = bailey.chain_pair(pair.label, m)
                for n in range(small + 1):
                    rep.checked += 1
                    ok = (bailey.explicit_chain_beta(pair.label, m, n, ctx) == composed.beta(ctx, n)
                          and bailey.chain_alpha_closed(pair.label, m, n, ctx) == composed.alpha(ctx, n))
                    if not ok:
                        rep.passed = False
                        rep.failures.append((m, n))
            reports.append(rep)
    reports.extend(_arith_reports(random.Random(seed)))
    return reports


def engine_summary(reports) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0, "error": 0}
    for r in reports:
        counts["pass" if r.passed else "fail"] += 1
    return counts


__all__ = [
    "RunConfig", "run_grid", "run_engine_checks", "format_grid", "dump_theta_specs", "exit_code",
    "parse_range", "parse_points", "resolve_pair", "default_jobs", "summarize", "engine_summary",
    "UnknownIdentityError", "UnknownPairError", "DenominatorVanishingError", "BaseExponentError",
]
