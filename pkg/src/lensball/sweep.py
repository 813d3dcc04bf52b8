"""Exhaustive verification over all admissible (p, q) up to a bound.

Every pair runs the same battery of exact checks; a pair passes when the
battery reports nothing.  Results are keyed by (p, q) and sorted before
reporting, so the output does not depend on how the work was sharded.
"""

from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from lensball.arith import (
    CoprimePair,
    a_map_closed,
    a_map_subtractive,
    bezout_cd,
    euclidean_sequences,
    matched_pq,
)
from lensball.contfrac import a_side_chain, evaluate, symmetric_chain
from lensball.intmat import relative_coordinates
from lensball.plumbing import (
    LensRelation,
    end_identification,
    gamma0_trace_det,
    h1_presentation,
    lens_equiv,
    lens_parameters,
    linking_matrix,
    s_i_determinants,
)
from lensball.spin import (
    a_surgery_matrix,
    admissible_labels,
    b_surgery_matrix,
    enumerate_characteristic_sublinks,
    exponent_parities,
    induced_spin,
    t_closed_form,
    t_final_even_p,
    t_transport,
)
from lensball.stein import contactomorphism_certificate, tb_breakdown

DEFAULT_BOUND = 300
BOUND_ENV = "LENSBALL_SWEEP_BOUND"


class Parity(enum.Enum):
    ALL = "all"
    ODD = "odd"
    EVEN = "even"


class Emit(enum.Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


def default_bound() -> int:
    raw = os.environ.get(BOUND_ENV)
    return int(raw) if raw else DEFAULT_BOUND


@dataclass(frozen=True)
class SweepConfig:
    max_p: int = DEFAULT_BOUND
    parity_filter: Parity = Parity.ALL
    emit: Emit = Emit.TEXT
    parallelism: int = 1

    def __post_init__(self):
        if self.max_p < 3:
            raise ValueError("max_p must be at least 3")
        if self.parallelism < 1:
            raise ValueError("parallelism must be positive")


@dataclass
class SweepReport:
    checked: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    labels_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        # elapsed is left out so that reports compare byte for byte
        return {
            "schema": 1,
            "checked": self.checked,
            "passed": self.passed,
            "labels_checked": self.labels_checked,
            "failures": self.failures,
        }


def admissible_pairs(max_p: int, parity: Parity = Parity.ALL) -> list[tuple[int, int]]:
    out = []
    for p in range(3, max_p + 1):
        if parity is Parity.ODD and p % 2 == 0 or parity is Parity.EVEN and p % 2:
            continue
        out.extend((p, q) for q in range(1, (p + 1) // 2) if 2 * q < p and gcd(p, q) == 1)
    return out


def _arith(pq: CoprimePair) -> list[str]:
    p, q = pq.first, pq.second
    errs = []
    amap = a_map_closed(pq)
    (mn_sub, _) = a_map_subtractive(p - q, q)
    if amap.a_value != mn_sub:
        errs.append(f"closed A-map {amap.a_value} != subtractive {mn_sub}")
    m, n = amap.mn.first, amap.mn.second
    bz = bezout_cd(pq)
    if bz.c * m + bz.d * n != 1:
        errs.append(f"cm + dn = {bz.c * m + bz.d * n}")
    if abs(bz.d - bz.c) != q:
        errs.append(f"|d - c| = {abs(bz.d - bz.c)}")
    if m + n != p:
        errs.append("m + n != p")
    if matched_pq(amap.mn) != pq:
        errs.append("matched_pq does not invert the A-map")
    mn_data = euclidean_sequences(amap.mn)
    if mn_data.ell != amap.ell or any(mn_data.r(i) != amap.rho_at(i) for i in range(-1, amap.ell + 2)):
        errs.append("rho differs from the Euclidean remainders of (n, m)")
    return errs


def _chains(pq: CoprimePair) -> list[str]:
    p, q = pq.first, pq.second
    errs = []
    b_chain = symmetric_chain(pq)
    a_chain = a_side_chain(a_map_closed(pq).mn)
    if evaluate(b_chain) != Fraction(-p * p, p * q - 1):
        errs.append(f"B-chain evaluates to {evaluate(b_chain)}")
    order = p * p
    for name, chain in (("B", b_chain), ("A", a_chain)):
        pres = h1_presentation(chain)
        snf_order, coords = relative_coordinates(linking_matrix(chain))
        if pres.order != order or snf_order != order:
            errs.append(f"{name}-chain H_1 order {pres.order}/{snf_order}")
        elif list(pres.meridian_coeffs) != coords:
            errs.append(f"{name}-chain meridians disagree with the Smith form")
        big, small = lens_parameters(chain)
        if big != order or lens_equiv(order, small, p * q - 1) is not LensRelation.SAME_PRESERVING:
            errs.append(f"{name}-chain bounds L({big}, {small})")
    return errs


def _determinants(pq: CoprimePair) -> list[str]:
    errs = []
    ell = euclidean_sequences(pq).ell
    mn = a_map_closed(pq).mn
    try:
        for i in range(ell + 2):
            s_i_determinants(pq, i)
        for i in range(euclidean_sequences(mn).ell + 2):
            gamma0_trace_det(mn, i)
    except ArithmeticError as exc:
        errs.append(str(exc))
    ends = end_identification(pq)
    if not (ends["ends_match"] and ends["gamma0_matches"]):
        errs.append(f"end identification failed: {ends}")
    return errs


def _spin(pq: CoprimePair) -> list[str]:
    p = pq.first
    errs = []
    labels = admissible_labels(pq)
    if len(labels) != (2 if p % 2 == 0 else 1):
        errs.append(f"{len(labels)} spin structures")
    brute = enumerate_characteristic_sublinks(b_surgery_matrix(pq))
    if [tuple(s.membership) for s in brute] != [tuple(lab) for lab in labels]:
        errs.append("GF(2) solve disagrees with enumeration")
    data = euclidean_sequences(pq)
    parities = exponent_parities(pq)
    amap = a_map_closed(pq)
    for label in labels:
        ts = t_transport(pq, label)
        for j in range(1, data.ell + 2):
            if ts[j] != t_closed_form(pq, label, j):
                errs.append(f"T_{j} differs from the closed form for {label}")
            a, b, c = parities[j]
            if ts[j] != (-1) ** a * label.t0**b * label.t1**c:
                errs.append(f"T_{j} differs from its exponent recursion for {label}")
            if b != amap.rho_at(data.ell + 1 - j):
                errs.append(f"b_{j} != rho_{data.ell + 1 - j}")
        if p % 2 == 0 and ts[-1] != t_final_even_p(pq, label):
            errs.append(f"T_(l+1) != (-1)^(c+l) t0 for {label}")
    images = sorted((tuple(induced_spin(pq, lab)) for lab in labels), reverse=True)
    a_labels = [tuple(lab) for lab in admissible_labels(amap.mn)]
    if images != a_labels or len(set(images)) != len(labels):
        errs.append(f"induced spin images {images} != A-side labels {a_labels}")
    return errs


def _stein(pq: CoprimePair) -> list[str]:
    errs = []
    report = contactomorphism_certificate(pq)
    if not report.passed:
        errs.append(f"certificate failed: {report.to_dict()}")
    try:
        tb_breakdown(a_map_closed(pq).mn)
    except ArithmeticError as exc:
        errs.append(str(exc))
    return errs


SUITES = (
    ("core-arith", _arith),
    ("contfrac", _chains),
    ("plumbing", _determinants),
    ("spin", _spin),
    ("stein-invariants", _stein),
)


def check_pair(p: int, q: int) -> list[dict]:
    """All failures for one pair, as ``{p, q, suite, message}`` records."""
    pq = CoprimePair.pq(p, q)
    out = []
    for suite, fn in SUITES:
        try:
            messages = fn(pq)
        except Exception as exc:  # a crash is a failure of that suite, not of the sweep
            messages = [f"{type(exc).__name__}: {exc}"]
        out.extend({"p": p, "q": q, "suite": suite, "message": msg} for msg in messages)
    return out


def _check_chunk(pairs: list[tuple[int, int]]) -> list[tuple[tuple[int, int], list[dict], int]]:
    return [((p, q), check_pair(p, q), 2 if p % 2 == 0 else 1) for p, q in pairs]


def run_sweep(config: SweepConfig) -> SweepReport:
    start = time.perf_counter()
    pairs = admissible_pairs(config.max_p, config.parity_filter)
    if config.parallelism == 1 or len(pairs) < 2:
        results = _check_chunk(pairs)
    else:
        chunks = [pairs[i :: config.parallelism * 4] for i in range(config.parallelism * 4)]
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            results = [r for part in pool.map(_check_chunk, chunks) for r in part]
    results.sort(key=lambda r: r[0])
    report = SweepReport()
    for _, failures, n_labels in results:
        report.checked += 1
        report.labels_checked += n_labels
        if failures:
            report.failures.append({"p": failures[0]["p"], "q": failures[0]["q"], "errors": failures})
        else:
            report.passed += 1
    report.elapsed = time.perf_counter() - start
    return report


def tb_sweep(max_n: int) -> list[tuple[int, int]]:
    """Coprime ``(m, n)`` with ``n <= max_n`` whose crossing count misses the formula."""
    bad = []
    for n in range(2, max_n + 1):
        for m in range(1, n):
            if gcd(m, n) != 1:
                continue
            try:
                tb_breakdown(CoprimePair.mn(m, n))
            except ArithmeticError:
                bad.append((m, n))
    return bad
