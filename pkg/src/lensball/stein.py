"""Homotopy invariants of the Stein fillings: tb, Gamma and d3.

Gamma values live in ``H_1(L(p^2, pq - 1)) = Z/p^2``.  On the B side they are
written on the meridian ``mu_0`` of the 0-framed component, on the A side on
``gamma_0``; :func:`gamma_pullback` carries the latter over to the former.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from lensball.arith import (
    CoprimePair,
    Role,
    a_map_closed,
    bezout_cd,
    sign_power,
)
from lensball.intmat import relative_coordinates
from lensball.plumbing import CyclicElement, pullback_multiplier
from lensball.spin import (
    SpinLabel,
    a_surgery_matrix,
    admissible_labels,
    canonical_label,
    induced_spin,
    t_transport,
)

D3_FILLING = Fraction(-1, 2)


class NonIntegralRho(ArithmeticError):
    """rot + lk is odd: the sublink fed in was not characteristic."""


class ModularHalfUndefined(ArithmeticError):
    """An odd numerator had to be halved modulo an even modulus."""


class CertificateFailure(AssertionError):
    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


@dataclass(frozen=True)
class TbBreakdown:
    positives: int
    negatives: int
    left_cusps: int
    tb: int

    def __post_init__(self):
        if self.tb != self.positives - self.negatives - self.left_cusps:
            raise ValueError("tb must equal positives - negatives - left_cusps")


@dataclass(frozen=True)
class GammaValue:
    element: CyclicElement
    spin: SpinLabel

    @property
    def coefficient(self) -> int:
        return self.element.coefficient

    @property
    def modulus(self) -> int:
        return self.element.modulus


def tb_breakdown(mn: CoprimePair) -> TbBreakdown:
    """Crossing and cusp count for the Legendrian attaching curve of A_{m,n}.

    With ``n = m sigma_0 + rho_1`` the braid contributes
    ``(m-1)((rho_1 - 1) + sigma_0 (m-1)) + sigma_0 (m-1)`` positive crossings.
    """
    if mn.role is not Role.MN:
        raise ValueError("tb_breakdown expects an mn-pair")
    m, n = mn.first, mn.second
    sigma0, rho1 = divmod(n, m)
    if m == 1:
        sigma0, rho1 = n - 1, 1  # r_l - 1 with r_l = n, and rho_{l+1} = 1
    positives = (m - 1) * ((rho1 - 1) + sigma0 * (m - 1)) + sigma0 * (m - 1)
    negatives = m + n - 1
    out = TbBreakdown(positives, negatives, 1, positives - negatives - 1)
    if out.tb != m * n - 2 * (m + n) + 1:
        raise ArithmeticError(f"tb count {out.tb} != mn - 2(m+n) + 1 for {mn}")
    return out


def rho_evaluation(rot: int, lk_char: int) -> int:
    """``(rot + lk_char) / 2``, which has to be an integer."""
    total = rot + lk_char
    if total % 2:
        raise NonIntegralRho(f"rot + lk = {total} is odd")
    return total // 2


def modular_half(numerator: int, modulus: int) -> int:
    """``numerator / 2`` in ``Z/modulus``."""
    if modulus % 2:
        return numerator * pow(2, -1, modulus) % modulus
    if numerator % 2:
        raise ModularHalfUndefined(f"{numerator}/2 is undefined mod {modulus}")
    return numerator // 2 % modulus


def _mu0(value: int, modulus: int) -> CyclicElement:
    return CyclicElement(value, modulus, "mu_0")


def _check_label(pq: CoprimePair, label: SpinLabel):
    if label not in admissible_labels(pq):
        raise ValueError(f"{label} is not a spin structure on L({pq.first}^2, {pq.first * pq.second - 1})")


def gamma_b(pq: CoprimePair, label: SpinLabel) -> GammaValue:
    """``(pq/2 + ((3 - t0 t1^q)/2) p^2/2) mu_0`` in ``Z/p^2``.

    For the canonical label this reduces to ``pq/2 mu_0``, which is asserted.
    The other even-p label lands on ``pq/2 + p^2/2``, the shift by the
    order-two class that separates the two spin structures.
    """
    _check_label(pq, label)
    p, q = pq.first, pq.second
    mod = p * p
    k = (3 - label.t0 * label.t1**q) // 2
    value = (modular_half(p * q, mod) + k * modular_half(p * p, mod)) % mod
    if label == canonical_label(pq) and value != modular_half(p * q, mod):
        raise CertificateFailure(f"Gamma_B for {pq} did not reduce to pq/2")
    return GammaValue(_mu0(value, mod), label)


def b_side_rho(pq: CoprimePair, label: SpinLabel) -> tuple[int, int]:
    """``(rho(K_0), rho(K_1))`` from rotation numbers and the characteristic sublink.

    K_0 is 0-framed with rot 0; K_1 has rot q and links K_0 p times.  The
    sublink is ``L' = ((1 - t0 t1^q)/2) K_0 + ((1 - t1)/2) K_1`` and
    ``L_0 = K_0``.
    """
    p, q = pq.first, pq.second
    t0, t1 = label
    in0 = (1 - t0 * t1**q) // 2
    in1 = (1 - t1) // 2
    framing1 = -p * q - 1
    # lk(K_i, L' + L_0), with lk(K_0, K_0) = 0
    lk0 = in1 * p
    lk1 = in0 * p + in1 * framing1 + p
    return rho_evaluation(0, lk0), rho_evaluation(q, lk1)


def gamma_b_from_rho(pq: CoprimePair, label: SpinLabel) -> GammaValue:
    """Gamma_B assembled from the integral rho values, no halving involved."""
    p, q = pq.first, pq.second
    mod = p * p
    r0, r1 = b_side_rho(pq, label)
    return GammaValue(_mu0(r0 * (1 + p * q) + r1 * p, mod), label)


def bezout_elimination_identity(mn: CoprimePair, pq: CoprimePair) -> bool:
    """``-(d-c)^2 mn + (cd(m+n) - c(d-c)m + d(d-c)n)(m+n) == 1``."""
    m, n = mn.first, mn.second
    bz = bezout_cd(pq)
    c, d = bz.c, bz.d
    x = d - c
    return -(x**2) * m * n + (c * d * (m + n) - c * x * m + d * x * n) * (m + n) == 1


def gamma1_in_gamma0(mn: CoprimePair) -> int:
    """Coefficient ``k`` with ``gamma_1 = k gamma_0``, read off the Smith form."""
    _, coords = relative_coordinates(a_surgery_matrix(mn), base=0)
    return coords[1]


def _normalize_mn(mn) -> CoprimePair:
    if isinstance(mn, CoprimePair):
        if mn.role is Role.MN:
            return mn
        raise ValueError("expected an mn-pair")
    a, b = mn
    return CoprimePair.mn(min(a, b), max(a, b))


def gamma_a(mn, pq: CoprimePair, label: SpinLabel) -> GammaValue:
    """Gamma of the A-side filling under the spin structure induced from ``label``.

    ``((m+n)/2) [x^2 + ((1-t1)/2)(1 + x^2 (mn + ((1 + (-1)^(c+l) t0)/2)(m+n)))] gamma_0``
    with ``x = d - c``.  ``mn`` may be given in either order.
    """
    mn = _normalize_mn(mn)
    amap = a_map_closed(pq)
    if amap.mn != mn:
        raise ValueError(f"{(mn.first, mn.second)} is not the A-map partner of {(pq.first, pq.second)}")
    _check_label(pq, label)
    m, n = mn.first, mn.second
    bz = bezout_cd(pq)
    x = bz.d - bz.c
    mod = (m + n) ** 2
    if not bezout_elimination_identity(mn, pq):
        raise CertificateFailure(f"Bezout elimination identity fails for {pq}")
    if (gamma1_in_gamma0(mn) - x * x * (m + n)) % mod:
        raise CertificateFailure(f"gamma_1 != (d-c)^2 (m+n) gamma_0 for {mn}")
    t0, t1 = label
    e = sign_power(bz.c + amap.ell)
    inner = x * x + (1 - t1) // 2 * (1 + x * x * (m * n + (1 + e * t0) // 2 * (m + n)))
    value = modular_half((m + n) * inner, mod)
    return GammaValue(CyclicElement(value, mod, "gamma_0"), induced_spin(pq, label))


def gamma_pullback(mn, pq: CoprimePair, label: SpinLabel) -> GammaValue:
    """Gamma_A moved to ``mu_0`` by ``gamma_0 -> k mu_0``; must equal Gamma_B."""
    a_val = gamma_a(mn, pq, label)
    mod = a_val.modulus
    pulled = GammaValue(_mu0(a_val.coefficient * pullback_multiplier(pq), mod), label)
    b_val = gamma_b(pq, label)
    if pulled.coefficient != b_val.coefficient:
        raise CertificateFailure(
            f"pulled-back Gamma {pulled.coefficient} != Gamma_B {b_val.coefficient} for {pq}",
            {"gammaA": a_val.coefficient, "gammaA_pulled": pulled.coefficient, "gammaB": b_val.coefficient},
        )
    return pulled


def d3_from_characteristic(c1sq, sigma: int, chi: int) -> Fraction:
    """``(c_1^2 - 3 sigma - 2 chi) / 4``."""
    return (Fraction(c1sq) - 3 * sigma - 2 * chi) / 4


@dataclass
class LabelResult:
    t0: int
    t1: int
    gammaB: int
    gammaA_pulled: int | None
    passed: bool
    gammaB_rho: int | None = None
    gammaA: int | None = None
    error: str | None = None

    def record(self) -> dict:
        return {
            "t0": self.t0,
            "t1": self.t1,
            "gammaB": self.gammaB,
            "gammaA_pulled": self.gammaA_pulled,
            "pass": self.passed,
        }


@dataclass
class CertificateReport:
    p: int
    q: int
    m: int
    n: int
    ell: int
    c: int
    d: int
    labels: list[LabelResult] = field(default_factory=list)
    d3_b: Fraction = D3_FILLING
    d3_a: Fraction = D3_FILLING
    t_lists: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.d3_b == self.d3_a and bool(self.labels) and all(r.passed for r in self.labels)

    def to_dict(self, verbose: bool = False) -> dict:
        out = {
            "schema": 1,
            "p": self.p,
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "ell": self.ell,
            "c": self.c,
            "d": self.d,
            "labels": [r.record() for r in self.labels],
            "d3": str(self.d3_b),
            "pass": self.passed,
        }
        if verbose or not self.passed:
            out["details"] = {
                "labels": [asdict(r) for r in self.labels],
                "t_lists": self.t_lists,
                "d3_a": str(self.d3_a),
            }
        return out


def contactomorphism_certificate(pq: CoprimePair) -> CertificateReport:
    """Check d3 and Gamma agreement for every spin structure; never raises on failure."""
    if pq.role is not Role.PQ:
        raise ValueError("expected a pq-pair")
    amap = a_map_closed(pq)
    bz = bezout_cd(pq)
    mn = amap.mn
    # both fillings are rational balls: c_1^2 = 0, sigma = 0, chi = 1
    report = CertificateReport(
        pq.first, pq.second, mn.first, mn.second, amap.ell, bz.c, bz.d,
        d3_b=d3_from_characteristic(0, 0, 1),
        d3_a=d3_from_characteristic(0, 0, 1),
    )
    mod = pq.first**2
    half_pq = modular_half(pq.first * pq.second, mod)
    canon = canonical_label(pq)
    for label in admissible_labels(pq):
        report.t_lists[str(label)] = t_transport(pq, label)
        res = LabelResult(label.t0, label.t1, 0, None, False)
        try:
            b_val = gamma_b(pq, label)
            res.gammaB = b_val.coefficient
            res.gammaB_rho = gamma_b_from_rho(pq, label).coefficient
            a_val = gamma_a(mn, pq, label)
            res.gammaA = a_val.coefficient
            res.gammaA_pulled = a_val.coefficient * pullback_multiplier(pq) % mod
            res.passed = res.gammaB == res.gammaA_pulled == res.gammaB_rho and (
                label != canon or res.gammaB == half_pq
            )
        except (ArithmeticError, CertificateFailure) as exc:
            res.error = f"{type(exc).__name__}: {exc}"
        report.labels.append(res)
    return report
