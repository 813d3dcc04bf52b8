"""Linear plumbings as surgery presentations of lens spaces.

A chain ``[e_1, ..., e_n]`` is a row of unknots, neighbours linked once,
the i-th framed ``e_i``.  Its linking matrix is tridiagonal and its
boundary is ``L(P, Q)`` where ``[e_1, ..., e_n] = -P/Q``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from lensball.arith import (
    CoprimePair,
    Role,
    a_map_closed,
    euclidean_sequences,
    sign_power,
)
from lensball.contfrac import (
    ContinuedFraction,
    a_side_chain,
    det_sequence,
    determinant_pair,
    symmetric_chain,
)
from lensball.intmat import determinant

WeightedChain = ContinuedFraction


class NonRationalSphere(ArithmeticError):
    """The plumbing has a degenerate linking matrix (infinite H_1)."""


@dataclass(frozen=True)
class CyclicElement:
    coefficient: int
    modulus: int
    generator: str

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "coefficient", self.coefficient % self.modulus)

    def __str__(self) -> str:
        return f"{self.coefficient}*{self.generator} mod {self.modulus}"


@dataclass(frozen=True)
class HomologyPresentation:
    order: int
    meridian_coeffs: tuple[int, ...]


class LensRelation(enum.Enum):
    SAME_PRESERVING = "same-preserving"
    SAME_REVERSING = "same-reversing"
    DIFFERENT = "different"


def epsilon(i: int) -> int:
    """``sin(pi i/2) + cos(pi i/2)``: the period-four pattern 1, 1, -1, -1."""
    return (1, 1, -1, -1)[i % 4]


def linking_matrix(chain: Sequence[int]) -> list[list[int]]:
    weights = list(chain)
    n = len(weights)
    matrix = [[0] * n for _ in range(n)]
    for i, w in enumerate(weights):
        matrix[i][i] = w
        if i + 1 < n:
            matrix[i][i + 1] = matrix[i + 1][i] = 1
    return matrix


def h1_presentation(chain: Sequence[int]) -> HomologyPresentation:
    """H_1 is cyclic on the first meridian ``mu_1``.

    The i-th meridian is ``(-1)^(i-1) det C_{i-1} mu_1``; coefficients are
    reported in ``[0, order)``.
    """
    dets = [1] + det_sequence(chain)
    order = abs(dets[-1])
    if order == 0:
        raise NonRationalSphere(f"chain {list(chain)} has zero determinant")
    coeffs = tuple(sign_power(i) * dets[i] % order for i in range(len(dets) - 1))
    return HomologyPresentation(order, coeffs)


def lens_parameters(chain: Sequence[int]) -> tuple[int, int]:
    """``(P, Q)`` with ``0 <= Q < P`` such that the chain bounds ``L(P, Q)``."""
    full, tail = determinant_pair(chain)
    if full == 0:
        raise NonRationalSphere(f"chain {list(chain)} has zero determinant")
    order = abs(full)
    # value = full/tail = -P/Q
    q = -tail if full > 0 else tail
    return order, q % order


def lens_equiv(p: int, q1: int, q2: int) -> LensRelation:
    """Classical lens space classification of ``L(p, q1)`` against ``L(p, q2)``."""
    if p < 1:
        raise ValueError("lens space order must be positive")
    if gcd(p, q1) != 1 or gcd(p, q2) != 1:
        raise ValueError(f"L({p}, {q1}) / L({p}, {q2}): parameters must be coprime to p")
    a, b = q1 % p, q2 % p
    if a == b or (a * b - 1) % p == 0:
        return LensRelation.SAME_PRESERVING
    if (a + b) % p == 0 or (a * b + 1) % p == 0:
        return LensRelation.SAME_REVERSING
    return LensRelation.DIFFERENT


def s_i_chains(pq: CoprimePair, i: int) -> tuple[list[int], list[int] | None, list[int] | None]:
    """The chains ``S_i`` and, for ``i <= l``, its extensions ``S_i^+`` / ``S_i^-``.

    ``S_i`` is the middle ``2i + 3`` nodes of the symmetric chain; ``S_i^+``
    adds the next node on the left and ``S_i^-`` the next node on the right.
    """
    if pq.role is not Role.PQ:
        raise ValueError("expected a pq-pair")
    data = euclidean_sequences(pq)
    ell = data.ell
    if not 0 <= i <= ell + 1:
        raise IndexError(f"S_i index {i} outside 0..{ell + 1}")

    def s(k):  # s_{l+1} = r_l
        return data.r(ell) if k == ell + 1 else data.s(k)

    left = [sign_power(k - 1) * s(k) for k in range(ell + 1 - i, ell + 2)]
    right = [sign_power(k) * s(k) for k in range(ell + 1, ell - i, -1)]
    middle = left + [1] + right
    if i > ell:
        return middle, None, None
    k = ell - i
    return middle, [sign_power(k - 1) * s(k)] + middle, middle + [sign_power(k) * s(k)]


def s_i_determinants(pq: CoprimePair, i: int) -> tuple[int, int | None, int | None]:
    """Determinants of ``S_i``, ``S_i^+``, ``S_i^-`` from their linking matrices.

    Each is checked against its closed form; ``S_i^+`` and ``S_i^-`` are
    undefined at ``i = l + 1`` and come back as ``None``.
    """
    data = euclidean_sequences(pq)
    ell = data.ell
    chains = s_i_chains(pq, i)
    dets = tuple(None if c is None else determinant(linking_matrix(c)) for c in chains)
    det_s, det_plus, det_minus = dets
    r = data.r
    if det_s != sign_power(i + 1) * r(ell - i) ** 2:
        raise ArithmeticError(f"det S_{i} = {det_s} disagrees with the closed form for {pq}")
    if i <= ell:
        twist = sign_power(ell + i)
        if det_plus != sign_power(ell) * (r(ell - i - 1) * r(ell - i) + twist):
            raise ArithmeticError(f"det S_{i}^+ = {det_plus} disagrees with the closed form")
        if det_minus != sign_power(ell) * (twist - r(ell - i - 1) * r(ell - i)):
            raise ArithmeticError(f"det S_{i}^- = {det_minus} disagrees with the closed form")
    return dets


def gamma0_trace_matrix(mn: CoprimePair, i: int) -> list[list[int]]:
    """The bordered tridiagonal matrix on ``-rho_l, sigma_l, -sigma_{l-1}, ...``.

    Its ``(i+1)``-st diagonal entry is ``(-1)^(i+1) sigma_{l+1-i}``.  The
    alternation starts from ``+sigma_l`` whatever the parity of ``l``.
    """
    if mn.role is not Role.MN:
        raise ValueError("expected an mn-pair")
    data = euclidean_sequences(mn)
    ell = data.ell
    if not 0 <= i <= ell + 1:
        raise IndexError(f"index {i} outside 0..{ell + 1}")
    diag = [-data.r(ell)] + [sign_power(j + 1) * data.s(ell + 1 - j) for j in range(1, i + 1)]
    return linking_matrix(diag)


def gamma0_trace_det(mn: CoprimePair, i: int) -> int:
    value = determinant(gamma0_trace_matrix(mn, i))
    data = euclidean_sequences(mn)
    expected = -epsilon(i) * data.r(data.ell - i)
    if value != expected:
        raise ArithmeticError(f"bordered determinant {value} != {expected} for {mn}, i={i}")
    return value


def gamma0_position(mn: CoprimePair) -> int:
    """0-based index of the ``-sigma_0 - 1`` node (meridian gamma_0) in the A-side chain."""
    return euclidean_sequences(mn).ell + 1


def gamma0_in_eta(mn: CoprimePair) -> tuple[CyclicElement, CyclicElement]:
    """``gamma_0`` written on the two end meridians of the A-side chain.

    ``gamma_0 = -eps(l) m eta_{(-1)^l} = -eps(l) n eta_{(-1)^(l+1)}`` modulo
    ``(m+n)^2``.  ``eta_{(-1)^l}`` is the left end meridian, oriented like
    every other meridian along the chain.  With that same uniform orientation
    the right end meridian carries ``gamma_0 = eps(l+1) n eta``, so
    ``eta_{(-1)^(l+1)}`` is the right end meridian for odd ``l`` and its
    reverse for even ``l``.
    """
    if mn.role is not Role.MN:
        raise ValueError("expected an mn-pair")
    ell = euclidean_sequences(mn).ell
    m, n = mn.first, mn.second
    order = (m + n) ** 2
    left = f"eta_{sign_power(ell):+d}"
    right = f"eta_{sign_power(ell + 1):+d}"
    return (
        CyclicElement(-epsilon(ell) * m, order, left),
        CyclicElement(-epsilon(ell) * n, order, right),
    )


def pullback_multiplier(pq: CoprimePair) -> int:
    """``k`` with ``f^{-1}_* gamma_0 = k mu_0``: ``n`` for even ``l``, ``m`` for odd ``l``."""
    amap = a_map_closed(pq)
    m, n = amap.mn.first, amap.mn.second
    return m if amap.swapped else n


def end_identification(pq: CoprimePair) -> dict:
    """Compare the two plumbings of ``L(p^2, pq - 1)`` end by end.

    Sends ``eta_{-1}`` to ``mu_0`` (the left end of the B-side chain) and
    checks that the far ends then correspond up to sign, so the map is one a
    chain-preserving diffeomorphism can induce.  Reports the image of
    ``gamma_0``, which should be ``+-n mu_0`` (even ``l``) or ``+-m mu_0``
    (odd ``l``).
    """
    amap = a_map_closed(pq)
    mn = amap.mn
    b_pres = h1_presentation(symmetric_chain(pq))
    a_pres = h1_presentation(a_side_chain(mn))
    order = b_pres.order
    # eta_{-1} is the left end for odd l, the right end for even l
    if amap.swapped:
        eta_minus, eta_plus = 1, a_pres.meridian_coeffs[-1]
    else:
        eta_minus, eta_plus = a_pres.meridian_coeffs[-1], 1
    inv = pow(eta_minus, -1, order)
    gamma0 = a_pres.meridian_coeffs[gamma0_position(mn)] * inv % order
    far_a = eta_plus * inv % order
    far_b = b_pres.meridian_coeffs[-1]
    k = pullback_multiplier(pq)
    return {
        "order": order,
        "far_end_a": far_a,
        "far_end_b": far_b,
        "ends_match": (far_a - far_b) % order == 0 or (far_a + far_b) % order == 0,
        "gamma0_image": gamma0,
        "multiplier": k,
        "gamma0_matches": (gamma0 - k) % order == 0 or (gamma0 + k) % order == 0,
    }

