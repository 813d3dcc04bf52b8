"""Negative continued fractions ``[c_1, ..., c_n] = c_1 - 1/(c_2 - ...)``.

Values are exact :class:`fractions.Fraction` objects.  The same coefficient
list doubles as the weight list of a linear plumbing, which is why
:class:`ContinuedFraction` is also exported as ``WeightedChain`` from
:mod:`lensball.plumbing`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Iterator, Sequence

from lensball.arith import (
    CoprimePair,
    Role,
    a_map_closed,
    euclidean_sequences,
    sign_power,
)


class DegenerateTail(ArithmeticError):
    """A tail of the continued fraction evaluates to zero."""


@dataclass(frozen=True)
class ContinuedFraction:
    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Iterable[int]):
        coeffs = tuple(int(c) for c in coefficients)
        if not coeffs:
            raise ValueError("a continued fraction needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coefficients)

    @classmethod
    def parse(cls, text: str) -> ContinuedFraction:
        """Read whitespace- or comma-separated integers."""
        return cls(int(tok) for tok in text.replace(",", " ").split())

    def evaluate(self) -> Fraction:
        return evaluate(self)

    def reversed(self) -> ContinuedFraction:
        return ContinuedFraction(reversed(self.coefficients))

    def negated(self) -> ContinuedFraction:
        return ContinuedFraction(-c for c in self.coefficients)


def evaluate(cf: Sequence[int]) -> Fraction:
    """Evaluate the tower from the innermost coefficient outward."""
    coeffs = list(cf)
    value = Fraction(coeffs[-1])
    for depth in range(len(coeffs) - 2, -1, -1):
        if value == 0:
            raise DegenerateTail(f"tail starting at position {depth + 2} evaluates to 0")
        value = coeffs[depth] - 1 / value
    return value


def det_sequence(cf: Sequence[int]) -> list[int]:
    """``[det C_1, ..., det C_n]`` for the leading tridiagonal minors.

    ``det C_k = c_k det C_{k-1} - det C_{k-2}`` with ``det C_0 = 1`` and
    ``det C_{-1} = 0``.
    """
    prev, cur = 0, 1
    out = []
    for c in cf:
        prev, cur = cur, c * cur - prev
        out.append(cur)
    return out


def determinant_pair(cf: Sequence[int]) -> tuple[int, int]:
    """``(det C, det C')`` where C' drops the first row and column.

    ``evaluate(cf) == det C / det C'`` whenever the left side is defined.
    The ratio of the two *leading* minors ``det C_n / det C_{n-1}`` is the
    value of the reversed fraction instead; the two coincide for the
    sign-antisymmetric chains built below.
    """
    coeffs = list(cf)
    full = det_sequence(coeffs)[-1]
    tail = det_sequence(coeffs[1:])[-1] if len(coeffs) > 1 else 1
    return full, tail


def negative_expansion(value: Fraction) -> ContinuedFraction:
    """The unique expansion with every coefficient ``<= -2``."""
    value = Fraction(value)
    if value > -2:
        raise ValueError(f"negative expansion needs a value <= -2, got {value}")
    coeffs = []
    while True:
        head = floor(value)
        coeffs.append(head)
        if head == value:
            return ContinuedFraction(coeffs)
        value = 1 / (head - value)


def symmetric_chain(pq: CoprimePair) -> ContinuedFraction:
    """``[-s_0, s_1, ..., (-1)^l r_l, 1, (-1)^(l+1) r_l, ..., -s_1, s_0]``.

    This is the plumbing read off from B_{p,q}; it evaluates to
    ``-p^2/(pq - 1)``.  Reading outward from the central 1, the k-th weight
    on the left is ``(-1)^(k+1) s_k`` and its mirror on the right carries the
    opposite sign; the node next to the centre uses ``r_l = s_{l+1}``.
    """
    if pq.role is not Role.PQ:
        raise ValueError("symmetric_chain expects a pq-pair")
    data = euclidean_sequences(pq)
    ell = data.ell
    left = [sign_power(k + 1) * data.s(k) for k in range(ell + 1)]
    left.append(sign_power(ell) * data.r(ell))
    right = [-w for w in reversed(left)]
    return ContinuedFraction(left + [1] + right)


def a_side_chain(mn: CoprimePair) -> ContinuedFraction:
    """The plumbing read off from A_{m,n}.

    ``[(-1)^l rho_l, (-1)^(l-1) sigma_l, ..., sigma_1, -sigma_0 - 1, 1,
    sigma_0 + 1, -sigma_1, ..., (-1)^(l+1) rho_l]``, built from the Euclidean
    data of ``(n, m)``.  For ``m = 1`` (``l = -1``) only the three central
    nodes remain.
    """
    if mn.role is not Role.MN:
        raise ValueError("a_side_chain expects an mn-pair")
    data = euclidean_sequences(mn)
    ell = data.ell
    left = []
    if ell >= 0:
        left.append(sign_power(ell) * data.r(ell))
        left.extend(sign_power(k + 1) * data.s(k) for k in range(ell, 0, -1))
    left.append(-data.s(0) - 1)
    right = [-w for w in reversed(left)]
    return ContinuedFraction(left + [1] + right)


def matched_chains(pq: CoprimePair) -> tuple[ContinuedFraction, ContinuedFraction]:
    """Both plumbings for ``(p, q)`` and its A-map partner."""
    return symmetric_chain(pq), a_side_chain(a_map_closed(pq).mn)
