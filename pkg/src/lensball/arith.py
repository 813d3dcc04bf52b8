"""Euclidean sequences, Yamada's A-map and the Bezout pair (c, d).

Two coprime pairs meet here.  A *pq-pair* ``(p, q)`` with ``p - q > q >= 1``
describes the ball B_{p,q}; an *mn-pair* ``(m, n)`` with ``n > m >= 1``
describes A_{m,n}.  Both bound L(p^2, pq - 1) when ``A(p - q, q)`` is
``(m, n)`` or ``(n, m)``.

Indices follow the usual bookkeeping: remainders run ``r_{-1} .. r_{l+2}``
and quotients ``s_0 .. s_{l+1}``, so the accessors below take the
mathematical index rather than a list offset.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


class Role(enum.Enum):
    PQ = "pq"
    MN = "mn"


@dataclass(frozen=True)
class CoprimePair:
    first: int
    second: int
    role: Role

    def __post_init__(self):
        a, b = self.first, self.second
        if not (isinstance(a, int) and isinstance(b, int)) or a < 1 or b < 1:
            raise ValueError(f"pair entries must be positive integers, got ({a}, {b})")
        if gcd(a, b) != 1:
            raise ValueError(f"({a}, {b}) is not coprime")
        if self.role is Role.PQ and not a - b > b:
            raise ValueError(f"pq-pair ({a}, {b}) must satisfy p - q > q >= 1")
        if self.role is Role.MN and not b > a:
            raise ValueError(f"mn-pair ({a}, {b}) must satisfy n > m >= 1")

    @classmethod
    def pq(cls, p: int, q: int) -> CoprimePair:
        return cls(p, q, Role.PQ)

    @classmethod
    def mn(cls, m: int, n: int) -> CoprimePair:
        return cls(m, n, Role.MN)

    @property
    def total(self) -> int:
        """``p`` for a pq-pair, ``m + n`` for an mn-pair."""
        if self.role is Role.PQ:
            return self.first
        return self.first + self.second


@dataclass(frozen=True)
class EuclideanData:
    remainders: tuple[int, ...]  # r_{-1}, r_0, ..., r_{l+2}
    quotients: tuple[int, ...]  # s_0, ..., s_{l+1}
    ell: int

    def r(self, i: int) -> int:
        if not -1 <= i <= self.ell + 2:
            raise IndexError(f"remainder index {i} outside -1..{self.ell + 2}")
        return self.remainders[i + 1]

    def s(self, i: int) -> int:
        if not 0 <= i <= self.ell + 1:
            raise IndexError(f"quotient index {i} outside 0..{self.ell + 1}")
        return self.quotients[i]

    def as_fraction(self) -> Fraction:
        """Rebuild ``r_{-1}/r_0`` from the quotients (regular continued fraction)."""
        value = Fraction(self.quotients[-1])
        for s in reversed(self.quotients[:-1]):
            value = s + 1 / value
        return value


@dataclass(frozen=True)
class BezoutData:
    c: int
    d: int


@dataclass(frozen=True)
class AMapData:
    """Output of the closed-form A-map, with the dual sequences kept around.

    ``sigma`` is indexed ``0..l`` and ``rho`` is indexed ``-1..l+1``; both are
    exposed through :meth:`sigma_at` / :meth:`rho_at`.  ``swapped`` records
    the parity bookkeeping: ``A(p - q, q)`` is ``(n, m)`` exactly when ``l`` is
    odd, while ``mn`` is always stored with ``n > m``.
    """

    mn: CoprimePair
    ell: int
    sigma: tuple[int, ...]
    rho: tuple[int, ...]

    def sigma_at(self, i: int) -> int:
        return self.sigma[i]

    def rho_at(self, i: int) -> int:
        return self.rho[i + 1]

    @property
    def swapped(self) -> bool:
        return self.ell % 2 == 1

    @property
    def a_value(self) -> tuple[int, int]:
        """The ordered pair ``A(p - q, q)``."""
        m, n = self.mn.first, self.mn.second
        return (n, m) if self.swapped else (m, n)


@lru_cache(maxsize=4096)
def euclidean_sequences(pair: CoprimePair) -> EuclideanData:
    """Run the Euclidean algorithm on ``(p, q)``, or on ``(n, m)`` for an mn-pair."""
    if pair.role is Role.PQ:
        big, small = pair.first, pair.second
    else:
        big, small = pair.second, pair.first
    remainders = [big, small]
    quotients = []
    while remainders[-1] != 0:
        quot, rem = divmod(remainders[-2], remainders[-1])
        quotients.append(quot)
        remainders.append(rem)
    # remainders ends ..., 1, 0 with the 0 at list offset l + 3
    ell = len(remainders) - 4
    return EuclideanData(tuple(remainders), tuple(quotients), ell)


def abs_det_a(data: EuclideanData) -> dict[int, int]:
    """``|det A_i|`` for ``i = -2..l`` where A_i is the signed tridiagonal matrix
    on ``s_1, -s_2, s_3, ...``.

    Uses ``|det A_i| = s_i |det A_{i-1}| + |det A_{i-2}|`` with ``A_{-1} = 0`` and
    ``A_0 = 1``; ``A_{-2} = 1`` is the value that keeps the recursion valid at
    ``i = 0`` and is needed only when ``l = -1``.
    """
    dets = {-2: 1, -1: 0, 0: 1}
    for i in range(1, data.ell + 1):
        dets[i] = data.s(i) * dets[i - 1] + dets[i - 2]
    return dets


@lru_cache(maxsize=4096)
def a_map_closed(pq: CoprimePair) -> AMapData:
    if pq.role is not Role.PQ:
        raise ValueError("a_map_closed expects a pq-pair")
    data = euclidean_sequences(pq)
    ell = data.ell
    sigma = [data.r(ell) - 1] + [data.s(ell - i + 1) for i in range(1, ell + 1)]
    rho = {ell + 2: 0, ell + 1: 1}
    if ell >= 0:
        rho[ell] = data.s(0)
    # the q = 1 case starts from rho_0 = 1, rho_1 = 0 and only rho_{-1} is built
    for i in range(ell - 1 if ell >= 0 else -1, -2, -1):
        rho[i] = rho[i + 1] * sigma[i + 1] + rho[i + 2]
    mn = CoprimePair.mn(rho[0], rho[-1])
    return AMapData(mn, ell, tuple(sigma), tuple(rho[i] for i in range(-1, ell + 2)))


def a_map_subtractive(a: int, b: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Yamada's original subtractive definition of ``A(a, b)``.

    Returns ``((m_N, n_N), (c_N, d_N))`` with ``-c_N m_N + d_N n_N = 1``.
    """
    if a < 1 or b < 1 or gcd(a, b) != 1:
        raise ValueError(f"A-map needs positive coprime arguments, got ({a}, {b})")
    m, n, c, d = 1, 1, 0, 1
    while not (a == 1 and b == 1):
        if a > b:
            a, m, d = a - b, m + n, d + c
        else:
            b, n, c = b - a, n + m, c + d
    return (m, n), (c, d)


@lru_cache(maxsize=4096)
def bezout_cd(pq: CoprimePair) -> BezoutData:
    """The distinguished solution of ``c m + d n = 1`` attached to ``(p, q)``.

    ``(-1)^l (-c, d) = (|det A_{l-1}| + (r_l - 1)|det A_l|, |det A_l|)``.
    When ``q = 1`` this gives ``(c, d) = (1, 0)``, which sits on the boundary
    of the usual sign window.
    """
    if pq.role is not Role.PQ:
        raise ValueError("bezout_cd expects a pq-pair")
    data = euclidean_sequences(pq)
    ell = data.ell
    dets = abs_det_a(data)
    x = dets[ell - 1] + (data.r(ell) - 1) * dets[ell]
    y = dets[ell]
    sign = -1 if ell % 2 else 1
    return BezoutData(-sign * x, sign * y)


def sign_power(k: int) -> int:
    """``(-1)^k`` for any integer ``k``."""
    return -1 if k % 2 else 1


def matched_pq(mn: CoprimePair) -> CoprimePair:
    """The pq-pair whose A-map image is ``mn`` (A is an involution)."""
    if mn.role is not Role.MN:
        raise ValueError("matched_pq expects an mn-pair")
    (x, y), _ = a_map_subtractive(mn.first, mn.second)
    q = min(x, y)
    return CoprimePair.pq(x + y, q)
