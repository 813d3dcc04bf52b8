"""Spin structures on surgered 3-manifolds, recorded as characteristic sublinks.

Labels follow the +-1 convention: a component carries ``-1`` exactly when it
lies in the characteristic sublink.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from lensball.arith import (
    CoprimePair,
    Role,
    a_map_closed,
    abs_det_a,
    bezout_cd,
    euclidean_sequences,
    sign_power,
)


@dataclass(frozen=True)
class SpinLabel:
    t0: int
    t1: int

    def __post_init__(self):
        if self.t0 not in (1, -1) or self.t1 not in (1, -1):
            raise ValueError(f"spin labels are +-1, got ({self.t0}, {self.t1})")

    def __iter__(self):
        return iter((self.t0, self.t1))

    def __str__(self) -> str:
        return f"({self.t0:+d},{self.t1:+d})"


ALL_LABELS = tuple(SpinLabel(a, b) for a in (1, -1) for b in (1, -1))


@dataclass(frozen=True)
class CharSublink:
    membership: tuple[int, ...]

    def components(self) -> list[int]:
        return [i for i, t in enumerate(self.membership) if t == -1]


def is_characteristic(matrix: Sequence[Sequence[int]], membership: Sequence[int]) -> bool:
    """``lk(K, L') == lk(K, K) mod 2`` for every component ``K``."""
    inside = [t == -1 for t in membership]
    for i, row in enumerate(matrix):
        lk = sum(row[j] for j in range(len(row)) if inside[j])
        if (lk - row[i]) % 2:
            return False
    return True


def characteristic_sublinks(matrix: Sequence[Sequence[int]]) -> list[CharSublink]:
    """All characteristic sublinks, by solving ``M x = diag(M)`` over GF(2)."""
    n = len(matrix)
    # each row packed as an int: bits 0..n-1 are coefficients, bit n the rhs
    rows = []
    for i, row in enumerate(matrix):
        bits = sum(1 << j for j in range(n) if row[j] % 2)
        if row[i] % 2:
            bits |= 1 << n
        rows.append(bits)
    pivots = []
    r = 0
    for col in range(n):
        pick = next((k for k in range(r, n) if rows[k] >> col & 1), None)
        if pick is None:
            continue
        rows[r], rows[pick] = rows[pick], rows[r]
        for k in range(n):
            if k != r and rows[k] >> col & 1:
                rows[k] ^= rows[r]
        pivots.append(col)
        r += 1
    if any(rows[k] == 1 << n for k in range(r, n)):
        return []  # not reachable for a symmetric integer matrix
    free = [c for c in range(n) if c not in pivots]
    out = []
    for choice in product((0, 1), repeat=len(free)):
        x = [0] * n
        for c, v in zip(free, choice):
            x[c] = v
        for k, col in enumerate(pivots):
            bit = rows[k] >> n & 1
            for c in free:
                if rows[k] >> c & 1:
                    bit ^= x[c]
            x[col] = bit
        out.append(CharSublink(tuple(-1 if v else 1 for v in x)))
    out.sort(key=lambda s: s.membership, reverse=True)
    return out


def enumerate_characteristic_sublinks(matrix: Sequence[Sequence[int]]) -> list[CharSublink]:
    """Exhaustive search over all ``2^n`` sublinks; meant for small ``n``."""
    n = len(matrix)
    found = [
        CharSublink(m) for m in product((1, -1), repeat=n) if is_characteristic(matrix, m)
    ]
    found.sort(key=lambda s: s.membership, reverse=True)
    return found


def b_surgery_matrix(pq: CoprimePair) -> list[list[int]]:
    """B_{p,q} with its 1-handle surgered: components ``(K_0, K_1)``."""
    p, q = pq.first, pq.second
    return [[0, p], [p, p * q - 1]]


def a_surgery_matrix(mn: CoprimePair) -> list[list[int]]:
    """A_{m,n} with its 1-handle surgered: components ``(K_0, K_1)``."""
    m, n = mn.first, mn.second
    return [[0, m + n], [m + n, m * n]]


def admissible_labels(pair: CoprimePair) -> list[SpinLabel]:
    """Labels ``(t0, t1)`` that are genuine spin structures on the boundary."""
    return list(_admissible(pair))


@lru_cache(maxsize=4096)
def _admissible(pair: CoprimePair) -> tuple[SpinLabel, ...]:
    matrix = b_surgery_matrix(pair) if pair.role is Role.PQ else a_surgery_matrix(pair)
    return tuple(SpinLabel(*s.membership) for s in characteristic_sublinks(matrix))


def canonical_label(pq: CoprimePair) -> SpinLabel:
    """The spin structure used for Gamma: the unique one for odd ``p``, ``(1, -1)`` for even ``p``."""
    if pq.first % 2 == 0:
        return SpinLabel(1, -1)
    return admissible_labels(pq)[0]


def _check_parity(pq: CoprimePair, label: SpinLabel):
    if pq.first % 2 == 0 and label.t1 != -1:
        raise ValueError(f"p = {pq.first} is even, so t1 must be -1")


def t_transport(pq: CoprimePair, label: SpinLabel) -> list[int]:
    """``[T_0, ..., T_{l+1}]`` from ``T_j = (-T_{j-1} t1^{r_{j-1}})^{s_{j-1}} T_{j-2}``.

    ``T_{-1}`` is taken to be 1 and ``T_0 = t0``.
    """
    if pq.role is not Role.PQ:
        raise ValueError("t_transport expects a pq-pair")
    _check_parity(pq, label)
    data = euclidean_sequences(pq)
    t0, t1 = label
    prev, cur = 1, t0
    out = [cur]
    for j in range(1, data.ell + 2):
        prev, cur = cur, (-cur * t1 ** data.r(j - 1)) ** data.s(j - 1) * prev
        out.append(cur)
    return out


def t_closed_form(pq: CoprimePair, label: SpinLabel, j: int) -> int:
    """``T_j = (-1)^(1 + det A_{j-1}) (-t0)^rho_{l+1-j} t1^(p det A_{j-1} + j r_j)``."""
    _check_parity(pq, label)
    data = euclidean_sequences(pq)
    if not 1 <= j <= data.ell + 1:
        raise IndexError(f"closed form index {j} outside 1..{data.ell + 1}")
    det = abs_det_a(data)[j - 1]
    rho = a_map_closed(pq).rho_at(data.ell + 1 - j)
    t0, t1 = label
    return sign_power(1 + det) * (-t0) ** rho * t1 ** (pq.first * det + j * data.r(j))


def exponent_parities(pq: CoprimePair) -> list[tuple[int, int, int]]:
    """Exponents ``(a_j, b_j, c_j)`` with ``T_j = (-1)^a_j t0^b_j t1^c_j``.

    Runs ``a_j = s_{j-1}(a_{j-1} + 1) + a_{j-2}``, ``b_j = s_{j-1} b_{j-1} + b_{j-2}``
    and ``c_j = s_{j-1}(c_{j-1} + r_{j-1}) + c_{j-2}`` from the trivial
    exponents at ``j = -1`` and ``(0, 1, 0)`` at ``j = 0``.
    """
    data = euclidean_sequences(pq)
    prev, cur = (0, 0, 0), (0, 1, 0)
    out = [cur]
    for j in range(1, data.ell + 2):
        s, r = data.s(j - 1), data.r(j - 1)
        nxt = (
            s * (cur[0] + 1) + prev[0],
            s * cur[1] + prev[1],
            s * (cur[2] + r) + prev[2],
        )
        prev, cur = cur, nxt
        out.append(cur)
    return out


def t_final_even_p(pq: CoprimePair, label: SpinLabel) -> int:
    """``T_{l+1} = (-1)^(c + l) t0`` when ``p`` is even."""
    if pq.first % 2:
        raise ValueError(f"p = {pq.first} is odd")
    _check_parity(pq, label)
    c = bezout_cd(pq).c
    return sign_power(c + euclidean_sequences(pq).ell) * label.t0


def induced_spin(pq: CoprimePair, label: SpinLabel) -> SpinLabel:
    """Image of the spin structure ``(t0, t1)`` under the boundary diffeomorphism.

    ``v0 = ((-1)^(c+l) t0 + t1 + (-1)^(c+l+1) t0 t1 + 1)/2`` and ``v1 = t1``.
    """
    _check_parity(pq, label)
    e = sign_power(bezout_cd(pq).c + euclidean_sequences(pq).ell)
    t0, t1 = label
    v0, rem = divmod(e * t0 + t1 - e * t0 * t1 + 1, 2)
    assert rem == 0
    return SpinLabel(v0, t1)
