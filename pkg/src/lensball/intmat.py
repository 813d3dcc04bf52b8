"""Exact integer matrix routines: fraction-free determinant and Smith form.

These are deliberately generic (no tridiagonal shortcuts) so they can serve
as the independent check on the chain recursions elsewhere in the package.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def _copy(matrix: Sequence[Sequence[int]]) -> Matrix:
    rows = [list(map(int, row)) for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("expected a square matrix")
    return rows


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    a = _copy(matrix)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[list[int], Matrix]:
    """Return ``(divisors, U)`` with ``U A V = diag(divisors)``.

    ``divisors`` are non-negative and each divides the next.  Only the
    unimodular row transform ``U`` is tracked: it is what carries a meridian
    ``e_i`` of a surgery presentation to its coordinates ``U e_i`` in the
    diagonal cokernel.
    """
    a = _copy(matrix)
    n = len(a)
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_axpy(dst, src, k):  # row[dst] -= k * row[src]
        if k:
            ad, as_ = a[dst], a[src]
            for j in range(n):
                if as_[j]:
                    ad[j] -= k * as_[j]
            ud, us = u[dst], u[src]
            for j in range(n):
                if us[j]:
                    ud[j] -= k * us[j]

    def col_axpy(dst, src, k):  # col[dst] -= k * col[src]
        if k:
            for row in a:
                if row[src]:
                    row[dst] -= k * row[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    for t in range(n):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, n):
                row = a[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            pivot = a[t][t]
            done = True
            for i in range(t + 1, n):
                if a[i][t]:
                    row_axpy(i, t, a[i][t] // pivot)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    col_axpy(j, t, a[t][j] // pivot)
                    if a[t][j]:
                        done = False
            if not done:
                continue
            # divisibility: fold an offending row into the pivot row and retry
            bad = next(
                (i for i in range(t + 1, n) if any(a[i][j] % pivot for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            row_axpy(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return [a[i][i] for i in range(n)], u


def snf_order(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors (zeros mark free summands of the cokernel)."""
    divisors, _ = smith_normal_form(matrix)
    return divisors


def cyclic_coordinates(matrix: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """For a presentation matrix with finite cyclic cokernel ``Z/N``.

    Returns ``(N, coords)`` where ``coords[i]`` is the image of the i-th
    generator in ``Z/N`` under the isomorphism fixed by the Smith form.
    Raises ``ValueError`` if the cokernel is infinite or not cyclic.
    """
    divisors, u = smith_normal_form(matrix)
    if not divisors:
        raise ValueError("empty presentation")
    if any(d == 0 for d in divisors):
        raise ValueError("cokernel is infinite")
    if any(d != 1 for d in divisors[:-1]):
        raise ValueError(f"cokernel is not cyclic: {divisors}")
    order = divisors[-1]
    return order, [x % order for x in u[-1]]


def relative_coordinates(matrix: Sequence[Sequence[int]], base: int = 0) -> tuple[int, list[int]]:
    """Coordinates of every generator as multiples of generator ``base``."""
    order, coords = cyclic_coordinates(matrix)
    if order == 1:
        return 1, [0] * len(coords)
    if gcd(coords[base], order) != 1:
        raise ValueError(f"generator {base} does not generate the cokernel")
    inv = pow(coords[base], -1, order)
    return order, [c * inv % order for c in coords]
