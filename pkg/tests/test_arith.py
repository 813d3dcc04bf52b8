from math import gcd

import pytest
from hypothesis import given, strategies as st

from lensball.arith import (
    CoprimePair,
    Role,
    a_map_closed,
    a_map_subtractive,
    abs_det_a,
    bezout_cd,
    euclidean_sequences,
    matched_pq,
    sign_power,
)


def pq_pairs(max_p):
    return [(p, q) for p in range(3, max_p + 1) for q in range(1, p) if gcd(p, q) == 1 and p - q > q]


@st.composite
def pq_strategy(draw, max_p=2000):
    p = draw(st.integers(3, max_p))
    q = draw(st.integers(1, (p - 1) // 2))
    if gcd(p, q) != 1 or p - q <= q:
        q = 1
    return CoprimePair.pq(p, q)


class TestCoprimePair:
    def test_valid(self):
        pq = CoprimePair.pq(5, 2)
        assert pq.role is Role.PQ and pq.total == 5
        assert CoprimePair.mn(2, 3).total == 5

    @pytest.mark.parametrize("a,b", [(4, 2), (5, 3), (0, 1), (3, -1)])
    def test_rejects_bad_pq(self, a, b):
        with pytest.raises(ValueError):
            CoprimePair.pq(a, b)

    def test_rejects_bad_mn(self):
        with pytest.raises(ValueError):
            CoprimePair.mn(3, 2)
        with pytest.raises(ValueError):
            CoprimePair.mn(2, 4)


class TestEuclid:
    def test_five_two(self):
        data = euclidean_sequences(CoprimePair.pq(5, 2))
        assert data.remainders == (5, 2, 1, 0)
        assert data.quotients == (2, 2)
        assert data.ell == 0

    def test_eight_three(self):
        data = euclidean_sequences(CoprimePair.pq(8, 3))
        assert data.remainders == (8, 3, 2, 1, 0)
        assert data.quotients == (2, 1, 2)
        assert data.ell == 1
        assert data.r(-1) == 8 and data.r(data.ell) == 2 and data.s(2) == 2

    def test_q_one_is_degenerate(self):
        data = euclidean_sequences(CoprimePair.pq(7, 1))
        assert data.ell == -1
        assert data.remainders == (7, 1, 0)

    def test_mn_runs_on_n_m(self):
        data = euclidean_sequences(CoprimePair.mn(3, 4))
        assert data.remainders == (4, 3, 1, 0)

    def test_index_guard(self):
        data = euclidean_sequences(CoprimePair.pq(5, 2))
        with pytest.raises(IndexError):
            data.r(3)
        with pytest.raises(IndexError):
            data.s(-1)

    @given(pq_strategy())
    def test_reconstructs_fraction(self, pq):
        from fractions import Fraction

        assert euclidean_sequences(pq).as_fraction() == Fraction(pq.first, pq.second)


class TestAMap:
    @pytest.mark.parametrize(
        "pq,expected",
        [((5, 2), (2, 3)), ((7, 2), (3, 4)), ((8, 3), (3, 5)), ((3, 1), (1, 2)), ((7, 3), (2, 5))],
    )
    def test_closed_values(self, pq, expected):
        mn = a_map_closed(CoprimePair.pq(*pq)).mn
        assert (mn.first, mn.second) == expected

    def test_parity_swap(self):
        # l odd for (8, 3): A(5, 3) comes out as (n, m)
        amap = a_map_closed(CoprimePair.pq(8, 3))
        assert amap.swapped
        assert amap.a_value == (5, 3)
        assert a_map_subtractive(5, 3)[0] == (5, 3)

    def test_subtractive_small(self):
        assert a_map_subtractive(3, 2)[0] == (2, 3)
        assert a_map_subtractive(2, 1)[0] == (2, 1)
        assert a_map_subtractive(1, 1)[0] == (1, 1)

    def test_subtractive_rejects(self):
        with pytest.raises(ValueError):
            a_map_subtractive(4, 2)

    def test_closed_matches_subtractive(self):
        for p, q in pq_pairs(80):
            amap = a_map_closed(CoprimePair.pq(p, q))
            (m, n), (c_n, d_n) = a_map_subtractive(p - q, q)
            assert amap.a_value == (m, n), (p, q)
            assert -c_n * m + d_n * n == 1

    @given(pq_strategy())
    def test_partner_inverts(self, pq):
        assert matched_pq(a_map_closed(pq).mn) == pq

    def test_rho_is_mn_remainders(self):
        pq = CoprimePair.pq(19, 7)
        amap = a_map_closed(pq)
        data = euclidean_sequences(amap.mn)
        assert [data.r(i) for i in range(-1, amap.ell + 2)] == list(amap.rho)


class TestBezout:
    @pytest.mark.parametrize(
        "pq,cd",
        [((5, 2), (-1, 1)), ((8, 3), (2, -1)), ((7, 2), (-1, 1)), ((3, 1), (1, 0)), ((7, 3), (-2, 1))],
    )
    def test_values(self, pq, cd):
        bz = bezout_cd(CoprimePair.pq(*pq))
        assert (bz.c, bz.d) == cd

    @given(pq_strategy())
    def test_identity_and_difference(self, pq):
        amap = a_map_closed(pq)
        bz = bezout_cd(pq)
        m, n = amap.mn.first, amap.mn.second
        assert bz.c * m + bz.d * n == 1
        if amap.ell % 2:
            assert bz.c - bz.d == pq.second
        else:
            assert bz.d - bz.c == pq.second
        assert m + n == pq.first

    @given(pq_strategy())
    def test_sign_window(self, pq):
        bz = bezout_cd(pq)
        ell = a_map_closed(pq).ell
        if ell == -1:
            assert (bz.c, bz.d) == (1, 0)
        elif ell % 2 == 0:
            assert bz.c < 0 < bz.d
        else:
            assert bz.d < 0 < bz.c


def test_abs_det_recursion():
    data = euclidean_sequences(CoprimePair.pq(19, 7))
    dets = abs_det_a(data)
    # quotients 2, 1, 2, 2: |A_1| = s_1, |A_2| = s_2 s_1 + 1
    assert dets[-2] == 1 and dets[-1] == 0 and dets[0] == 1
    assert dets[1] == 1 and dets[2] == 3


def test_sign_power():
    assert [sign_power(k) for k in (-2, -1, 0, 1, 2)] == [1, -1, 1, -1, 1]
