import random
from math import gcd

import pytest

from lensball.arith import CoprimePair, a_map_closed, euclidean_sequences
from lensball.contfrac import symmetric_chain
from lensball.plumbing import linking_matrix
from lensball.spin import (
    ALL_LABELS,
    SpinLabel,
    a_surgery_matrix,
    admissible_labels,
    b_surgery_matrix,
    canonical_label,
    characteristic_sublinks,
    enumerate_characteristic_sublinks,
    exponent_parities,
    induced_spin,
    is_characteristic,
    t_closed_form,
    t_final_even_p,
    t_transport,
)


def pq_pairs(max_p):
    return [
        CoprimePair.pq(p, q) for p in range(3, max_p + 1) for q in range(1, p) if gcd(p, q) == 1 and p - q > q
    ]


def test_label_validation():
    with pytest.raises(ValueError):
        SpinLabel(0, 1)
    assert str(SpinLabel(1, -1)) == "(+1,-1)"
    assert tuple(SpinLabel(-1, 1)) == (-1, 1)


class TestCharacteristic:
    def test_unknots(self):
        assert [s.membership for s in characteristic_sublinks([[0]])] == [(1,), (-1,)]
        assert [s.membership for s in characteristic_sublinks([[1]])] == [(-1,)]

    def test_five_two_chain_unique(self):
        subs = characteristic_sublinks(linking_matrix(symmetric_chain(CoprimePair.pq(5, 2))))
        assert len(subs) == 1

    def test_gf2_matches_enumeration(self):
        rng = random.Random(3)
        for _ in range(300):
            n = rng.randint(1, 6)
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] = m[j][i] = rng.randint(-4, 4)
            fast = characteristic_sublinks(m)
            assert fast == enumerate_characteristic_sublinks(m)
            assert all(is_characteristic(m, s.membership) for s in fast)
            assert fast  # the diagonal always lies in the image mod 2

    def test_component_indices(self):
        sub = characteristic_sublinks([[1, 0], [0, 2]])[0]
        assert sub.components() == [0]


class TestAdmissible:
    def test_odd_p(self):
        assert admissible_labels(CoprimePair.pq(5, 2)) == [SpinLabel(-1, 1)]
        assert admissible_labels(CoprimePair.pq(7, 3)) == [SpinLabel(1, 1)]

    def test_even_p(self):
        assert admissible_labels(CoprimePair.pq(8, 3)) == [SpinLabel(1, -1), SpinLabel(-1, -1)]

    def test_counts_and_formula(self):
        for pq in pq_pairs(80):
            labels = admissible_labels(pq)
            if pq.first % 2:
                assert labels == [SpinLabel((-1) ** (pq.second + 1), 1)]
            else:
                assert labels == [SpinLabel(1, -1), SpinLabel(-1, -1)]

    def test_a_side(self):
        assert admissible_labels(CoprimePair.mn(2, 3)) == [SpinLabel(1, 1)]
        assert len(admissible_labels(CoprimePair.mn(3, 5))) == 2

    def test_matrices(self):
        assert b_surgery_matrix(CoprimePair.pq(5, 2)) == [[0, 5], [5, 9]]
        assert a_surgery_matrix(CoprimePair.mn(2, 3)) == [[0, 5], [5, 6]]

    def test_canonical(self):
        assert canonical_label(CoprimePair.pq(8, 3)) == SpinLabel(1, -1)
        assert canonical_label(CoprimePair.pq(5, 2)) == SpinLabel(-1, 1)


class TestTransport:
    def test_five_two(self):
        assert t_transport(CoprimePair.pq(5, 2), SpinLabel(1, -1)) == [1, 1]
        assert t_closed_form(CoprimePair.pq(5, 2), SpinLabel(1, -1), 1) == 1

    def test_eight_three(self):
        pq = CoprimePair.pq(8, 3)
        label = SpinLabel(-1, -1)
        ts = t_transport(pq, label)
        assert ts == [-1, 1, 1]
        assert [t_closed_form(pq, label, j) for j in (1, 2)] == ts[1:]

    def test_seven_two(self):
        pq = CoprimePair.pq(7, 2)
        label = SpinLabel(-1, -1)
        assert t_closed_form(pq, label, 1) == t_transport(pq, label)[1]

    def test_even_p_needs_t1_minus(self):
        with pytest.raises(ValueError):
            t_transport(CoprimePair.pq(8, 3), SpinLabel(1, 1))

    def test_closed_form_index(self):
        with pytest.raises(IndexError):
            t_closed_form(CoprimePair.pq(5, 2), SpinLabel(1, 1), 2)

    def test_closed_form_all_labels(self):
        for pq in pq_pairs(80):
            ell = euclidean_sequences(pq).ell
            labels = ALL_LABELS if pq.first % 2 else admissible_labels(pq)
            for label in labels:
                ts = t_transport(pq, label)
                assert len(ts) == ell + 2
                for j in range(1, ell + 2):
                    assert ts[j] == t_closed_form(pq, label, j), (pq, label, j)

    def test_exponent_parities(self):
        for pq in pq_pairs(60):
            amap = a_map_closed(pq)
            pars = exponent_parities(pq)
            for j, (a, b, c) in enumerate(pars):
                if j:
                    assert b == amap.rho_at(amap.ell + 1 - j)
                for label in ALL_LABELS if pq.first % 2 else admissible_labels(pq):
                    assert t_transport(pq, label)[j] == (-1) ** a * label.t0**b * label.t1**c


class TestFinalValue:
    def test_eight_three(self):
        pq = CoprimePair.pq(8, 3)
        assert t_final_even_p(pq, SpinLabel(1, -1)) == -1
        assert t_final_even_p(pq, SpinLabel(-1, -1)) == 1

    def test_four_one(self):
        pq = CoprimePair.pq(4, 1)
        assert t_final_even_p(pq, SpinLabel(1, -1)) == 1
        assert t_transport(pq, SpinLabel(1, -1))[-1] == 1

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            t_final_even_p(CoprimePair.pq(5, 2), SpinLabel(1, 1))

    def test_matches_transport(self):
        for pq in pq_pairs(120):
            if pq.first % 2 == 0:
                for label in admissible_labels(pq):
                    assert t_transport(pq, label)[-1] == t_final_even_p(pq, label)


class TestInducedSpin:
    def test_examples(self):
        for pq in pq_pairs(30):
            if pq.first % 2:
                assert induced_spin(pq, SpinLabel(1, 1)) == SpinLabel(1, 1)
        assert induced_spin(CoprimePair.pq(8, 3), SpinLabel(1, -1)) == SpinLabel(-1, -1)
        assert induced_spin(CoprimePair.pq(5, 2), SpinLabel(1, -1)) == SpinLabel(-1, -1)

    def test_bijects_onto_a_side(self):
        for pq in pq_pairs(80):
            images = {induced_spin(pq, lab) for lab in admissible_labels(pq)}
            assert images == set(admissible_labels(a_map_closed(pq).mn))
