import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adaptedbasis.smith import det, diagonal, identity, smith_normal_form

from oracles import determinantal_divisors, naive_invariant_factors


def _check(m):
    m = np.array(m, dtype=object)
    U, D, V = smith_normal_form(m)
    assert (U.dot(m).dot(V) == D).all()
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    d = diagonal(D)
    off = D.copy()
    for i in range(len(d)):
        off[i, i] = 0
    assert not off.any()
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[: len(nz)] == nz
    return d


def test_diag_2_3():
    assert _check([[2, 0], [0, 3]]) == [1, 6]


def test_identity_and_zero():
    assert _check(identity(3)) == [1, 1, 1]
    assert _check(np.zeros((2, 3), dtype=object)) == [0, 0]


def test_big_entries_do_not_overflow():
    big = 10**30
    assert _check([[big, 0], [0, big * 3]]) == [big, 3 * big]


def test_oracle_agrees_with_determinantal_divisors():
    rng = random.Random(11)
    for _ in range(150):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        assert naive_invariant_factors(m) == determinantal_divisors(m)


def test_thousand_random_matrices():
    rng = random.Random(2024)
    for _ in range(1000):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        assert _check(m) == naive_invariant_factors(m)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=1, max_size=6)
    )
)
def test_hypothesis_matrices(m):
    assert _check(m) == naive_invariant_factors(m)


def test_det():
    assert det([[2, 1], [1, 1]]) == 1
    assert det([[0, 1], [1, 0]]) == -1
    assert det(np.zeros((0, 0), dtype=object)) == 1
    with pytest.raises(ValueError):
        det([[1, 2, 3]])
