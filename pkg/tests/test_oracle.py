from collections import Counter
from fractions import Fraction

import pytest

from digitdrift.bitcore import drift, drift_s
from digitdrift.drift import ab_dist, c_dist
from digitdrift.dyadic import Dyadic
from digitdrift.oracle import (
    _ab_counts,
    oracle_ab,
    oracle_ab_table,
    oracle_c,
    oracle_c_table,
    oracle_sigma,
    period_exponent,
)


def test_oracle_examples():
    assert oracle_ab(1, 0) == (Dyadic(1, 1), Dyadic(3, 3))
    assert oracle_ab(0, 0) == (1, 1)
    assert oracle_ab(1, -2)[1] == Dyadic(3, 5)
    assert oracle_c(1, 0) == Dyadic(7, 4)
    assert oracle_c(1, 1) == Dyadic(3, 3)
    assert oracle_c(1, 2) == 0
    assert oracle_c(2, 1) == Dyadic(5, 4)
    assert oracle_ab(3, 0) == (Dyadic(3, 4), Dyadic(11, 5))
    assert oracle_ab(4, 1) == oracle_ab(8, 1) == (Dyadic(5, 4), Dyadic(5, 4))


def test_oracle_c_table_frozen():
    expected = {-4: (3, 7), -3: (3, 6), -2: (1, 4), -1: (5, 5), 0: (9, 5),
                1: (7, 5), 2: (1, 3), 3: (1, 4), 4: (0, 0)}
    assert oracle_c_table(5, 4) == {k: Dyadic(*v) for k, v in expected.items()}


def test_sigma_oracle_examples():
    assert oracle_sigma(1, 1) == Dyadic(1, 1)
    assert oracle_sigma(1, -1) == Dyadic(1, 3)
    for j in range(-5, 4):
        assert oracle_sigma(2, j) == oracle_sigma(1, j)
    assert oracle_sigma(3, 0) == Dyadic(5, 4)
    assert oracle_sigma(3, 2) == Dyadic(1, 2)


@pytest.mark.parametrize("t", [0, 1, 2, 3, 5, 6, 9])
def test_bulk_counts_equal_plain_enumeration(t):
    M = 9
    a, b = _ab_counts(t, M)
    plain_a = Counter(drift(t, 2 * x) for x in range(1 << M))
    plain_b = Counter(drift(t, 2 * x + 1) for x in range(1 << M))
    assert +a == plain_a and +b == plain_b


def test_period_is_stable_past_threshold():
    # the counting frequency at 2^M is already the density
    t, kmax = 11, 3
    M = period_exponent(t, kmax)
    x_max = 1 << M
    freq = Counter(drift(t, 2 * x) for x in range(x_max))
    for k, (a, _) in oracle_ab_table(t, kmax).items():
        assert Fraction(freq[k], x_max) == a.to_fraction()


def test_sigma_plain_enumeration():
    n_max = 1 << 14
    freq = Counter(drift_s(5, n) for n in range(n_max))
    for j in range(-4, 3):
        assert Fraction(freq[j], n_max) == oracle_sigma(5, j).to_fraction()


def test_engine_matches_oracle_small():
    for t in range(64):
        a, b = ab_dist(t)
        c = c_dist(t)
        for k, (oa, ob) in oracle_ab_table(t, 8).items():
            assert (a(k), b(k)) == (oa, ob), (t, k)
            assert c(k) == (oa + ob).ldexp(-1)
