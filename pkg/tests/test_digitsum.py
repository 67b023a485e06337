import pytest

from digitdrift.bitcore import carries, drift_s, s
from digitdrift.digitsum import SIGMA_ONE, cusick_sum_s, kappa, sigma_dist
from digitdrift.dyadic import Dyadic, pmf_mass, pmf_mean, pmf_variance
from digitdrift.oracle import oracle_sigma_table


def test_sigma_one():
    sig = sigma_dist(1)
    assert sig == SIGMA_ONE
    assert sig(1) == Dyadic(1, 1)
    for j in range(-20, 2):
        assert sig(j) == Dyadic(1, 2 - j)
    assert sig(2) == 0


def test_sigma_examples():
    assert sigma_dist(2) == sigma_dist(1)
    # one application of the odd rule: (sigma(1, -1) + sigma(2, 1)) / 2
    assert sigma_dist(3)(0) == (sigma_dist(1)(-1) + sigma_dist(2)(1)).ldexp(-1)
    assert sigma_dist(3)(0) == Dyadic(5, 4)


def test_sigma_against_oracle():
    for t in range(1, 48):
        sig = sigma_dist(t)
        for j, dens in oracle_sigma_table(t, 8).items():
            assert sig(j) == dens, (t, j)


def test_kappa_examples():
    assert [kappa(t) for t in range(1, 8)] == [2, 2, 3, 2, Dyadic(7, 1), 3, Dyadic(7, 1)]
    with pytest.raises(ValueError):
        kappa(0)
    with pytest.raises(ValueError):
        sigma_dist(0)


@pytest.mark.parametrize("t", [1, 3, 5, 11, 255, 1000, 65535])
def test_sigma_moments(t):
    sig = sigma_dist(t)
    assert pmf_mass(sig) == 1
    assert pmf_mean(sig) == 0
    assert pmf_variance(sig) == kappa(t)


def test_cusick_sum_s():
    assert cusick_sum_s(1) == Dyadic(3, 2)
    assert cusick_sum_s(2) == cusick_sum_s(1)
    assert all(cusick_sum_s(t) > Dyadic(1, 1) for t in range(1, 1 << 12))


def test_legendre_identity():
    for t in range(256):
        for n in range(256):
            assert drift_s(t, n) == s(t) - carries(t, n)
