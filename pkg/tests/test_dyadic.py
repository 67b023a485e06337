import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from digitdrift.drift import c_dist
from digitdrift.dyadic import (
    Dyadic,
    TailedPMF,
    dy_cmp,
    pmf_cf,
    pmf_from_json,
    pmf_mass,
    pmf_mean,
    pmf_mix,
    pmf_partial_sum,
    pmf_second_moment,
    pmf_shift,
    pmf_to_json,
    pmf_variance,
)

B1 = TailedPMF.from_values({1: Dyadic(1, 2)}, tail=Dyadic(3, 3), k_cut=1)
A1 = TailedPMF.from_values({0: Fraction(1, 2), 1: Fraction(1, 2)})
DELTA = TailedPMF.point_mass(0)


# scalars

def test_dyadic_arithmetic():
    assert Dyadic(1, 1) + Dyadic(3, 3) == Dyadic(7, 3)
    zero = Dyadic(1) - Dyadic(1)
    assert (zero.num, zero.exp) == (0, 0)
    assert Dyadic(3, 3) * Dyadic(1, 1) == Dyadic(3, 4)
    assert Dyadic(3, 3).scale(Fraction(1, 2)) == Dyadic(3, 4)
    assert dy_cmp(Dyadic(1, 1), Dyadic(3, 3)) == 1
    assert Dyadic(6, 2) == Dyadic(3, 1)
    assert Dyadic(5, -2) == 20


def test_dyadic_rejects_non_dyadic_scale():
    with pytest.raises(ValueError):
        Dyadic(1).scale(Fraction(1, 3))


@given(st.integers(-10**6, 10**6), st.integers(0, 40), st.integers(-10**6, 10**6), st.integers(0, 40))
def test_dyadic_matches_fractions(a, ea, b, eb):
    x, y = Dyadic(a, ea), Dyadic(b, eb)
    fx, fy = Fraction(a, 2**ea), Fraction(b, 2**eb)
    assert (x + y).to_fraction() == fx + fy
    assert (x - y).to_fraction() == fx - fy
    assert (x * y).to_fraction() == fx * fy
    assert (x < y) == (fx < fy)
    z = x + y
    # normalized: odd numerator, or exponent 0
    assert z.num % 2 == 1 or z.exp == 0


# tail sums used by the closed-form moments

def test_geometric_tail_identities_symbolic():
    c = sympy.symbols("c", integer=True)
    j = sympy.symbols("j", integer=True, nonnegative=True)
    # substitute k = c - 1 - j, j >= 0
    for power, closed in [(0, 2**c), (1, (c - 2) * 2**c), (2, (c**2 - 4 * c + 6) * 2**c)]:
        term = (c - 1 - j) ** power * 2 ** (c - 1 - j)
        total = sympy.summation(sympy.expand(term), (j, 0, sympy.oo))
        assert sympy.simplify(total - closed) == 0


# canonical form

def test_canonical_absorbs_tail_law():
    # sigma_s(1, j) = 2^(j-2) for j <= 1 is a pure geometric law up to j = 1
    p = TailedPMF.from_values({1: Fraction(1, 2)}, tail=Fraction(1, 4), k_cut=1)
    assert p.nums == () and p.k_cut == 2
    assert p(1) == Dyadic(1, 1) and p(0) == Dyadic(1, 2) and p(2) == 0
    q = TailedPMF(-3, [0, 0, 1, 0, 0])
    assert q == DELTA.shift(-1)


def test_zero_measure():
    z = TailedPMF(5, [0, 0])
    assert z.k_cut == 0 and z.nums == () and pmf_mass(z) == 0


def test_negative_mass_rejected():
    with pytest.raises(ValueError):
        TailedPMF(0, [1, -1])


# shift and mix

def test_shift_examples():
    assert DELTA.shift(1) == TailedPMF.point_mass(1)
    assert pmf_shift(B1, 1)(2) == B1(1) == Dyadic(1, 2)
    assert pmf_shift(pmf_shift(B1, 3), -3) == B1


def test_mix_examples():
    assert pmf_mix(B1, B1) == B1
    c1 = pmf_mix(A1, B1)
    assert c1(0) == Dyadic(7, 4)
    assert pmf_mass(c1) == 1


def _pmfs():
    nums = st.lists(st.integers(0, 50), max_size=8)
    return st.builds(
        TailedPMF,
        st.integers(-6, 6),
        nums,
        st.integers(0, 20),
        st.integers(0, 8),
    )


@given(_pmfs(), _pmfs(), st.integers(-3, 3), st.integers(-3, 3))
def test_mix_is_pointwise_average(p, q, dp, dq):
    from digitdrift.dyadic import mix_shifted

    m = mix_shifted(p, dp, q, dq)
    for k in range(min(p.k_cut, q.k_cut) - 8, max(p.top, q.top) + 8):
        assert m(k) == (p(k - dp) + q(k - dq)).ldexp(-1)
    assert pmf_mass(m) == (pmf_mass(p) + pmf_mass(q)).ldexp(-1)
    # the left tail is still exactly geometric with ratio 2
    below = m.k_cut - 1
    assert m(below - 1).ldexp(1) == m(below)


@given(_pmfs(), st.integers(-5, 5))
def test_shift_is_translation(p, delta):
    q = pmf_shift(p, delta)
    for k in range(p.k_cut - 6, p.top + 6):
        assert q(k + delta) == p(k)
    assert pmf_mass(q) == pmf_mass(p)


@given(_pmfs())
def test_json_roundtrip(p):
    assert pmf_from_json(pmf_to_json(p)) == p


# moments

def test_moment_examples():
    assert pmf_mass(B1) == 1
    assert pmf_mean(B1) == Dyadic(-1, 1)
    assert pmf_variance(B1) == Dyadic(9, 2)


def test_moments_require_probability():
    with pytest.raises(ValueError):
        pmf_mean(TailedPMF(0, [1, 1]))


@st.composite
def probability_pmfs(draw):
    t = draw(st.integers(0, 1 << 12))
    p = pmf_shift(c_dist(t), draw(st.integers(-4, 4)))
    if draw(st.booleans()):
        p = pmf_mix(p, pmf_shift(B1, draw(st.integers(-4, 4))))
    return p


@settings(max_examples=60, deadline=None)
@given(probability_pmfs())
def test_variance_identity(p):
    m = pmf_mean(p)
    assert pmf_variance(p) == pmf_second_moment(p) - m * m
    # direct sum over a truncated support; the dropped tail is below 2^-60
    K = p.k_cut - 80
    ks = range(K, p.top)
    mean = sum(Fraction(k) * p(k).to_fraction() for k in ks)
    assert abs(mean - m.to_fraction()) < Fraction(1, 2**60)


# partial sums

def test_partial_sum_examples():
    c1 = pmf_mix(A1, B1)
    assert pmf_partial_sum(c1, 0) == Dyadic(13, 4)
    assert pmf_partial_sum(B1, None) == pmf_mass(B1)
    assert pmf_partial_sum(DELTA, 1) == 0


@given(_pmfs(), st.integers(-10, 10))
def test_partial_sum_matches_direct(p, k0):
    direct = sum((p(k) for k in range(k0, p.top + 1)), Dyadic(0))
    assert pmf_partial_sum(p, k0) == direct


# characteristic function

def test_cf_examples():
    c1 = pmf_mix(A1, B1)
    assert pmf_cf(c1, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert abs(pmf_cf(c1, math.pi)) < 1e-15
    th = np.linspace(-3, 3, 11)
    assert np.allclose(pmf_cf(DELTA, th), 1.0)


@given(_pmfs(), st.floats(-math.pi, math.pi))
def test_cf_against_truncated_series(p, theta):
    # |remainder| <= tau * 2^(k_trunc + 1)
    k_trunc = p.k_cut - 60
    series = sum(
        float(p(k)) * complex(math.cos(k * theta), math.sin(k * theta))
        for k in range(k_trunc, p.top)
    )
    bound = float(p.tau) * 2.0 ** (k_trunc + 1)
    assert abs(pmf_cf(p, theta) - series) <= 1e-12 + bound
