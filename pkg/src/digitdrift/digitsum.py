"""Law of s(n + t) - s(n) and its variance kappa(t).

Used as a reference point for the 11-block engine: the same tail class,
the same kind of pair recursion, but a much better known answer.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Tuple

from .dyadic import Dyadic, TailedPMF, mix_shifted, pmf_partial_sum

# sigma(1, j) = 2^(j-2) for j <= 1, zero above
SIGMA_ONE = TailedPMF.from_values({1: Dyadic(1, 1)}, tail=Dyadic(1, 2), k_cut=1)


def _check(t: int) -> None:
    if t < 1:
        raise ValueError("the digit-sum recursion starts at t = 1")


@lru_cache(maxsize=1 << 14)
def _sigma_pair(t: int) -> Tuple[TailedPMF, TailedPMF]:
    if t == 1:
        return SIGMA_ONE, SIGMA_ONE
    m = t >> 1
    lo, hi = _sigma_pair(m)
    # sigma(2m+1, j) = sigma(m, j-1)/2 + sigma(m+1, j+1)/2
    odd = mix_shifted(lo, 1, hi, -1)
    if t & 1:
        return odd, hi
    return lo, odd


def sigma_dist(t: int) -> TailedPMF:
    _check(t)
    return _sigma_pair(t)[0]


@lru_cache(maxsize=1 << 14)
def _kappa_pair(t: int) -> Tuple[Dyadic, Dyadic]:
    if t == 1:
        return Dyadic(2), Dyadic(2)
    m = t >> 1
    lo, hi = _kappa_pair(m)
    odd = (lo + hi).ldexp(-1) + 1
    if t & 1:
        return odd, hi
    return lo, odd


def kappa(t: int) -> Dyadic:
    """kappa(1) = 2, kappa(2t) = kappa(t), kappa(2t+1) = (kappa(t) + kappa(t+1))/2 + 1."""
    _check(t)
    return _kappa_pair(t)[0]


def cusick_sum_s(t: int) -> Dyadic:
    return pmf_partial_sum(sigma_dist(t), 0)
