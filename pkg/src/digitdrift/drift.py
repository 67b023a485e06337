"""Exact distribution of d(t, n) = r(n + t) - r(n).

The six-component vector at base ``u`` holds the laws of ``d(t, 2n)`` and
``d(t, 2n + 1)`` (called ``a_t`` and ``b_t``) for ``t = 2u, 2u + 1, 2u + 2``.
Appending a binary digit to ``u`` maps the vector through a fixed linear
operator built from averages and unit shifts, so any ``u`` is reached by a
fold over its digits starting from the base vector at ``u = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Tuple

from .bitcore import msb_first
from .dyadic import (
    Dyadic,
    TailedPMF,
    mix_shifted,
    pmf_mix,
    pmf_partial_sum,
    pmf_shift,
)

DistVector6 = Tuple[TailedPMF, TailedPMF, TailedPMF, TailedPMF, TailedPMF, TailedPMF]

# Each output component is (x[i] shifted by di + x[j] shifted by dj) / 2.
# A shift by +1 corresponds to a factor e(theta) in the characteristic
# function matrices, -1 to e(-theta).
OPERATOR_ROWS = {
    0: (
        (0, 0, 1, 0),
        (0, 0, 1, 0),
        (0, 0, 1, 1),
        (2, 0, 3, -1),
        (2, 0, 3, 0),
        (2, 1, 3, -1),
    ),
    1: (
        (2, 0, 3, 0),
        (2, 1, 3, -1),
        (2, 1, 3, 0),
        (4, 0, 5, -1),
        (4, 0, 5, 0),
        (4, 0, 5, 0),
    ),
}

# moment recursion: V_{2t+bit} = P_bit V_t / 2 + AFFINE[bit] / 4
MOMENT_PAIRS = {0: ((0, 1),) * 3 + ((2, 3),) * 3, 1: ((2, 3),) * 3 + ((4, 5),) * 3}
AFFINE = {0: (0, 0, 1, 4, 1, 9), 1: (1, 9, 4, 1, 0, 0)}
MEANS = (Dyadic(0), Dyadic(0), Dyadic(1, 1), Dyadic(-1, 1), Dyadic(0), Dyadic(0))
V0 = tuple(Dyadic(x, 2) for x in (0, 0, 1, 9, 6, 14))


def apply_dist_op(bit: int, v: DistVector6) -> DistVector6:
    """Vector at base ``2u + bit`` from the vector at base ``u``."""
    rows = OPERATOR_ROWS[bit]
    return tuple(mix_shifted(v[i], di, v[j], dj) for i, di, j, dj in rows)


def _initial_vector() -> DistVector6:
    delta = TailedPMF.point_mass(0)
    a1 = TailedPMF.from_values({0: Dyadic(1, 1), 1: Dyadic(1, 1)})
    # b_1(1) = 1/4, b_1(k) = 3 * 2^(k-3) for k < 1
    b1 = TailedPMF.from_values({1: Dyadic(1, 2)}, tail=Dyadic(3, 3), k_cut=1)
    # a_2, b_2 depend only on a_1, b_1 through the bit-0 operator
    partial = (delta, delta, a1, b1, delta, delta)
    a2, b2 = apply_dist_op(0, partial)[4:]
    return (delta, delta, a1, b1, a2, b2)


BASE_VECTOR: DistVector6 = _initial_vector()


def dist_vector(u: int) -> DistVector6:
    v = BASE_VECTOR
    for bit in msb_first(u):
        v = apply_dist_op(bit, v)
    return v


def walk_dist_vectors(depth: int, prefix: int = 0) -> Iterator[Tuple[int, DistVector6]]:
    """Yield ``(u, dist_vector(u))`` for every ``u`` in ``prefix * 2**depth + [0, 2**depth)``.

    Each vector is derived from its parent, so the cost is one operator
    application per node instead of one per digit. Order is ascending in ``u``.
    """
    root = dist_vector(prefix)

    def visit(u: int, vec: DistVector6, level: int):
        if level == depth:
            yield u, vec
            return
        for bit in (0, 1):
            yield from visit(2 * u + bit, apply_dist_op(bit, vec), level + 1)

    yield from visit(prefix, root, 0)


def ab_from_vector(t: int, vec: DistVector6) -> Tuple[TailedPMF, TailedPMF]:
    return (vec[2], vec[3]) if t & 1 else (vec[0], vec[1])


def ab_dist(t: int) -> Tuple[TailedPMF, TailedPMF]:
    """Laws of ``d(t, 2n)`` and ``d(t, 2n + 1)``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return ab_from_vector(t, dist_vector(t >> 1))


def c_dist(t: int) -> TailedPMF:
    """Law of ``d(t, n)`` for ``n`` drawn with asymptotic density."""
    if t == 0:
        return TailedPMF.point_mass(0)
    return pmf_mix(*ab_dist(t))


def c_from_vector(t: int, vec: DistVector6) -> TailedPMF:
    if t == 0:
        return TailedPMF.point_mass(0)
    return pmf_mix(*ab_from_vector(t, vec))


def cusick_sum(t: int) -> Dyadic:
    """Exact density of ``{n : r(n + t) >= r(n)}``."""
    return pmf_partial_sum(c_dist(t), 0)


# Variance sequence


@lru_cache(maxsize=1 << 16)
def _v_pair(t: int) -> Tuple[Dyadic, Dyadic]:
    if t == 0:
        return Dyadic(0), Dyadic(3, 1)
    m = t >> 1
    vm, vm1 = _v_pair(m)
    odd = (vm + vm1).ldexp(-1) + Dyadic(3, 2)
    if t & 1:
        return odd, vm1 + ((m + 1) & 1)
    return vm + (m & 1), odd


def v_seq(t: int) -> Dyadic:
    """Variance ``v_t``: ``v_0 = 0``, ``v_1 = 3/2``, ``v_4t = v_2t``,
    ``v_4t+2 = v_2t+1 + 1``, ``v_2t+1 = (v_t + v_t+1)/2 + 3/4``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return _v_pair(t)[0]


class MomentVector(NamedTuple):
    means: Tuple[Dyadic, ...]
    variances: Tuple[Dyadic, ...]


def apply_moment_op(bit: int, variances):
    pairs = MOMENT_PAIRS[bit]
    return tuple(
        (variances[i] + variances[j]).ldexp(-1) + Dyadic(c, 2)
        for (i, j), c in zip(pairs, AFFINE[bit])
    )


def moment_vector(u: int) -> MomentVector:
    var = V0
    for bit in msb_first(u):
        var = apply_moment_op(bit, var)
    return MomentVector(MEANS, var)


def variance_from_moments(t: int, variances) -> Dyadic:
    """Variance of ``c_t`` from the ``a``/``b`` variances at base ``t // 2``."""
    if t & 1:
        return (variances[2] + variances[3]).ldexp(-1) + Dyadic(1, 2)
    return (variances[0] + variances[1]).ldexp(-1)


def alpha_beta_variances(t: int) -> Tuple[Dyadic, Dyadic]:
    var = moment_vector(t >> 1).variances
    return (var[2], var[3]) if t & 1 else (var[0], var[1])
