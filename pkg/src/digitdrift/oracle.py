"""Brute-force densities by counting, sharing nothing with the recursions.

``#{x < 2^M : d(t, 2x) = k}`` is counted by walking residue classes of ``n``
modulo growing powers of two.  Once adding ``t`` to a residue ``p`` (mod
``2^m``) produces no carry out of the window and the top window bit is the
same in ``p`` and ``p + t``, every integer ``n = p + 2^m x`` has the same
drift, so the whole class is counted at once from a direct evaluation of
``r`` on ``p``.  Classes that never resolve are counted one integer at a
time, so the result is exactly the brute-force count.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Dict, Optional, Tuple

from .bitcore import r, s
from .dyadic import Dyadic


class OracleError(RuntimeError):
    """Counting did not stabilize under a larger period."""


def _resolved_r(p: int, t: int, m: int) -> bool:
    q = p + t
    if q >> m:
        return False
    return (q >> (m - 1)) & 1 == (p >> (m - 1)) & 1


def _resolved_s(p: int, t: int, m: int) -> bool:
    return not (p + t) >> m


def _histogram(
    t: int,
    bits: int,
    weight: Callable[[int], int],
    resolved: Callable[[int, int, int], bool],
    low_bit: Optional[int] = None,
) -> Counter:
    """Counter of ``weight(n + t) - weight(n)`` over ``n < 2^bits``.

    With ``low_bit`` set, only ``n`` of that parity are visited.
    """
    hist: Counter = Counter()
    stack = [(low_bit, 1)] if low_bit is not None else [(0, 0)]
    while stack:
        p, m = stack.pop()
        if m == bits:
            hist[weight(p + t) - weight(p)] += 1
        elif m and resolved(p, t, m):
            hist[weight(p + t) - weight(p)] += 1 << (bits - m)
        else:
            stack.append((p, m + 1))
            stack.append((p | (1 << m), m + 1))
    return hist


def period_exponent(t: int, kmax: int) -> int:
    """Counting period ``2^M`` used for values ``|k| <= kmax``."""
    return kmax + 2 * t.bit_length() + 2


def _ab_counts(t: int, M: int) -> Tuple[Counter, Counter]:
    # x < 2^M  <->  n = 2x + parity < 2^(M+1)
    return (
        _histogram(t, M + 1, r, _resolved_r, low_bit=0),
        _histogram(t, M + 1, r, _resolved_r, low_bit=1),
    )


def oracle_ab_table(t: int, kmax: int) -> Dict[int, Tuple[Dyadic, Dyadic]]:
    """Exact ``(a_t(k), b_t(k))`` for all ``|k| <= kmax``.

    Raises :class:`OracleError` when the counts at periods ``2^M`` and
    ``2^(M+1)`` disagree for some ``k`` in range.
    """
    M = period_exponent(t, kmax)
    a0, b0 = _ab_counts(t, M)
    a1, b1 = _ab_counts(t, M + 1)
    table = {}
    for k in range(-kmax, kmax + 1):
        a = Dyadic(a0[k], M)
        b = Dyadic(b0[k], M)
        if a != Dyadic(a1[k], M + 1) or b != Dyadic(b1[k], M + 1):
            raise OracleError(f"density of d({t}, .) = {k} not stable at M = {M}")
        table[k] = (a, b)
    return table


def oracle_ab(t: int, k: int) -> Tuple[Dyadic, Dyadic]:
    return oracle_ab_table(t, abs(k))[k]


def oracle_c_table(t: int, kmax: int) -> Dict[int, Dyadic]:
    return {k: (a + b).ldexp(-1) for k, (a, b) in oracle_ab_table(t, kmax).items()}


def oracle_c(t: int, k: int) -> Dyadic:
    a, b = oracle_ab(t, k)
    return (a + b).ldexp(-1)


def oracle_sigma_table(t: int, jmax: int) -> Dict[int, Dyadic]:
    """Exact densities of ``s(n + t) - s(n) = j`` for ``|j| <= jmax``.

    The period grows one bit at a time until two consecutive periods agree
    on every ``j`` in range; ``OracleError`` past ``jmax + 2 l(t) + 8`` bits.
    """
    if t < 1:
        raise ValueError("t must be positive")
    ell = t.bit_length()
    M = jmax + ell + 2
    limit = jmax + 2 * ell + 8
    prev = _histogram(t, M, s, _resolved_s)
    while M < limit:
        cur = _histogram(t, M + 1, s, _resolved_s)
        if all(
            Dyadic(prev[j], M) == Dyadic(cur[j], M + 1)
            for j in range(-jmax, jmax + 1)
        ):
            return {j: Dyadic(prev[j], M) for j in range(-jmax, jmax + 1)}
        prev = cur
        M += 1
    raise OracleError(f"digit-sum densities for t = {t} did not stabilize")


def oracle_sigma(t: int, j: int) -> Dyadic:
    return oracle_sigma_table(t, abs(j))[j]
