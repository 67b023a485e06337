"""Exact dyadic rationals and integer PMFs with a ratio-2 geometric tail.

A :class:`TailedPMF` stores ``p(k)`` exactly for ``k >= k_cut`` and the
coefficient ``tau`` of the law ``p(k) = tau * 2**k`` below ``k_cut``.  This
class of measures is closed under shifting and averaging, which is all the
density recurrences ever do, so every density in the package is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Union

import numpy as np


def _twos(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    return (n & -n).bit_length() - 1


class Dyadic:
    """The exact number ``num * 2**-exp``, normalized (odd ``num`` or zero)."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int = 0, exp: int = 0):
        if num == 0:
            exp = 0
        elif exp < 0:
            num <<= -exp
            exp = 0
        elif exp and not num & 1:
            z = min(_twos(num), exp)
            num >>= z
            exp -= z
        self.num = num
        self.exp = exp

    @classmethod
    def coerce(cls, value: "DyadicLike") -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not dyadic rationals")
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not a dyadic rational")
            return cls(value.numerator, den.bit_length() - 1)
        raise TypeError(f"cannot interpret {value!r} as a dyadic rational")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        return cls.coerce(Fraction(text))

    # arithmetic

    def __add__(self, other):
        try:
            o = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        e = max(self.exp, o.exp)
        return Dyadic((self.num << (e - self.exp)) + (o.num << (e - o.exp)), e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other):
        try:
            o = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return Dyadic.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        return Dyadic(self.num * o.num, self.exp + o.exp)

    __rmul__ = __mul__

    def scale(self, factor: "DyadicLike") -> "Dyadic":
        """Multiply by a dyadic factor; non-dyadic rationals raise ValueError."""
        return self * Dyadic.coerce(factor)

    def ldexp(self, k: int) -> "Dyadic":
        """``self * 2**k``."""
        return Dyadic(self.num, self.exp - k)

    def __abs__(self):
        return Dyadic(abs(self.num), self.exp)

    # comparison

    def _cmp(self, other) -> int:
        o = Dyadic.coerce(other)
        e = max(self.exp, o.exp)
        a = self.num << (e - self.exp)
        b = o.num << (e - o.exp)
        return (a > b) - (a < b)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.num != 0

    # conversion

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self):
        return self.num / (1 << self.exp)

    def __repr__(self):
        return f"Dyadic({self.num}, {self.exp})"

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"

    def to_json(self) -> Dict[str, int]:
        return {"num": self.num, "exp": self.exp}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "Dyadic":
        return cls(int(obj["num"]), int(obj["exp"]))


DyadicLike = Union[Dyadic, int, Fraction]

ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


def dy_cmp(x: DyadicLike, y: DyadicLike) -> int:
    """Three-way comparison: -1, 0 or 1."""
    return Dyadic.coerce(x)._cmp(y)


class TailedPMF:
    """A finite nonnegative measure on the integers with a geometric left tail.

    Internally every value shares one denominator ``2**exp``: ``nums[i]`` is
    the numerator of ``p(k_cut + i)`` and ``tail`` the numerator of ``tau``.
    Instances are canonical, so ``==`` is exact equality of measures.
    """

    __slots__ = ("k_cut", "nums", "tail", "exp")

    def __init__(self, k_cut: int, nums: Iterable[int], tail: int = 0, exp: int = 0):
        nums = list(nums)
        if tail < 0 or (nums and min(nums) < 0):
            raise ValueError("masses must be nonnegative")
        while nums and nums[-1] == 0:
            nums.pop()
        # absorb leading entries that already follow the tail law
        start = 0
        while start < len(nums):
            v = nums[start]
            if k_cut >= 0:
                if v != tail << k_cut:
                    break
            elif v << -k_cut != tail:
                break
            start += 1
            k_cut += 1
        nums = nums[start:]
        acc = tail
        for v in nums:
            acc |= v
        if acc == 0:
            k_cut, exp, nums = 0, 0, []
        elif exp:
            z = min(_twos(acc), exp)
            if z:
                nums = [v >> z for v in nums]
                tail >>= z
                exp -= z
        self.k_cut = k_cut
        self.nums = tuple(nums)
        self.tail = tail
        self.exp = exp

    # construction

    @classmethod
    def point_mass(cls, k: int = 0) -> "TailedPMF":
        return cls(k, [1])

    @classmethod
    def from_values(
        cls,
        values: Mapping[int, DyadicLike],
        tail: DyadicLike = 0,
        k_cut: Optional[int] = None,
    ) -> "TailedPMF":
        """Build from explicit masses plus ``p(k) = tail * 2**k`` for ``k < k_cut``.

        Keys of ``values`` below ``k_cut`` are not allowed.
        """
        vals = {k: Dyadic.coerce(v) for k, v in values.items()}
        tau = Dyadic.coerce(tail)
        if k_cut is None:
            k_cut = min(vals) if vals else 0
        if vals and min(vals) < k_cut:
            raise ValueError("explicit values must lie at or above k_cut")
        top = max(vals) + 1 if vals else k_cut
        exp = max([tau.exp] + [v.exp for v in vals.values()])
        nums = [0] * (top - k_cut)
        for k, v in vals.items():
            nums[k - k_cut] = v.num << (exp - v.exp)
        return cls(k_cut, nums, tau.num << (exp - tau.exp), exp)

    # access

    @property
    def tau(self) -> Dyadic:
        return Dyadic(self.tail, self.exp)

    @property
    def top(self) -> int:
        """One past the largest ``k`` with ``p(k) > 0``."""
        return self.k_cut + len(self.nums)

    def __call__(self, k: int) -> Dyadic:
        i = k - self.k_cut
        if i < 0:
            return Dyadic(self.tail, self.exp - k)
        if i < len(self.nums):
            return Dyadic(self.nums[i], self.exp)
        return ZERO

    @property
    def finite(self) -> Dict[int, Dyadic]:
        """Positive masses at ``k >= k_cut``."""
        return {
            self.k_cut + i: Dyadic(v, self.exp) for i, v in enumerate(self.nums) if v
        }

    def __eq__(self, other):
        if not isinstance(other, TailedPMF):
            return NotImplemented
        return (
            self.k_cut == other.k_cut
            and self.nums == other.nums
            and self.tail == other.tail
            and self.exp == other.exp
        )

    def __hash__(self):
        return hash((self.k_cut, self.nums, self.tail, self.exp))

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self.finite.items())
        return f"TailedPMF({{{body}}}, tau={self.tau}, k_cut={self.k_cut})"

    # algebra

    def shift(self, delta: int) -> "TailedPMF":
        return pmf_shift(self, delta)

    def window(self, lo: int, hi: int, exp: int, delta: int = 0) -> List[int]:
        """Numerators over ``2**exp`` of ``p(k - delta)`` for ``lo <= k < hi``."""
        cut = self.k_cut + delta
        up = exp - self.exp
        out: List[int] = []
        if self.tail and lo < cut:
            for k in range(lo, min(cut, hi)):
                e = up + k - delta
                if e >= 0:
                    out.append(self.tail << e)
                else:
                    v, rem = divmod(self.tail, 1 << -e)
                    if rem:
                        raise ArithmeticError("exponent too small for the tail")
                    out.append(v)
        else:
            out.extend([0] * max(0, min(cut, hi) - lo))
        start = max(lo, cut)
        stop = min(hi, cut + len(self.nums))
        if start < stop:
            seg = self.nums[start - cut: stop - cut]
            out.extend([v << up for v in seg] if up else seg)
        out.extend([0] * (hi - lo - len(out)))
        return out


def pmf_shift(p: TailedPMF, delta: int) -> TailedPMF:
    """Translate the measure: ``result(k) = p(k - delta)``."""
    if delta >= 0:
        return TailedPMF(
            p.k_cut + delta, [v << delta for v in p.nums], p.tail, p.exp + delta
        )
    return TailedPMF(p.k_cut + delta, p.nums, p.tail << -delta, p.exp)


def _needed_exp(p: TailedPMF, delta: int, lo: int) -> int:
    if not p.tail:
        return p.exp
    return p.exp + max(0, delta, delta - lo)


def mix_shifted(p: TailedPMF, dp: int, q: TailedPMF, dq: int) -> TailedPMF:
    """``result(k) = (p(k - dp) + q(k - dq)) / 2`` in one exact pass."""
    lo = min(p.k_cut + dp, q.k_cut + dq)
    hi = max(p.top + dp, q.top + dq)
    e = max(_needed_exp(p, dp, lo), _needed_exp(q, dq, lo))
    wp = p.window(lo, hi, e, dp)
    wq = q.window(lo, hi, e, dq)
    tail = 0
    if p.tail:
        tail += p.tail << (e - p.exp - dp)
    if q.tail:
        tail += q.tail << (e - q.exp - dq)
    return TailedPMF(lo, [a + b for a, b in zip(wp, wq)], tail, e + 1)


def pmf_mix(p: TailedPMF, q: TailedPMF) -> TailedPMF:
    """The average ``(p + q) / 2``."""
    return mix_shifted(p, 0, q, 0)


def pmf_mass(p: TailedPMF) -> Dyadic:
    # sum_{k<c} 2^k = 2^c
    return Dyadic(sum(p.nums), p.exp) + Dyadic(p.tail, p.exp).ldexp(p.k_cut)


def _first_moment(p: TailedPMF) -> Dyadic:
    c = p.k_cut
    finite = sum((c + i) * v for i, v in enumerate(p.nums))
    # sum_{k<c} k 2^k = (c-2) 2^c
    return Dyadic(finite, p.exp) + Dyadic(p.tail * (c - 2), p.exp).ldexp(c)


def pmf_second_moment(p: TailedPMF) -> Dyadic:
    _require_probability(p)
    c = p.k_cut
    finite = sum((c + i) ** 2 * v for i, v in enumerate(p.nums))
    # sum_{k<c} k^2 2^k = (c^2 - 4c + 6) 2^c
    return Dyadic(finite, p.exp) + Dyadic(p.tail * (c * c - 4 * c + 6), p.exp).ldexp(c)


def _require_probability(p: TailedPMF) -> None:
    if pmf_mass(p) != ONE:
        raise ValueError("moments are only defined for probability measures")


def pmf_mean(p: TailedPMF) -> Dyadic:
    _require_probability(p)
    return _first_moment(p)


def pmf_variance(p: TailedPMF) -> Dyadic:
    m = pmf_mean(p)
    return pmf_second_moment(p) - m * m


def pmf_partial_sum(p: TailedPMF, from_k: Optional[int] = None) -> Dyadic:
    """Exact upper sum ``sum_{k >= from_k} p(k)``; ``None`` means the whole mass."""
    if from_k is None:
        return pmf_mass(p)
    c = p.k_cut
    start = max(0, from_k - c)
    total = Dyadic(sum(p.nums[start:]), p.exp)
    if p.tail and from_k < c:
        # sum_{from_k <= k < c} tau 2^k = tau (2^c - 2^from_k)
        tau = Dyadic(p.tail, p.exp)
        total = total + tau.ldexp(c) - tau.ldexp(from_k)
    return total


def pmf_cf(p: TailedPMF, theta):
    """Characteristic function ``sum_k p(k) e^{ik theta}``; accepts arrays.

    The tail contributes ``tau 2^c e(c theta) e(-theta) / (2 - e(-theta))``.
    """
    th = np.asarray(theta, dtype=float)
    scale = 1 << p.exp
    c = p.k_cut
    result = np.zeros(th.shape, dtype=complex)
    for i, v in enumerate(p.nums):
        if v:
            result += (v / scale) * np.exp(1j * (c + i) * th)
    if p.tail:
        tau_c = math.ldexp(p.tail / scale, c)
        em = np.exp(-1j * th)
        result += tau_c * np.exp(1j * c * th) * em / (2.0 - em)
    if result.ndim == 0:
        return complex(result)
    return result


def pmf_to_json(p: TailedPMF) -> dict:
    return {
        "k_cut": p.k_cut,
        "tail_coeff": p.tau.to_json(),
        "finite": [[k, v.num, v.exp] for k, v in p.finite.items()],
    }


def pmf_from_json(obj: Mapping) -> TailedPMF:
    values = {int(k): Dyadic(int(n), int(e)) for k, n, e in obj["finite"]}
    return TailedPMF.from_values(
        values, Dyadic.from_json(obj["tail_coeff"]), int(obj["k_cut"])
    )
