"""Binary digit functions: expansions, block counts and carries."""

from __future__ import annotations

from typing import Iterator, Tuple

BitString = Tuple[int, ...]


def to_bits(n: int) -> BitString:
    """Binary digits of ``n``, least significant first (``()`` for 0)."""
    if n < 0:
        raise ValueError(f"expected a nonnegative integer, got {n}")
    return tuple((n >> j) & 1 for j in range(n.bit_length()))


def from_bits(bits) -> int:
    return sum(b << j for j, b in enumerate(bits))


def msb_first(n: int) -> Iterator[int]:
    """Iterate the digits of ``n`` from the most significant one down."""
    for j in range(n.bit_length() - 1, -1, -1):
        yield (n >> j) & 1


def length(n: int) -> int:
    return n.bit_length()


def s(n: int) -> int:
    """Number of ones in the binary expansion."""
    return bin(n).count("1")


def r(n: int) -> int:
    """Number of overlapping occurrences of the block 11 in binary."""
    return bin(n & (n >> 1)).count("1")


def block_count(t: int) -> int:
    """Number of maximal blocks of ones, i.e. occurrences of 01 with a leading 0."""
    count = 0
    prev = 0
    for bit in msb_first(t):
        if bit and not prev:
            count += 1
        prev = bit
    return count


def drift(t: int, n: int) -> int:
    return r(n + t) - r(n)


def drift_s(t: int, n: int) -> int:
    return s(n + t) - s(n)


def carries(t: int, n: int) -> int:
    """Count the carries produced by the binary addition ``n + t``.

    Ripple-carry simulation over the digits, so the cost is linear in the
    bit length and no binomial coefficient is ever formed.
    """
    if t < 0 or n < 0:
        raise ValueError("carries is defined for nonnegative integers")
    count = 0
    carry = 0
    while t or n or carry:
        total = (t & 1) + (n & 1) + carry
        carry = total >> 1
        count += carry
        t >>= 1
        n >>= 1
    return count
