"""
Fixed-length binary vectors.

A :class:`BitVector` stores its bits in a single Python integer, with index 0
(the leftmost character of the textual form) as the most significant bit.
Integer order therefore coincides with lexicographic order for vectors of
equal length, and arbitrary lengths are supported without truncation.

The numpy helpers at the bottom (``flip_masks``, ``popcount``) operate on
plain integer encodings and back the vectorised scans used elsewhere; they
require lengths below 63 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Union

import numpy as np

from .errors import InvalidParameter, LengthMismatch

__all__ = [
    "BitVector",
    "as_bitvector",
    "hamming_distance",
    "hamming_weight",
    "repeat",
    "enumerate_ball",
    "ball_size",
    "flip_masks",
    "masks_of_weight",
    "popcount",
    "all_messages",
]


@dataclass(frozen=True, order=True)
class BitVector:
    """Immutable binary word of a fixed length.

    Examples
    --------
    >>> v = BitVector.from_str("0100")
    >>> v[1], v.weight(), len(v)
    (1, 1, 4)
    """

    length: int
    value: int

    def __post_init__(self):
        if self.length < 0:
            raise InvalidParameter("length must be nonnegative")
        if self.value < 0 or self.value >> self.length:
            raise InvalidParameter(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, text: str) -> "BitVector":
        text = text.strip()
        if any(c not in "01" for c in text):
            raise InvalidParameter(f"not a binary string: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        bits = list(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise InvalidParameter(f"bit must be 0 or 1, got {b!r}")
            value = (value << 1) | b
        return cls(len(bits), value)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __repr__(self) -> str:
        return f"BitVector('{self}')"

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.length
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length):
            yield self[i]

    def __xor__(self, other: "BitVector") -> "BitVector":
        _check_same_length(self, other)
        return BitVector(self.length, self.value ^ other.value)

    def __add__(self, other: "BitVector") -> "BitVector":
        """Concatenation."""
        return BitVector(self.length + other.length, (self.value << other.length) | other.value)

    def weight(self) -> int:
        return self.value.bit_count()

    def prefix(self, n: int) -> "BitVector":
        return BitVector(n, self.value >> (self.length - n))

    def suffix(self, n: int) -> "BitVector":
        return BitVector(n, self.value & ((1 << n) - 1))


BitLike = Union[BitVector, str]


def as_bitvector(v: BitLike) -> BitVector:
    if isinstance(v, BitVector):
        return v
    if isinstance(v, str):
        return BitVector.from_str(v)
    raise TypeError(f"expected BitVector or binary string, got {type(v).__name__}")


def _check_same_length(a: BitVector, b: BitVector):
    if a.length != b.length:
        raise LengthMismatch(f"lengths differ: {a.length} vs {b.length}")


def hamming_distance(a: BitLike, b: BitLike) -> int:
    a, b = as_bitvector(a), as_bitvector(b)
    _check_same_length(a, b)
    return (a.value ^ b.value).bit_count()


def hamming_weight(a: BitLike) -> int:
    return as_bitvector(a).weight()


def repeat(a: BitLike, t: int) -> BitVector:
    """t-fold concatenation, e.g. ``repeat("011", 2) == "011011"``."""
    a = as_bitvector(a)
    if t < 1:
        raise InvalidParameter(f"repetition count must be >= 1, got {t}")
    out = a
    for _ in range(t - 1):
        out = out + a
    return out


def ball_size(n: int, radius: int) -> int:
    return sum(comb(n, i) for i in range(min(radius, n) + 1))


def enumerate_ball(center: BitLike, radius: int) -> Iterator[BitVector]:
    """Lazily yield every word within ``radius`` of ``center`` in lexicographic order."""
    center = as_bitvector(center)
    n = center.length
    if radius < 0:
        raise InvalidParameter("radius must be nonnegative")

    def walk(pos: int, prefix: int, budget: int):
        if pos == n:
            yield BitVector(n, prefix)
            return
        bit = center[pos]
        # smaller bit first keeps the output in lexicographic order
        for b in (0, 1):
            cost = int(b != bit)
            if cost <= budget:
                yield from walk(pos + 1, (prefix << 1) | b, budget - cost)

    return walk(0, 0, radius)


# -- integer/numpy helpers ---------------------------------------------------

_MAX_FAST_BITS = 62


def _check_fast(n: int):
    if n > _MAX_FAST_BITS:
        raise InvalidParameter(f"vectorised path supports at most {_MAX_FAST_BITS} bits, got {n}")


@lru_cache(maxsize=256)
def masks_of_weight(n: int, w: int) -> np.ndarray:
    """All n-bit integers of popcount exactly w, ascending."""
    _check_fast(n)
    if w < 0 or w > n:
        return np.zeros(0, dtype=np.int64)
    out = np.fromiter(
        (sum(1 << i for i in c) for c in combinations(range(n), w)),
        dtype=np.int64,
        count=comb(n, w),
    )
    out.sort()
    out.setflags(write=False)
    return out


@lru_cache(maxsize=256)
def flip_masks(n: int, radius: int) -> np.ndarray:
    """All n-bit integers of popcount at most ``radius``, grouped by weight."""
    parts = [masks_of_weight(n, w) for w in range(min(radius, n) + 1)]
    out = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    out.setflags(write=False)
    return out


def popcount(x) -> np.ndarray:
    return np.bitwise_count(np.asarray(x, dtype=np.int64)).astype(np.int64)


def all_messages(k: int) -> np.ndarray:
    _check_fast(k)
    return np.arange(1 << k, dtype=np.int64)
