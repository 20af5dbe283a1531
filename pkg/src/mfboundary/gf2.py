"""Small GF(2) linear algebra on int bitsets.

A vector of length k is an int whose bit i is coordinate i.  A linear map is
stored as the list of images of the source basis vectors.
"""

from __future__ import annotations

from typing import Iterable, List


def rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of a family of bit-packed vectors."""
    pivots: dict[int, int] = {}
    r = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                r += 1
                break
            v ^= p
    return r


def apply(images: List[int], x: int) -> int:
    """Image of the vector ``x`` under the map with basis images ``images``."""
    out = 0
    i = 0
    while x:
        if x & 1:
            out ^= images[i]
        x >>= 1
        i += 1
    return out


def transpose(images: List[int], n_target: int) -> List[int]:
    """Transpose of a map given by its basis images; ``n_target`` is the target dim."""
    out = [0] * n_target
    for j, col in enumerate(images):
        while col:
            low = col & -col
            out[low.bit_length() - 1] |= 1 << j
            col ^= low
    return out


def popcount(x: int) -> int:
    return bin(x).count("1")


def from_bits(bits: Iterable[int]) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b & 1:
            out |= 1 << i
    return out


def to_bits(x: int, length: int) -> List[int]:
    return [(x >> i) & 1 for i in range(length)]
