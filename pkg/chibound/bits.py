"""Bitset helpers: vertex sets are Python ints with bit v set for vertex v."""

from collections.abc import Iterable, Iterator


def to_mask(vertices: Iterable[int]) -> int:
    """Build a bitmask from vertex indices."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def lowest(mask: int) -> int:
    """Index of the lowest set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1


def full_mask(n: int) -> int:
    return (1 << n) - 1
