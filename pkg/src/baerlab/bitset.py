"""Subsets of ``range(n)`` encoded as Python integers (bit i set <=> i in set).

Canonical order on subsets is ``(size, mask)``; every witness that is a
subset is chosen least in this order.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def from_bool(flags: np.ndarray) -> int:
    packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def rows_to_masks(flags: np.ndarray) -> list[int]:
    """One mask per row of a 2-d boolean array."""
    flags = np.asarray(flags, dtype=bool)
    if flags.shape[1] == 0:
        return [0] * flags.shape[0]
    packed = np.packbits(flags, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def to_array(mask: int) -> np.ndarray:
    if not mask:
        return np.zeros(0, dtype=np.int64)
    raw = mask.to_bytes((mask.bit_length() + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return np.flatnonzero(bits)


def to_list(mask: int) -> list[int]:
    return to_array(mask).tolist()


def to_bool(mask: int, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=bool)
    out[to_array(mask)] = True
    return out


def size(mask: int) -> int:
    return mask.bit_count()


def least(mask: int) -> int:
    """Smallest index in a nonempty mask."""
    return (mask & -mask).bit_length() - 1


def subset(a: int, b: int) -> bool:
    return a & ~b == 0


def canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)
