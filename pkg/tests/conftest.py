from __future__ import annotations

from functools import lru_cache

import numpy as np
import pytest

from reinhardt.composition import canonical_parts
from reinhardt.enumeration import enumerate_reinhardt


@lru_cache(maxsize=None)
def enumerated(n: int):
    return enumerate_reinhardt(n, threads=1)


@lru_cache(maxsize=None)
def brute_force_reinhardt(n: int) -> frozenset[tuple[int, ...]]:
    """Canonical Reinhardt compositions of n found by evaluating F at exp(i*pi/n) for every odd-part composition."""
    found = set()
    root = np.exp(1j * np.pi * np.arange(n) / n)
    masks = np.arange(1 << (n - 1), dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n - 1)) & 1).astype(np.int8)
    bits = np.hstack([np.ones((len(masks), 1), dtype=np.int8), bits])
    keep = bits.sum(axis=1) % 2 == 1
    bits = bits[keep]
    signs = np.where(np.cumsum(bits, axis=1) % 2 == 1, 1, -1) * bits
    vals = np.abs(signs @ root)
    assert not np.any((vals > 1e-9) & (vals < 1e-6))
    for row in bits[vals < 1e-9]:
        support = np.nonzero(row)[0]
        gaps = np.diff(np.append(support, n))
        found.add(canonical_parts(tuple(int(g) for g in gaps)))
    return frozenset(found)


@pytest.fixture
def enum():
    return enumerated
