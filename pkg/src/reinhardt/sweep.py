"""Batch checks over every composition of n with an odd number of parts.

A composition of n corresponds to its set of cut points in ``1..n-1``; an
odd number of parts means an even number of cuts.  Batches of cut masks are
turned into sign-vector matrices and tested both algebraically (exact
remainder modulo the cyclotomic polynomial) and geometrically (closure
residual of the star path).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .geometry import ACCEPT_RESIDUAL, REJECT_RESIDUAL, closure_residuals
from .poly import cyclotomic, reduction_table

_CHUNK = 1 << 16


def sign_matrix(masks: np.ndarray, n: int) -> np.ndarray:
    """Sign vectors for cut masks (bit ``j-1`` set when there is a cut before position ``j``)."""
    bits = np.zeros((len(masks), n), dtype=np.int8)
    bits[:, 0] = 1
    shifts = np.arange(n - 1, dtype=np.uint64)
    bits[:, 1:] = (masks[:, None] >> shifts) & np.uint64(1)
    odd = (np.cumsum(bits, axis=1, dtype=np.int16) & 1).astype(np.int8)
    return bits * (2 * odd - 1)


def odd_part_batches(n: int, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    """Sign-vector matrices covering each odd-part composition of n exactly once."""
    total = 1 << (n - 1)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        pop = np.zeros(len(masks), dtype=np.int64)
        for b in range(n - 1):
            pop += ((masks >> np.uint64(b)) & np.uint64(1)).astype(np.int64)
        yield sign_matrix(masks[pop % 2 == 0], n)


def reinhardt_mask(entries: np.ndarray) -> np.ndarray:
    """Exact divisibility test by the cyclotomic polynomial of order 2n, row by row.

    The remainder table entries are tiny for the n this is used at; the
    int64 product is checked against overflow by bounding the row sums.
    """
    n = entries.shape[1]
    table = np.array(reduction_table(cyclotomic(2 * n), n), dtype=object)
    if int(np.abs(table).max()) * n >= 1 << 62:
        raise OverflowError(f"remainder table for n={n} too large for int64")
    return ~np.any(entries.astype(np.int64) @ table.astype(np.int64), axis=1)


@dataclass
class SweepReport:
    n: int
    compositions: int = 0
    reinhardt: int = 0
    disagreements: int = 0
    in_gap: int = 0
    max_closed_residual: float = 0.0
    min_open_residual: float = field(default=float("inf"))

    @property
    def ok(self) -> bool:
        return self.disagreements == 0 and self.in_gap == 0


def sweep(n: int, chunk: int = _CHUNK) -> SweepReport:
    """Compare the algebraic criterion with closure of the star path for every odd-part composition."""
    rep = SweepReport(n)
    for entries in odd_part_batches(n, chunk):
        alg = reinhardt_mask(entries)
        res = closure_residuals(entries.astype(np.float64))
        closed = res <= ACCEPT_RESIDUAL
        rep.compositions += len(entries)
        rep.reinhardt += int(alg.sum())
        rep.disagreements += int(np.sum(alg != closed))
        rep.in_gap += int(np.sum((res > ACCEPT_RESIDUAL) & (res <= REJECT_RESIDUAL)))
        if alg.any():
            rep.max_closed_residual = max(rep.max_closed_residual, float(res[alg].max()))
        if (~alg).any():
            rep.min_open_residual = min(rep.min_open_residual, float(res[~alg].min()))
    return rep
