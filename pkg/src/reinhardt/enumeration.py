"""Exhaustive enumeration of Reinhardt polygons up to dihedral equivalence.

The sign vector of F(z) is split at position ``h`` into a head (positions
``0..h-1``, position 0 fixed to +1) and a tail.  Reduction modulo the
cyclotomic polynomial is linear, so each half is summarised by a 64-bit
linear image of its remainder; a head and tail can only combine to a
Reinhardt polynomial when the images cancel.  Every such pair is then
re-checked with exact integer arithmetic, so hash collisions can add work
but never wrong answers.

Tails are generated as a fixed prefix (one per shard) combined with a shared
suffix table, which keeps memory bounded and gives independent shards that
can run on a thread pool.  Results are merged and sorted, so the output does
not depend on the number of workers.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arith import is_power_of_two
from .classify import Classification, candidate_periods, is_d_periodic, PERIODIC, SPORADIC
from .composition import is_canonical, parts_from_support
from .poly import cyclotomic, reduction_table

DEFAULT_BUDGET = 1 << 26
_SUFFIX_BITS = 20
_HASH_SEED = 0x5EED_2013


class SearchBudgetExceeded(RuntimeError):
    """The search would need more work units than the budget allows.

    Enumeration counts generated half-patterns; construction counts raw polynomials.
    """

    def __init__(self, n: int, needed: int, budget: int):
        super().__init__(f"n={n}: search needs {needed} work units, budget is {budget}")
        self.n = n
        self.needed = needed
        self.budget = budget


@dataclass(frozen=True)
class Counts:
    E: int
    E0: int
    E1: int


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    polygons: tuple[tuple[tuple[int, ...], Classification], ...]
    counts: Counts = field(init=False)
    by_largest_part: dict[int, tuple[int, int]] = field(init=False)

    def __post_init__(self):
        e0 = sum(1 for _, cl in self.polygons if cl.is_periodic)
        object.__setattr__(self, "counts", Counts(len(self.polygons), e0, len(self.polygons) - e0))
        total: Counter[int] = Counter()
        sporadic: Counter[int] = Counter()
        for parts, cl in self.polygons:
            total[max(parts)] += 1
            if not cl.is_periodic:
                sporadic[max(parts)] += 1
        object.__setattr__(
            self, "by_largest_part", {m: (total[m], sporadic[m]) for m in sorted(total)}
        )

    @property
    def compositions(self) -> list[tuple[int, ...]]:
        return [parts for parts, _ in self.polygons]

    def sporadic(self) -> list[tuple[int, ...]]:
        return [parts for parts, cl in self.polygons if not cl.is_periodic]


def search_cost(n: int) -> tuple[int, int]:
    """Split point and number of half-patterns the search generates for ``n``."""
    h = max(1, n // 2)
    return h, (1 << (h - 1)) + (1 << (n - h))


def _hash_weights(table: list[tuple[int, ...]]) -> np.ndarray:
    rng = np.random.default_rng(_HASH_SEED)
    dim = len(table[0])
    lam = [int(x) for x in rng.integers(0, 1 << 63, size=dim, dtype=np.int64)]
    mask = (1 << 64) - 1
    return np.array([sum(a * b for a, b in zip(lam, row)) & mask for row in table], dtype=np.uint64)


def _grow(h: np.ndarray, par: np.ndarray, mask: np.ndarray, weights: np.ndarray, first_bit: int):
    """Extend every pattern by each of ``weights`` in turn, as absent or as the next alternating term."""
    for j, w in enumerate(weights):
        step = np.where(par == 0, w, np.uint64((1 << 64) - int(w)) if w else w)
        h = np.concatenate([h, h + step])
        par = np.concatenate([par, par ^ 1])
        mask = np.concatenate([mask, mask | np.uint64(1 << (first_bit + j))])
    return h, par, mask


def _single(h0: int, p0: int, m0: int):
    return (
        np.array([h0], dtype=np.uint64),
        np.array([p0], dtype=np.uint8),
        np.array([m0], dtype=np.uint64),
    )


class _Matcher:
    """Sorted head images split by parity, queried with tail images."""

    def __init__(self, h: np.ndarray, par: np.ndarray, mask: np.ndarray):
        self.sides = {}
        for p in (0, 1):
            sel = par == p
            hs, ms = h[sel], mask[sel]
            order = np.argsort(hs, kind="stable")
            self.sides[p] = (hs[order], ms[order])

    def pairs(self, h: np.ndarray, par: np.ndarray, mask: np.ndarray) -> list[tuple[int, int]]:
        out = []
        # odd head + even tail: F = head - tail; even head + odd tail: F = head + tail
        for tail_par, head_par, target in ((0, 1, h), (1, 0, np.uint64(0) - h)):
            sel = par == tail_par
            keys, tmask = target[sel], mask[sel]
            # sorted queries keep the binary searches cache-friendly
            order = np.argsort(keys)
            keys, tmask = keys[order], tmask[order]
            hs, hm = self.sides[head_par]
            lo = np.searchsorted(hs, keys, side="left")
            hi = np.searchsorted(hs, keys, side="right")
            for idx in np.nonzero(hi > lo)[0]:
                for k in range(lo[idx], hi[idx]):
                    out.append((int(hm[k]), int(tmask[idx])))
        return out


def _reinhardt_supports(n: int, threads: int, budget: int) -> list[tuple[int, ...]]:
    h, cost = search_cost(n)
    if cost > budget:
        raise SearchBudgetExceeded(n, cost, budget)
    table = reduction_table(cyclotomic(2 * n), n)
    w = _hash_weights(table)

    head = _grow(*_single(int(w[0]), 1, 1), w[1:h], first_bit=1)
    matcher = _Matcher(*head)
    del head

    tail_len = n - h
    s = max(0, tail_len - _SUFFIX_BITS)
    prefixes = _grow(*_single(0, 0, 0), w[h : h + s], first_bit=0)
    suffix = _grow(*_single(0, 0, 0), w[h + s :], first_bit=s)

    def shard(i: int) -> list[tuple[int, int]]:
        ph, pp, pm = int(prefixes[0][i]), int(prefixes[1][i]), int(prefixes[2][i])
        sh, sp, sm = suffix
        th = (np.uint64(ph) + (np.uint64(0) - sh if pp else sh)).astype(np.uint64)
        return matcher.pairs(th, sp ^ np.uint8(pp), sm | np.uint64(pm))

    n_shards = len(prefixes[0])
    if threads > 1 and n_shards > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(shard, range(n_shards)))
    else:
        chunks = [shard(i) for i in range(n_shards)]

    cands = sorted({hm | (tm << h) for chunk in chunks for hm, tm in chunk})
    if not cands:
        return []
    bits = np.array([[(c >> j) & 1 for j in range(n)] for c in cands], dtype=np.int64)
    signs = np.where(np.cumsum(bits, axis=1) % 2 == 1, 1, -1) * bits
    exact = np.array(table, dtype=object)
    rem = signs.astype(object) @ exact
    good = np.all(rem == 0, axis=1)
    return [tuple(np.nonzero(bits[i])[0].tolist()) for i in np.nonzero(good)[0]]


def classify_entries(entries: list[int]) -> Classification:
    ds = tuple(d for d in candidate_periods(len(entries)) if is_d_periodic(entries, d))
    return Classification(PERIODIC, ds) if ds else Classification(SPORADIC)


def support_to_entries(support: tuple[int, ...], n: int) -> list[int]:
    entries = [0] * n
    for i, pos in enumerate(support):
        entries[pos] = -1 if i % 2 else 1
    return entries


def enumerate_reinhardt(n: int, threads: int | None = None, budget: int = DEFAULT_BUDGET) -> EnumerationResult:
    """All Reinhardt n-gons, one canonical composition per dihedral class, sorted."""
    if n < 3 or is_power_of_two(n):
        raise ValueError(f"no Reinhardt polygons for n={n} (need n >= 3, not a power of two)")
    threads = threads or os.cpu_count() or 1
    found = set()
    for support in _reinhardt_supports(n, threads, budget):
        parts = parts_from_support(support, n)
        if is_canonical(parts):
            found.add(parts)
    polygons = []
    for parts in sorted(found):
        support = tuple(np.cumsum((0,) + parts[:-1]).tolist())
        polygons.append((parts, classify_entries(support_to_entries(support, n))))
    return EnumerationResult(n, tuple(polygons))


def count_summary(n: int, cache_dir=None, threads: int | None = None, budget: int = DEFAULT_BUDGET) -> EnumerationResult:
    """Enumeration result for ``n``, reusing and refreshing the cache when a directory is given."""
    from .cache import load_cache, store_cache

    if cache_dir is not None:
        cached = load_cache(n, cache_dir)
        if cached is not None:
            return cached
    result = enumerate_reinhardt(n, threads=threads, budget=budget)
    if cache_dir is not None:
        store_cache(result, cache_dir)
    return result
