"""Building sporadic Reinhardt polygons for n = p*q*r.

Every polynomial built here has the form

    F(z) = f1(z) * Phi_q(-z^(p*r)) + f2(z) * Phi_p(-z^(q*r))

with ``f1 = sum_{s in S} (-1)^s z^(r*s) (1 - z)`` for a nonempty proper subset
``S`` of ``{0, ..., p-1}`` and ``f2`` the coefficient string
``0 A_1 B_1 ... A_t B_t C`` (``t = (q-1)/2``) built from sign blocks.

The scalar functions (:func:`build_f1`, :func:`enumerate_block_choices`,
:func:`construct_F`) are the readable reference.  :func:`scan` runs the
same construction over a whole parameter grid in compiled code and is
what :func:`construct_sporadic` uses.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels as K
from .arith import is_prime, odd_prime_divisors
from .composition import canonical_parts, parts_from_support
from .enumeration import SearchBudgetExceeded
from .poly import IntPolynomial, cyclotomic

ALL_NONTRIVIAL = "all-nontrivial"
MUST_CONTAIN_ZERO = "must-contain-zero"
DEFAULT_BUDGET = 1 << 27
_RAW_HASH_SEED = 0xC0FFEE


@dataclass(frozen=True)
class ConstructionParams:
    p: int
    q: int
    r: int
    S: frozenset[int]

    def __post_init__(self):
        check_pqr(self.p, self.q, self.r)
        S = frozenset(self.S)
        object.__setattr__(self, "S", S)
        if not S or S == frozenset(range(self.p)):
            raise ValueError(f"S must be a nonempty proper subset of range({self.p})")
        if not S <= frozenset(range(self.p)):
            raise ValueError(f"S must lie in range({self.p}): {sorted(S)}")

    @property
    def n(self) -> int:
        return self.p * self.q * self.r


@dataclass(frozen=True)
class BlockChoice:
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]
    C: tuple[int, ...]

    def f2(self) -> list[int]:
        out = [0]
        for a, b in zip(self.A, self.B):
            out += a
            out += b
        return out + list(self.C)


def check_pqr(p: int, q: int, r: int) -> None:
    for x in (p, q):
        if x == 2 or not is_prime(x):
            raise ValueError(f"{x} is not an odd prime")
    if p == q:
        raise ValueError("p and q must be distinct")
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")


def factorizations(n: int) -> list[tuple[int, int, int]]:
    """Every ordered (p, q, r) with p != q odd primes, r >= 2 and p*q*r == n."""
    primes = odd_prime_divisors(n)
    out = []
    for p, q in itertools.permutations(primes, 2):
        if n % (p * q) == 0 and n // (p * q) >= 2:
            out.append((p, q, n // (p * q)))
    return sorted(out)


def subsets(p: int, policy: str = ALL_NONTRIVIAL) -> list[frozenset[int]]:
    if policy not in (ALL_NONTRIVIAL, MUST_CONTAIN_ZERO):
        raise ValueError(f"unknown S policy {policy!r}")
    out = []
    for mask in range(1, (1 << p) - 1):
        if policy == MUST_CONTAIN_ZERO and not mask & 1:
            continue
        out.append(frozenset(i for i in range(p) if mask >> i & 1))
    return out


def build_f1(params: ConstructionParams) -> IntPolynomial:
    terms: dict[int, int] = {}
    for s in params.S:
        sign = -1 if s % 2 else 1
        base = params.r * s
        terms[base] = terms.get(base, 0) + sign
        terms[base + 1] = terms.get(base + 1, 0) - sign
    return IntPolynomial.from_terms(terms)


def sign_blocks(length: int, lead: int = 1) -> list[tuple[int, ...]]:
    """Length-``length`` blocks with an odd number of alternating nonzeros, first one ``lead``.

    Ordered by the support read as a binary number, low position first.
    """
    out = []
    for mask in range(1, 1 << length):
        if bin(mask).count("1") % 2 == 0:
            continue
        block, sign = [], lead
        for j in range(length):
            if mask >> j & 1:
                block.append(sign)
                sign = -sign
            else:
                block.append(0)
        out.append(tuple(block))
    return out


def enumerate_block_choices(q: int, r: int) -> Iterator[BlockChoice]:
    t = (q - 1) // 2
    a_opts = sign_blocks(r, 1)
    b_opts = sign_blocks(r, -1)
    c_opts = sign_blocks(r - 1, 1)
    for combo in itertools.product(*([a_opts, b_opts] * t), c_opts):
        yield BlockChoice(tuple(combo[0 : 2 * t : 2]), tuple(combo[1 : 2 * t : 2]), combo[-1])


def g1_polynomial(params: ConstructionParams) -> IntPolynomial:
    p, q, r = params.p, params.q, params.r
    return build_f1(params) * cyclotomic(q).subs_power(p * r, -1)


def construct_F(params: ConstructionParams, blocks: BlockChoice) -> tuple[int, ...]:
    """Coefficients of F, length n.

    The leading entry is 0 when 0 is not in S; the vector is then a rotation
    of a Reinhardt sign vector rather than one itself.
    """
    p, q, r, n = params.p, params.q, params.r, params.n
    f2 = blocks.f2()
    if len(f2) != q * r:
        raise ValueError(f"blocks give f2 of length {len(f2)}, expected {q * r}")
    g2 = IntPolynomial(f2) * cyclotomic(p).subs_power(q * r, -1)
    F = g1_polynomial(params) + g2
    coeffs = tuple(F[i] for i in range(n))
    assert F.degree < n
    assert is_rotated_sign_vector(coeffs), f"construction left the sign pattern: {coeffs}"
    return coeffs


def is_rotated_sign_vector(coeffs: Sequence[int]) -> bool:
    """Entries in {-1,0,1}, nonzeros alternating, an odd number of them."""
    last, count = 0, 0
    for v in coeffs:
        if v not in (-1, 0, 1):
            return False
        if v:
            if v == last:
                return False
            last = v
            count += 1
    return count % 2 == 1


def raw_to_canonical(coeffs: Sequence[int]) -> tuple[int, ...]:
    support = [i for i, v in enumerate(coeffs) if v]
    return canonical_parts(parts_from_support(support, len(coeffs)))


# -- sets of compositions ----------------------------------------------------


def _part_dtype(n: int) -> np.dtype:
    # big-endian so that byte-wise comparison of padded rows is tuple order
    return np.dtype(np.uint8) if n < 256 else np.dtype(">u2")


def _row_view(mat: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(mat).view(f"V{mat.shape[1] * mat.itemsize}").ravel()


class CompositionSet:
    """Sorted, duplicate-free compositions of one n, stored as a padded integer matrix."""

    def __init__(self, n: int, parts: np.ndarray, lengths: np.ndarray):
        self.n = n
        self._parts = parts
        self._lengths = lengths

    @classmethod
    def from_keys(cls, n: int, keys: np.ndarray) -> CompositionSet:
        if len(keys) == 0:
            return cls(n, np.zeros((0, 0), dtype=_part_dtype(n)), np.zeros(0, dtype=np.int64))
        lengths = K.key_lengths(keys)
        width = int(lengths.max())
        mat = np.zeros((len(keys), width), dtype=np.uint8 if n < 256 else np.uint16)
        K.keys_to_parts(keys, n, mat)
        mat = mat.astype(_part_dtype(n), copy=False)
        order = np.argsort(_row_view(mat), kind="stable")
        return cls(n, mat[order], lengths[order])

    @classmethod
    def from_tuples(cls, n: int, items: Iterable[Sequence[int]]) -> CompositionSet:
        items = sorted({tuple(x) for x in items})
        width = max((len(x) for x in items), default=0)
        mat = np.zeros((len(items), width), dtype=_part_dtype(n))
        for i, x in enumerate(items):
            mat[i, : len(x)] = x
        return cls(n, mat, np.array([len(x) for x in items], dtype=np.int64))

    def __len__(self) -> int:
        return len(self._lengths)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return tuple(int(k) for k in self._parts[i, : self._lengths[i]])

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for i in range(len(self)):
            yield self[i]

    def __contains__(self, item) -> bool:
        item = tuple(item)
        if len(self) == 0 or len(item) > self._parts.shape[1]:
            return False
        if any(k < 0 or k > self.n for k in item):
            return False
        row = np.zeros((1, self._parts.shape[1]), dtype=self._parts.dtype)
        row[0, : len(item)] = item
        at = np.searchsorted(_row_view(self._parts), _row_view(row)[0])
        return at < len(self) and self[int(at)] == item

    def to_list(self) -> list[tuple[int, ...]]:
        return list(self)

    def largest_parts(self) -> np.ndarray:
        return self._parts.max(axis=1) if len(self) else np.zeros(0, dtype=self._parts.dtype)

    def by_largest_part(self) -> dict[int, int]:
        values, counts = np.unique(self.largest_parts(), return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def matrix(self) -> tuple[np.ndarray, np.ndarray]:
        return self._parts, self._lengths


# -- grid scan -----------------------------------------------------------------


@dataclass
class GridReport:
    p: int
    q: int
    r: int
    subsets: list[frozenset[int]]
    raw_count: int
    invalid: int
    injective: bool
    periodic: int
    periodic_by_m: dict[int, int]
    periodic_by_subset: dict[frozenset[int], int]
    structure_violations: int
    sporadic_raw: int
    classes: CompositionSet = field(repr=False)
    keys: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.p * self.q * self.r


class _KeyTable:
    """Open-addressing set of multi-word keys; the kernel pauses before it passes half full."""

    def __init__(self, n: int, rows_per_step: int):
        self.rows_per_step = rows_per_step
        capacity = 1 << max(12, (4 * rows_per_step).bit_length())
        self.keys_arr = np.zeros((capacity, K.key_words(n)), dtype=np.uint64)
        self.used = np.zeros(capacity, dtype=np.uint8)
        self.fill = np.zeros(1, dtype=np.int64)

    @property
    def max_fill(self) -> int:
        # one block index inserts up to rows_per_step keys before the kernel rechecks
        return len(self.used) // 2 - self.rows_per_step

    def grow(self) -> None:
        cap = 2 * len(self.used)
        keys = np.zeros((cap, self.keys_arr.shape[1]), dtype=np.uint64)
        used = np.zeros(cap, dtype=np.uint8)
        K.table_rehash(self.keys_arr, self.used, keys, used)
        self.keys_arr, self.used = keys, used

    def keys(self) -> np.ndarray:
        return self.keys_arr[self.used.astype(bool)]

    def absorb_keys(self, keys: np.ndarray, used: np.ndarray | None = None) -> None:
        used = np.ones(len(keys), dtype=np.uint8) if used is None else used
        start = 0
        while start < len(used):
            start = K.table_merge(keys, used, self.keys_arr, self.used, self.fill, self.max_fill, start)
            if start < len(used):
                self.grow()

    def absorb(self, other: _KeyTable) -> None:
        self.absorb_keys(other.keys_arr, other.used)


def _grid_inputs(p: int, q: int, r: int, chosen: list[frozenset[int]]):
    n = p * q * r
    g1rows = np.zeros((len(chosen), n), dtype=np.int8)
    for i, S in enumerate(chosen):
        g1 = g1_polynomial(ConstructionParams(p, q, r, S))
        g1rows[i, : len(g1)] = g1.coeffs
    optA = np.array(sign_blocks(r, 1), dtype=np.int8)
    optC = np.array(sign_blocks(r - 1, 1), dtype=np.int8).reshape(-1, r - 1)
    rng = np.random.default_rng(_RAW_HASH_SEED)
    weights = rng.integers(0, np.iinfo(np.uint64).max, size=n, dtype=np.uint64, endpoint=True)
    return g1rows, optA, optC, weights


def _raw_from_index(p, q, r, chosen, index: int) -> tuple[int, ...]:
    t = (q - 1) // 2
    a_opts, c_opts = sign_blocks(r, 1), sign_blocks(r - 1, 1)
    nb = len(c_opts) * len(a_opts) ** (2 * t)
    s_idx, idx = divmod(index, nb)
    c = idx % len(c_opts)
    idx //= len(c_opts)
    digits = []
    for _ in range(2 * t):
        digits.append(idx % len(a_opts))
        idx //= len(a_opts)
    digits.reverse()
    A = tuple(a_opts[d] for d in digits[0::2])
    B = tuple(tuple(-x for x in a_opts[d]) for d in digits[1::2])
    return construct_F(ConstructionParams(p, q, r, chosen[s_idx]), BlockChoice(A, B, c_opts[c]))


def scan(
    p: int,
    q: int,
    r: int,
    s_policy: str = ALL_NONTRIVIAL,
    S: Iterable[frozenset[int]] | None = None,
    threads: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> GridReport:
    """Build every F for one (p, q, r) and report counts, periodicity and distinct sporadic classes."""
    check_pqr(p, q, r)
    n = p * q * r
    chosen = [frozenset(x) for x in S] if S is not None else subsets(p, s_policy)
    for x in chosen:
        ConstructionParams(p, q, r, x)
    t = (q - 1) // 2
    nA = 1 << (r - 1)
    nb = (1 << (r - 2)) * nA ** (2 * t)
    raw_count = nb * len(chosen)
    if raw_count > budget:
        raise SearchBudgetExceeded(n, raw_count, budget)

    g1rows, optA, optC, weights = _grid_inputs(p, q, r, chosen)
    primes = np.array(odd_prime_divisors(n), dtype=np.int64)
    raw = np.empty(raw_count, dtype=np.uint64)

    # shards split the block space by the choice of A_1
    threads = threads or os.cpu_count() or 1
    shard_len = nb // nA
    bounds = [(i * shard_len, (i + 1) * shard_len) for i in range(nA)]

    def run(lo_hi, table=None):
        start, stop = lo_hi
        table = _KeyTable(n, len(chosen)) if table is None else table
        stats = np.zeros(4, dtype=np.int64)
        per_prime = np.zeros(len(primes), dtype=np.int64)
        per_s = np.zeros(len(chosen), dtype=np.int64)
        while start < stop:
            start = K.scan_grid(
                n, p, q, r, g1rows, optA, optC, primes, weights, start, stop, raw,
                table.keys_arr, table.used, table.fill, table.max_fill, stats, per_prime, per_s,
            )
            if start < stop:
                table.grow()
        return table, stats, per_prime, per_s

    master = _KeyTable(n, len(chosen))
    results = []
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for res in pool.map(run, bounds):
                master.absorb(res[0])
                results.append(res[1:])
    else:
        for b in bounds:
            results.append(run(b, master)[1:])

    stats = sum(res[0] for res in results)
    per_prime = sum(res[1] for res in results)
    per_s = sum(res[2] for res in results)
    if stats[K.INVALID]:
        raise AssertionError(f"{stats[K.INVALID]} constructed polynomials left the sign pattern for {(p, q, r)}")
    keys = master.keys()
    del master

    raw.sort()
    dup = _repeated_values(raw)
    del raw
    injective = True
    if len(dup):
        injective = _settle_collisions(p, q, r, chosen, g1rows, optA, optC, weights, dup)

    return GridReport(
        p=p, q=q, r=r,
        subsets=chosen,
        raw_count=raw_count,
        invalid=int(stats[K.INVALID]),
        injective=injective,
        periodic=int(stats[K.PERIODIC]),
        periodic_by_m={int(m): int(c) for m, c in zip(primes, per_prime)},
        periodic_by_subset={S: int(c) for S, c in zip(chosen, per_s)},
        structure_violations=int(stats[K.STRUCTURE_VIOLATIONS]),
        sporadic_raw=int(stats[K.SPORADIC_RAW]),
        classes=CompositionSet.from_keys(n, keys),
        keys=keys,
    )


def _repeated_values(sorted_raw: np.ndarray, chunk: int = 1 << 22) -> np.ndarray:
    """Values occurring more than once in a sorted array, scanned in chunks to bound temporaries."""
    found = []
    for start in range(0, len(sorted_raw) - 1, chunk):
        block = sorted_raw[start : start + chunk + 1]
        found.append(block[1:][block[1:] == block[:-1]])
    return np.unique(np.concatenate(found)) if found else np.zeros(0, dtype=np.uint64)


def _settle_collisions(p, q, r, chosen, g1rows, optA, optC, weights, targets) -> bool:
    """Compare the actual polynomials behind equal raw hashes; True when all of them differ."""
    cap = 4 * len(targets) + 16
    out_idx = np.zeros(cap, dtype=np.int64)
    out_hash = np.zeros(cap, dtype=np.uint64)
    found = K.locate_hashes(p * q * r, p, q, r, g1rows, optA, optC, weights, targets, out_idx, out_hash)
    if found == cap:
        raise RuntimeError("too many raw hash collisions to settle")
    groups: dict[int, set] = {}
    for i in range(found):
        coeffs = _raw_from_index(p, q, r, chosen, int(out_idx[i]))
        bucket = groups.setdefault(int(out_hash[i]), set())
        if coeffs in bucket:
            return False
        bucket.add(coeffs)
    return True


@dataclass
class ConstructionResult:
    n: int
    s_policy: str
    grids: list[GridReport]
    compositions: CompositionSet = field(repr=False)

    @property
    def C(self) -> int:
        return len(self.compositions)


def construct_sporadic(
    n: int,
    grids: Sequence[tuple[int, int, int]] | None = None,
    s_policy: str = ALL_NONTRIVIAL,
    threads: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> ConstructionResult:
    """Distinct sporadic polygons reachable by the construction, over the chosen (p, q, r)."""
    options = factorizations(n)
    if not options:
        raise ValueError(f"n={n} is not p*q*r with p, q distinct odd primes and r >= 2")
    if grids is None:
        grids = options
    for g in grids:
        if tuple(g) not in options:
            raise ValueError(f"{tuple(g)} is not a valid factorization of {n}")
    total = sum(len(subsets(g[0], s_policy)) << (g[1] * (g[2] - 1) - 1) for g in grids)
    if total > budget:
        raise SearchBudgetExceeded(n, total, budget)
    reports = [scan(*g, s_policy=s_policy, threads=threads, budget=budget) for g in grids]
    table = _KeyTable(n, 1)
    for rep in reports:
        table.absorb_keys(rep.keys)
    return ConstructionResult(n, s_policy, reports, CompositionSet.from_keys(n, table.keys()))


def count_periodic_constructed(p: int, q: int, r: int, S: Iterable[frozenset[int]] | None = None) -> int:
    """Number of constructed F (not classes) that are periodic, for the given subsets (default: all)."""
    return scan(p, q, r, S=S).periodic


def expected_raw_count(p: int, q: int, r: int) -> int:
    return ((1 << p) - 2) * (1 << (q * (r - 1) - 1))


def expected_periodic_count(p: int, q: int, r: int) -> int:
    return ((1 << p) - 2) * (1 << (r - 2))
