"""Compiled inner loops for scanning construction grids.

Polygons are keyed by the support of their canonical sign vector: bit ``j``
of the key (``ceil(n/64)`` uint64 words, one row of a 2-D array) is set when
position ``j`` is nonzero.  The key is an exact encoding of the canonical
composition, so hashing it into the open-addressing table never merges
distinct polygons.
"""
from __future__ import annotations

import numpy as np
from numba import njit


def key_words(n: int) -> int:
    return (n + 63) // 64

# slots in the ``stats`` array filled by scan_grid
INVALID, PERIODIC, STRUCTURE_VIOLATIONS, SPORADIC_RAW = range(4)


@njit(cache=True, nogil=True)
def _mix(key):
    x = np.uint64(0)
    for w in range(key.shape[0]):
        x = (x ^ key[w]) * np.uint64(0x9E3779B97F4A7C15)
        x ^= x >> np.uint64(33)
    x *= np.uint64(0xFF51AFD7ED558CCD)
    x ^= x >> np.uint64(33)
    x *= np.uint64(0xC4CEB9FE1A85EC53)
    x ^= x >> np.uint64(33)
    return x


@njit(cache=True, nogil=True)
def _same(a, b):
    for w in range(a.shape[0]):
        if a[w] != b[w]:
            return False
    return True


@njit(cache=True, nogil=True)
def table_insert(keys, used, key):
    """Insert a key; returns 1 when it was new, 0 when already present."""
    mask = np.uint64(len(used) - 1)
    slot = _mix(key) & mask
    while used[slot]:
        if _same(keys[slot], key):
            return 0
        slot = (slot + np.uint64(1)) & mask
    used[slot] = 1
    keys[slot, :] = key
    return 1


@njit(cache=True, nogil=True)
def table_rehash(keys, used, new_keys, new_used):
    for i in range(len(used)):
        if used[i]:
            table_insert(new_keys, new_used, keys[i])


@njit(cache=True, nogil=True)
def _canonical_key(F, n, pos, parts, best, key):
    """Write into ``key`` the support of the lexicographically greatest rotation/reversal of the gap sequence."""
    R = 0
    for j in range(n):
        if F[j] != 0:
            pos[R] = j
            R += 1
    for j in range(R - 1):
        parts[j] = pos[j + 1] - pos[j]
    parts[R - 1] = n - pos[R - 1] + pos[0]
    top = 0
    for j in range(R):
        if parts[j] > top:
            top = parts[j]
    have = False
    for s in range(R):
        if parts[s] != top:
            continue
        for direction in (1, -1):
            if have:
                cmp = 0
                for i in range(R):
                    v = parts[(s + direction * i) % R]
                    if v != best[i]:
                        cmp = 1 if v > best[i] else -1
                        break
                if cmp <= 0:
                    continue
            for i in range(R):
                best[i] = parts[(s + direction * i) % R]
            have = True
    key[:] = 0
    acc = 0
    for i in range(R):
        key[acc // 64] |= np.uint64(1) << np.uint64(acc % 64)
        acc += best[i]


@njit(cache=True, nogil=True)
def _valid(F, n):
    """Entries in {-1,0,1}, nonzeros alternating, odd count."""
    last = 0
    count = 0
    for j in range(n):
        v = F[j]
        if v != 0:
            if v > 1 or v < -1 or v == last:
                return False
            last = v
            count += 1
    return count % 2 == 1


@njit(cache=True, nogil=True)
def _negacyclic_periodic(F, n, d):
    """True when (z^d + 1) F vanishes modulo z^n + 1."""
    for j in range(n):
        if j >= d:
            if F[j] != -F[j - d]:
                return False
        elif F[j] != F[j - d + n]:
            return False
    return True


@njit(cache=True, nogil=True)
def _decode_f2(idx, t, r, optA, optC, f2):
    nA = optA.shape[0]
    nC = optC.shape[0]
    c = idx % nC
    idx //= nC
    off = 1 + 2 * t * r
    for j in range(r - 1):
        f2[off + j] = optC[c, j]
    for blk in range(2 * t - 1, -1, -1):
        a = idx % nA
        idx //= nA
        sign = 1 if blk % 2 == 0 else -1
        off = 1 + blk * r
        for j in range(r):
            f2[off + j] = sign * optA[a, j]


@njit(cache=True, nogil=True)
def _f2_is_structured(f2, t, r):
    """f2 has the shape 0 C 0 -C 0 C ... 0 C."""
    cstart = 1 + 2 * t * r
    for blk in range(2 * t):
        sign = 1 if blk % 2 == 0 else -1
        off = 1 + blk * r
        for j in range(r - 1):
            if f2[off + j] != sign * f2[cstart + j]:
                return False
        if f2[off + r - 1] != 0:
            return False
    return True


@njit(cache=True, nogil=True)
def scan_grid(
    n, p, q, r, g1rows, optA, optC, prime_periods, weights,
    idx_start, idx_stop, raw_out, keys, used, fill, max_fill,
    stats, per_prime, per_s,
):
    """Scan block indices ``idx_start..idx_stop`` against every row of ``g1rows``.

    Stops early once the table holds ``max_fill`` keys and returns the next
    block index to process; the caller grows the table and resumes.
    """
    t = (q - 1) // 2
    qr = q * r
    nb_total = raw_out.shape[0] // g1rows.shape[0]
    f2 = np.zeros(qr, dtype=np.int8)
    g2 = np.zeros(n, dtype=np.int8)
    F = np.zeros(n, dtype=np.int8)
    pos = np.zeros(n, dtype=np.int64)
    parts = np.zeros(n, dtype=np.int64)
    best = np.zeros(n, dtype=np.int64)
    key = np.zeros(keys.shape[1], dtype=np.uint64)
    for idx in range(idx_start, idx_stop):
        if fill[0] >= max_fill:
            return idx
        _decode_f2(idx, t, r, optA, optC, f2)
        for k in range(p):
            sign = 1 if k % 2 == 0 else -1
            for j in range(qr):
                g2[k * qr + j] = sign * f2[j]
        structured = _f2_is_structured(f2, t, r)
        for s in range(g1rows.shape[0]):
            h = np.uint64(0)
            for j in range(n):
                F[j] = g1rows[s, j] + g2[j]
                if F[j] > 0:
                    h += weights[j]
                elif F[j] < 0:
                    h -= weights[j]
            raw_out[s * nb_total + idx] = h
            if not _valid(F, n):
                stats[INVALID] += 1
                continue
            periodic = False
            for k in range(prime_periods.shape[0]):
                if _negacyclic_periodic(F, n, n // prime_periods[k]):
                    per_prime[k] += 1
                    if prime_periods[k] == q and not structured:
                        stats[STRUCTURE_VIOLATIONS] += 1
                    periodic = True
            if periodic:
                stats[PERIODIC] += 1
                per_s[s] += 1
                continue
            stats[SPORADIC_RAW] += 1
            _canonical_key(F, n, pos, parts, best, key)
            fill[0] += table_insert(keys, used, key)
    return idx_stop


@njit(cache=True, nogil=True)
def locate_hashes(n, p, q, r, g1rows, optA, optC, weights, targets, out_idx, out_hash):
    """Raw indices whose hash lies in the sorted array ``targets``; used to settle hash collisions."""
    t = (q - 1) // 2
    qr = q * r
    nA = optA.shape[0]
    nb_total = optC.shape[0]
    for _ in range(2 * t):
        nb_total *= nA
    f2 = np.zeros(qr, dtype=np.int8)
    g2 = np.zeros(n, dtype=np.int8)
    found = 0
    for idx in range(nb_total):
        _decode_f2(idx, t, r, optA, optC, f2)
        for k in range(p):
            sign = 1 if k % 2 == 0 else -1
            for j in range(qr):
                g2[k * qr + j] = sign * f2[j]
        for s in range(g1rows.shape[0]):
            h = np.uint64(0)
            for j in range(n):
                v = g1rows[s, j] + g2[j]
                if v > 0:
                    h += weights[j]
                elif v < 0:
                    h -= weights[j]
            at = np.searchsorted(targets, h)
            if at < len(targets) and targets[at] == h and found < len(out_idx):
                out_idx[found] = s * nb_total + idx
                out_hash[found] = h
                found += 1
    return found


@njit(cache=True, nogil=True)
def table_merge(src_keys, src_used, keys, used, fill, max_fill, start):
    """Insert the source table's keys from slot ``start`` on; returns the slot reached."""
    for i in range(start, len(src_used)):
        if fill[0] >= max_fill:
            return i
        if src_used[i]:
            fill[0] += table_insert(keys, used, src_keys[i])
    return len(src_used)


@njit(cache=True)
def key_lengths(keys):
    out = np.zeros(keys.shape[0], dtype=np.int64)
    for i in range(keys.shape[0]):
        c = 0
        for w in range(keys.shape[1]):
            x = keys[i, w]
            while x:
                x &= x - np.uint64(1)
                c += 1
        out[i] = c
    return out


@njit(cache=True)
def keys_to_parts(keys, n, out):
    """Decode support keys into cyclic gap sequences, one padded row per key."""
    for i in range(keys.shape[0]):
        first = -1
        prev = -1
        k = 0
        for j in range(n):
            if (keys[i, j // 64] >> np.uint64(j % 64)) & np.uint64(1):
                if first < 0:
                    first = j
                else:
                    out[i, k] = j - prev
                    k += 1
                prev = j
        out[i, k] = n - prev + first
