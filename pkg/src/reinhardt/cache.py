"""Versioned JSON-lines cache of enumeration results.

File ``reinhardt-<n>.v1.jsonl`` holds a header record, one record per
polygon in sorted canonical order, and a trailer with the counts and the
SHA-256 of every byte before the trailer.  A file that fails any check is
reported through :class:`CacheError`; it is never silently reused.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .classify import Classification
from .enumeration import EnumerationResult

FORMAT_NAME = "reinhardt-enumeration"
FORMAT_VERSION = 1


class CacheError(Exception):
    pass


class CacheVersionError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


def cache_path(n: int, cache_dir) -> Path:
    return Path(cache_dir) / f"reinhardt-{n}.v{FORMAT_VERSION}.jsonl"


def _dump(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"), sort_keys=True) + "\n"


def result_to_jsonl(result: EnumerationResult) -> str:
    """Serialize deterministically; equal results give byte-identical text."""
    lines = [_dump({"format": FORMAT_NAME, "version": FORMAT_VERSION, "n": result.n})]
    for parts, cl in result.polygons:
        lines.append(_dump({"parts": list(parts), "kind": cl.kind, "periods": list(cl.periods)}))
    body = "".join(lines)
    trailer = {
        "trailer": True,
        "E": result.counts.E,
        "E0": result.counts.E0,
        "E1": result.counts.E1,
        "by_largest_part": {str(m): list(v) for m, v in result.by_largest_part.items()},
        "sha256": hashlib.sha256(body.encode()).hexdigest(),
    }
    return body + _dump(trailer)


def result_from_jsonl(text: str) -> EnumerationResult:
    lines = text.splitlines(keepends=True)
    if not lines:
        raise CacheChecksumError("empty cache file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CacheChecksumError(f"unreadable header: {exc}") from None
    if header.get("format") != FORMAT_NAME:
        raise CacheError(f"not an enumeration cache: {header.get('format')!r}")
    if header.get("version") != FORMAT_VERSION:
        raise CacheVersionError(f"cache version {header.get('version')!r}, expected {FORMAT_VERSION}")
    try:
        trailer = json.loads(lines[-1])
    except json.JSONDecodeError:
        raise CacheChecksumError("missing or truncated trailer") from None
    if not lines[-1].endswith("\n") or not isinstance(trailer, dict) or not trailer.get("trailer"):
        raise CacheChecksumError("missing or truncated trailer")
    body = "".join(lines[:-1])
    if hashlib.sha256(body.encode()).hexdigest() != trailer.get("sha256"):
        raise CacheChecksumError("checksum mismatch")
    polygons = []
    for line in lines[1:-1]:
        rec = json.loads(line)
        polygons.append((tuple(rec["parts"]), Classification(rec["kind"], tuple(rec["periods"]))))
    result = EnumerationResult(header["n"], tuple(polygons))
    stored = (trailer["E"], trailer["E0"], trailer["E1"])
    if stored != (result.counts.E, result.counts.E0, result.counts.E1):
        raise CacheChecksumError(f"trailer counts {stored} disagree with records")
    return result


def store_cache(result: EnumerationResult, cache_dir) -> Path:
    path = cache_path(result.n, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(result_to_jsonl(result), encoding="utf-8")
    os.replace(tmp, path)
    return path


def load_cache(n: int, cache_dir) -> EnumerationResult | None:
    """Cached result for ``n``, or None when nothing was stored.  Corrupt files raise."""
    path = cache_path(n, cache_dir)
    if not path.exists():
        return None
    result = result_from_jsonl(path.read_text(encoding="utf-8"))
    if result.n != n:
        raise CacheError(f"{path} holds n={result.n}, expected {n}")
    return result
