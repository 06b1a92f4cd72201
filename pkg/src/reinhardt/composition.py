"""Compositions, sign vectors, dihedral canonical forms and the closure criterion."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import IntPolynomial, cyclotomic, divides


class InvalidComposition(ValueError):
    pass


@dataclass(frozen=True, init=False)
class Composition:
    """Parts ``(k_1, ..., k_r)`` of ``n`` with ``r`` odd."""

    parts: tuple[int, ...]
    n: int

    def __init__(self, parts: Iterable[int], n: int | None = None):
        parts = tuple(int(k) for k in parts)
        if not parts:
            raise InvalidComposition("a composition needs at least one part")
        if any(k < 1 for k in parts):
            raise InvalidComposition(f"parts must be positive: {list(parts)}")
        if len(parts) % 2 == 0:
            raise InvalidComposition(f"need an odd number of parts, got {len(parts)}")
        total = sum(parts)
        if n is not None and n != total:
            raise InvalidComposition(f"parts sum to {total}, not {n}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", total)

    @property
    def r(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return format_composition(self.parts)


@dataclass(frozen=True, init=False)
class SignVector:
    """Coefficients of F(z): length n, entries in {-1, 0, 1}, nonzeros alternating from +1, odd in number."""

    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int]):
        entries = tuple(int(u) for u in entries)
        if not entries or entries[0] != 1:
            raise InvalidComposition("sign vector must start with +1")
        expect = 1
        for u in entries:
            if u not in (-1, 0, 1):
                raise InvalidComposition(f"sign vector entry {u} outside {{-1, 0, 1}}")
            if u:
                if u != expect:
                    raise InvalidComposition("nonzero entries must alternate in sign")
                expect = -expect
        if expect != -1:
            raise InvalidComposition("sign vector needs an odd number of nonzero entries")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def support(self) -> list[int]:
        return [i for i, u in enumerate(self.entries) if u]

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.entries)


def composition_to_sign_vector(c: Composition) -> SignVector:
    entries = [0] * c.n
    pos = 0
    for i, k in enumerate(c.parts):
        entries[pos] = -1 if i % 2 else 1
        pos += k
    return SignVector(entries)


def sign_vector_to_composition(v: SignVector) -> Composition:
    return Composition(parts_from_support(v.support(), v.n))


def parts_from_support(support: Sequence[int], n: int) -> tuple[int, ...]:
    """Cyclic gaps between sorted support positions in Z/n."""
    gaps = [b - a for a, b in zip(support, support[1:])]
    gaps.append(n - support[-1] + support[0])
    return tuple(gaps)


def dihedral_images(parts: Sequence[int]) -> list[tuple[int, ...]]:
    parts = tuple(parts)
    rev = parts[::-1]
    r = len(parts)
    return [parts[i:] + parts[:i] for i in range(r)] + [rev[i:] + rev[:i] for i in range(r)]


def canonical_parts(parts: Sequence[int]) -> tuple[int, ...]:
    """Lexicographic maximum over rotations and reversals.

    Only rotations starting at a largest part can win, so those are the only
    candidates compared.
    """
    parts = tuple(parts)
    r = len(parts)
    top = max(parts)
    best = parts
    rev = parts[::-1]
    for i in range(r):
        if parts[i] == top:
            cand = parts[i:] + parts[:i]
            if cand > best:
                best = cand
        if rev[i] == top:
            cand = rev[i:] + rev[:i]
            if cand > best:
                best = cand
    return best


def canonicalize(c: Composition) -> Composition:
    return Composition(canonical_parts(c.parts))


def is_canonical(parts: Sequence[int]) -> bool:
    return tuple(parts) == canonical_parts(parts)


def is_reinhardt(c: Composition) -> bool:
    return divides(cyclotomic(2 * c.n), composition_to_sign_vector(c).polynomial())


# -- text format ------------------------------------------------------------

_GROUP = re.compile(r"\(([^()]*)\)\s*\^\s*\{?\s*(\d+)\s*\}?")


def expand_runlength(text: str) -> tuple[int, ...]:
    """Parse ``[k1,k2,...]`` where items may be run-length groups such as ``(3,1,1)^3``."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise InvalidComposition(f"composition must be bracketed: {text!r}")
    body = body[1:-1]

    def repl(m: re.Match) -> str:
        inner = m.group(1).strip()
        if not inner:
            raise InvalidComposition(f"empty group in {text!r}")
        reps = int(m.group(2))
        if reps < 1:
            raise InvalidComposition(f"group exponent must be positive in {text!r}")
        return ",".join([inner] * reps)

    flat = _GROUP.sub(repl, body)
    if any(ch in flat for ch in "()^{}"):
        raise InvalidComposition(f"malformed run-length notation: {text!r}")
    items = [s.strip() for s in flat.split(",")]
    try:
        parts = tuple(int(s) for s in items)
    except ValueError:
        raise InvalidComposition(f"non-integer part in {text!r}") from None
    return parts


def parse_composition(text: str) -> Composition:
    return Composition(expand_runlength(text))


def format_composition(parts: Iterable[int]) -> str:
    return "[" + ",".join(str(k) for k in parts) + "]"
