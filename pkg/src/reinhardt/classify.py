"""Periodic/sporadic classification and closed-form periodic counts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import divisors, is_power_of_two, is_prime, mobius, totient
from .composition import Composition, InvalidComposition, SignVector, composition_to_sign_vector, is_reinhardt

__all__ = [
    "Classification",
    "periods",
    "classify",
    "mobius",
    "totient",
    "D",
    "E0_formula",
    "E_pq_formula",
]

PERIODIC = "periodic"
SPORADIC = "sporadic"


@dataclass(frozen=True)
class Classification:
    kind: str
    periods: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in (PERIODIC, SPORADIC):
            raise ValueError(f"unknown classification kind {self.kind!r}")
        if (self.kind == SPORADIC) != (not self.periods):
            raise ValueError("periods must be empty exactly when sporadic")

    @property
    def is_periodic(self) -> bool:
        return self.kind == PERIODIC


def candidate_periods(n: int) -> list[int]:
    """Divisors d < n of n with n/d odd."""
    return [d for d in divisors(n) if d < n and (n // d) % 2 == 1]


def is_d_periodic(entries: Sequence[int], d: int) -> bool:
    n = len(entries)
    return all(entries[k] == -entries[k + d] for k in range(n - d))


def periods(v: SignVector) -> list[int]:
    return [d for d in candidate_periods(v.n) if is_d_periodic(v.entries, d)]


def classify(c: Composition) -> Classification:
    if not is_reinhardt(c):
        raise InvalidComposition(f"{c} is not a Reinhardt composition")
    ds = periods(composition_to_sign_vector(c))
    return Classification(PERIODIC, tuple(ds)) if ds else Classification(SPORADIC)


def D(m: int) -> Fraction | int:
    """Auxiliary count entering the periodic formula; exact, integral for m >= 3.

    The leading power of two has a negative exponent for m in {1, 2}, which
    is why this is evaluated over the rationals.
    """
    if m < 1:
        raise ValueError(f"D needs m >= 1, got {m}")
    head = Fraction(2) ** ((m - 3) // 2)
    tail = sum(Fraction(2 ** (m // d) * totient(d)) for d in divisors(m) if d % 2)
    value = head + tail / (4 * m)
    return int(value) if value.denominator == 1 else value


def E0_formula(n: int) -> int:
    """Number of periodic Reinhardt n-gons up to dihedral equivalence."""
    if n < 3 or is_power_of_two(n):
        raise ValueError(f"no Reinhardt polygons for n={n} (need n >= 3, not a power of two)")
    total = sum(mobius(2 * d) * Fraction(D(n // d)) for d in divisors(n) if d > 1)
    if total.denominator != 1:
        raise ArithmeticError(f"periodic count for n={n} is not integral: {total}")
    return int(total)


def E_pq_formula(p: int, q: int) -> int:
    """Total Reinhardt polygon count for n = p*q with p, q distinct odd primes."""
    for x in (p, q):
        if x == 2 or not is_prime(x):
            raise ValueError(f"{x} is not an odd prime")
    if p == q:
        raise ValueError("p and q must be distinct")

    def part(x: int) -> Fraction:
        return Fraction(2) ** ((x - 3) // 2) + Fraction(2 ** (x - 1) + x - 1, 2 * x)

    total = part(p) + part(q) - 1
    if total.denominator != 1:
        raise ArithmeticError(f"E({p}*{q}) not integral: {total}")
    return int(total)
