"""Splitting a Reinhardt polynomial at n = p*q over the two generator multiples.

Every Reinhardt polynomial of degree below pq is divisible by Φ_{2pq}, and

    Φ_p(-z^q) = Φ_{2p}(z) Φ_{2pq}(z),    Φ_q(-z^p) = Φ_{2q}(z) Φ_{2pq}(z),

so writing F = f1·Φ_p(-z^q) + f2·Φ_q(-z^p) amounts to solving
h = f1·Φ_{2p} + f2·Φ_{2q} for h = F / Φ_{2pq}.  The Bezout identity for the
coprime pair (Φ_{2p}, Φ_{2q}) gives one solution; all solutions with
deg f1 < q differ from it by integer multiples of (Φ_{2q}, -Φ_{2p}).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import is_prime
from .composition import Composition, InvalidComposition, SignVector, composition_to_sign_vector
from .poly import IntPolynomial, bezout, cyclotomic, divides, poly_divrem

_ONE = IntPolynomial([1])


@dataclass(frozen=True)
class Decomposition:
    f1: IntPolynomial
    f2: IntPolynomial
    trivial: bool


@dataclass(frozen=True)
class TrivialSides:
    p_side: bool
    q_side: bool

    @property
    def either(self) -> bool:
        return self.p_side or self.q_side


def _check_primes(n: int, p: int, q: int) -> None:
    for x in (p, q):
        if x == 2 or not is_prime(x):
            raise ValueError(f"{x} is not an odd prime")
    if p == q:
        raise ValueError("p and q must be distinct")
    if p * q != n:
        raise ValueError(f"p*q = {p * q} does not match n = {n}")


def _as_polynomial(F: SignVector | Composition, p: int, q: int) -> IntPolynomial:
    v = composition_to_sign_vector(F) if isinstance(F, Composition) else F
    _check_primes(v.n, p, q)
    poly = v.polynomial()
    if not divides(cyclotomic(2 * v.n), poly):
        raise InvalidComposition("input is not a Reinhardt polynomial")
    return poly


@lru_cache(maxsize=None)
def generators(p: int, q: int) -> tuple[IntPolynomial, IntPolynomial]:
    """The pair (Φ_p(-z^q), Φ_q(-z^p))."""
    return cyclotomic(p).subs_power(q, -1), cyclotomic(q).subs_power(p, -1)


@lru_cache(maxsize=None)
def _cofactors(p: int, q: int):
    g1, g2 = cyclotomic(2 * p), cyclotomic(2 * q)
    a, b = bezout(g1, g2)
    return g1, g2, a, b


def reconstruct(f1: IntPolynomial, f2: IntPolynomial, p: int, q: int) -> IntPolynomial:
    G1, G2 = generators(p, q)
    return f1 * G1 + f2 * G2


def _tri_valued(f: IntPolynomial) -> bool:
    return all(c in (-1, 0, 1) for c in f.coeffs)


def _is_trivial(f1: IntPolynomial, f2: IntPolynomial, p: int, q: int) -> bool:
    g1, g2 = cyclotomic(2 * p), cyclotomic(2 * q)
    return f1.is_zero() or f2.is_zero() or f1 in (g2, -g2) or f2 in (g1, -g1)


def decompose(F: SignVector | Composition, p: int, q: int) -> Decomposition:
    """Tri-valued (f1, f2) with deg f1 < q, deg f2 < p reconstructing F.

    Among the admissible shifts the one with f1(0) = 1 and f2(0) = 0 is
    preferred; otherwise the candidate with the fewest nonzero coefficients
    is returned.  Failing to find any tri-valued pair raises AssertionError.
    """
    poly = _as_polynomial(F, p, q)
    h, rem = poly_divrem(poly, cyclotomic(2 * p * q))
    assert rem.is_zero()
    g1, g2, a, b = _cofactors(p, q)
    c, f1 = poly_divrem(h * a, g2)
    f2 = h * b + c * g1
    assert f1 * g1 + f2 * g2 == h

    # shifting by m moves every coefficient of f1 by at most |m|
    bound = 2 + max((abs(x) for x in f1.coeffs + f2.coeffs), default=0)
    found = []
    for m in range(-bound, bound + 1):
        s1 = f1 + g2 * m
        s2 = f2 - g1 * m
        if _tri_valued(s1) and _tri_valued(s2):
            found.append((s1, s2))
    if not found:
        raise AssertionError(f"no tri-valued decomposition found for p={p}, q={q}")

    def rank(pair):
        s1, s2 = pair
        normalized = s1[0] == 1 and s2[0] == 0
        weight = sum(map(abs, s1.coeffs)) + sum(map(abs, s2.coeffs))
        return (not normalized, weight, s1.coeffs, s2.coeffs)

    s1, s2 = min(found, key=rank)
    assert reconstruct(s1, s2, p, q) == poly
    return Decomposition(s1, s2, _is_trivial(s1, s2, p, q))


def has_trivial_decomposition(F: SignVector | Composition, p: int, q: int) -> TrivialSides:
    """Which generator, if any, divides F on its own."""
    poly = _as_polynomial(F, p, q)
    G1, G2 = generators(p, q)
    return TrivialSides(p_side=divides(G1, poly), q_side=divides(G2, poly))
