"""Dense integer polynomials and cyclotomic polynomials.

A polynomial is stored as a tuple of Python ints, constant term first, with
trailing zeros trimmed; the zero polynomial is the empty tuple and has
degree -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .arith import divisors, mobius


@dataclass(frozen=True, init=False)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> IntPolynomial:
        """Build from an ``{exponent: coefficient}`` mapping."""
        if not terms:
            return cls()
        c = [0] * (max(terms) + 1)
        for k, v in terms.items():
            c[k] += v
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial([-x for x in self.coeffs])

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial([other * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def subs_power(self, k: int, sign: int = 1) -> IntPolynomial:
        """Return ``P(sign * z**k)``."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, x in enumerate(self.coeffs):
            out[k * i] = x * sign**i
        return IntPolynomial(out)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "IntPolynomial(0)"
        text = ""
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                mag = str(abs(c)) if abs(c) != 1 or not mono else ""
                if text:
                    text += " - " if c < 0 else " + "
                elif c < 0:
                    text = "-"
                text += mag + mono
        return f"IntPolynomial({text})"


def poly_divrem(num: IntPolynomial, den: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Exact division by a monic polynomial; returns ``(quotient, remainder)``."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if not den.is_monic():
        raise ValueError(f"divisor must be monic, got leading coefficient {den.coeffs[-1]}")
    d = den.degree
    rem = list(num.coeffs)
    if len(rem) <= d:
        return IntPolynomial(), IntPolynomial(rem)
    quot = [0] * (len(rem) - d)
    dc = den.coeffs
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k]
        if c:
            shift = k - d
            quot[shift] = c
            for j in range(d + 1):
                rem[shift + j] -= c * dc[j]
    return IntPolynomial(quot), IntPolynomial(rem[:d])


def divides(den: IntPolynomial, num: IntPolynomial) -> bool:
    return poly_divrem(num, den)[1].is_zero()


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial, as a Möbius product of ``z**k - 1`` factors."""
    if m < 1:
        raise ValueError(f"cyclotomic index must be positive, got {m}")
    num = IntPolynomial([1])
    dens = []
    for d in divisors(m):
        mu = mobius(d)
        factor = IntPolynomial.monomial(m // d) - IntPolynomial([1])
        if mu == 1:
            num = num * factor
        elif mu == -1:
            dens.append(factor)
    for den in dens:
        num, r = poly_divrem(num, den)
        assert r.is_zero()
    return num


def reduction_table(modulus: IntPolynomial, count: int) -> list[tuple[int, ...]]:
    """Coefficient vectors of ``z**j mod modulus`` for ``0 <= j < count``.

    Each vector has length ``deg(modulus)``; multiplying by z and reducing
    once per step keeps this linear in ``count``.
    """
    d = modulus.degree
    mc = modulus.coeffs
    cur = [0] * d
    out = []
    for j in range(count):
        if j < d:
            cur = [0] * d
            cur[j] = 1
        else:
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * mc[i]
        out.append(tuple(cur))
    return out


def bezout(a: IntPolynomial, b: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Integer cofactors ``(s, t)`` with ``s*a + t*b == 1``, ``deg s < deg b``, ``deg t < deg a``.

    Runs the extended Euclidean algorithm over the rationals and insists the
    result is integral; raises ValueError when no integral identity exists.
    """
    def norm(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def sub(p, q):
        n = max(len(p), len(q))
        return norm([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])

    def mul(p, q):
        if not p or not q:
            return []
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            for j, y in enumerate(q):
                out[i + j] += x * y
        return norm(out)

    def divmod_(p, q):
        p = list(p)
        quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
        while len(p) >= len(q) and p:
            c = p[-1] / q[-1]
            k = len(p) - len(q)
            quot[k] = c
            p = sub(p, [Fraction(0)] * k + [c * x for x in q])
        return norm(quot), p

    r0, r1 = [Fraction(x) for x in a.coeffs], [Fraction(x) for x in b.coeffs]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        qt, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(qt, s1))
        t0, t1 = t1, sub(t0, mul(qt, t1))
    if len(r0) != 1:
        raise ValueError("polynomials are not coprime")
    g = r0[0]
    s = [x / g for x in s0]
    t = [x / g for x in t0]
    if any(x.denominator != 1 for x in s + t):
        raise ValueError("no integral Bezout identity")
    return IntPolynomial(int(x) for x in s), IntPolynomial(int(x) for x in t)
