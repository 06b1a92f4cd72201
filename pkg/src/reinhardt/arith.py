"""Small-integer number theory by trial division.

Every input here is tiny (polygon side counts, cyclotomic indices), so
nothing cleverer than trial division is warranted.
"""
from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for prime, exp in factorize(n):
        divs = [d * prime**k for d in divs for k in range(exp + 1)]
    return sorted(divs)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def odd_prime_divisors(n: int) -> list[int]:
    return [prime for prime, _ in factorize(n) if prime != 2]


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def mobius(n: int) -> int:
    """Möbius function: 0 on non-squarefree ``n``, else ``(-1)**(number of primes)``."""
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def totient(n: int) -> int:
    """Euler's totient via the product formula."""
    result = n
    for prime, _ in factorize(n):
        result = result // prime * (prime - 1)
    return result
