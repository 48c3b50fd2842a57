"""Small integer number-theory helpers shared by the exact modules."""

import threading
from functools import lru_cache
from math import gcd

from sympy import isprime


def prime_factors(n):
    """Return the sorted distinct prime divisors of ``n`` (trial division)."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def euler_totient(n):
    """Euler's totient, computed from the prime factorisation of ``n``."""
    if n < 1:
        raise ValueError(f"euler_totient needs n >= 1, got {n}")
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def lcm(a, b):
    return a // gcd(a, b) * b


def divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n):
    if n == 1:
        return 1
    k = 0
    for p in prime_factors(n):
        if n % (p * p) == 0:
            return 0
        k += 1
    return -1 if k % 2 else 1


@lru_cache(maxsize=None)
def units(n):
    """Residues in ``[1, n)`` coprime to ``n``; by convention ``(1,)`` for n <= 2."""
    if n <= 2:
        return (1,)
    return tuple(a for a in range(1, n) if gcd(a, n) == 1)


_SPLIT_PRIMES = {}
_SPLIT_LOCK = threading.Lock()


def split_prime(n, index):
    """The ``index``-th prime ``p = 1 (mod n)`` below 2**62 (descending), with a
    primitive n-th root of unity ``omega`` mod p.

    Returns ``(p, omega)``.  Results are memoised per ``n``.
    """
    with _SPLIT_LOCK:
        found = _SPLIT_PRIMES.setdefault(n, [])
        if len(found) > index:
            return found[index]
        qs = prime_factors(n) if n > 1 else []
        k = (found[-1][0] - 1) // n - 1 if found else (1 << 62) // n
        while len(found) <= index:
            p = k * n + 1
            k -= 1
            if p < 3 or not isprime(p):
                continue
            g = 2
            while True:
                w = pow(g, (p - 1) // n, p)
                if all(pow(w, n // q, p) != 1 for q in qs):
                    break
                g += 1
            found.append((p, w))
        return found[index]
