"""Integer primality and factorization: trial division with a deterministic
Pollard-rho fallback.  Factorization results keep an explicit unfactored
cofactor so callers can report partial factorizations honestly."""

from __future__ import annotations

import math
from typing import Dict, List, Tuple

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# These Miller-Rabin bases are deterministic for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n; deterministic seed sweep."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"pollard rho failed on {n}")


def factorize(n: int, trial_bound: int = 100_000,
              hard_limit_bits: int = 256) -> Dict:
    """Factor a positive integer.

    Returns {"value": n, "factors": [(p, e), ...], "cofactor": c} with
    prod(p**e) * c == n; the cofactor is 1 unless a piece larger than
    hard_limit_bits resisted rho (left unfactored, reported as-is).
    """
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    value = n
    factors: Dict[int, int] = {}
    for p in range(2, trial_bound):
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    cofactor = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        if m.bit_length() > hard_limit_bits:
            cofactor *= m
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return {
        "value": value,
        "factors": sorted(factors.items()),
        "cofactor": cofactor,
    }


_prime_pool: List[int] = []


def modular_primes(count: int) -> List[int]:
    """The first `count` primes descending from 2**30 (for CRT determinants)."""
    candidate = _prime_pool[-1] - 2 if _prime_pool else 2 ** 30 - 1
    while len(_prime_pool) < count:
        if is_prime(candidate):
            _prime_pool.append(candidate)
        candidate -= 2
    return _prime_pool[:count]
