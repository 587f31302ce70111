"""Elementary number theory shared by the other modules.

Everything here is deterministic and exact; sieves return numpy arrays,
scalar helpers work on plain Python ints.
"""

from __future__ import annotations

from math import gcd, isqrt

import numpy as np


def prime_mask(limit: int) -> np.ndarray:
    """Boolean array p of length limit+1 with p[n] true iff n is prime."""
    if limit < 1:
        return np.zeros(max(limit + 1, 0), dtype=bool)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for d in range(2, isqrt(limit) + 1):
        if mask[d]:
            mask[d * d :: d] = False
    return mask


def primes_up_to(limit: int) -> np.ndarray:
    return np.nonzero(prime_mask(limit))[0]


def squarefree_mask(limit: int) -> np.ndarray:
    """Boolean array s of length limit+1 with s[n] true iff n is squarefree.

    s[0] is set false; 1 counts as squarefree.
    """
    mask = np.ones(limit + 1, dtype=bool)
    if limit >= 0:
        mask[0] = False
    for d in range(2, isqrt(limit) + 1):
        mask[d * d :: d * d] = False
    return mask


def smallest_prime_factor(limit: int) -> np.ndarray:
    """int64 array spf with spf[n] the least prime factor of n (spf[1] = 1)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        spf[1] = 1
    for d in range(2, limit + 1):
        if spf[d] == 0:
            spf[d::d][spf[d::d] == 0] = d
    return spf


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division; fine at desk scale.

    >>> [k for k in range(20) if is_prime(k)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending.

    >>> divisors(12)
    [1, 2, 3, 4, 6, 12]
    """
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    return all(e == 1 for e in factorize(n).values())


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the fully extended Jacobi symbol."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if n < 0:
        return (-1 if a < 0 else 1) * kronecker(a, -n)
    # strip 2s from n; (a|2) is 0 for even a, else chi_8(a)
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    a %= n
    # Jacobi loop, n odd > 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> int:
    """The smaller square root of a modulo an odd prime p (Tonelli-Shanks).

    Deterministic: the quadratic non-residue is found by ascending search.
    Raises ValueError when a is not a residue.
    """
    a %= p
    if p == 2:
        return a
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # write p-1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return min(r, p - r)


def multiplicative_order(a: int, n: int) -> int:
    """Order of a in (Z/n)^*; n is small here so plain iteration is fine."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    t, k = a % n, 1
    while t != 1:
        t = t * a % n
        k += 1
    return k


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def prime_to_p_part(n: int, p: int) -> int:
    """Largest divisor of n coprime to p."""
    while n % p == 0:
        n //= p
    return n
