"""Small exact number-theory helpers used throughout the package."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def nth_prime(k: int) -> int:
    """The k-th prime, 1-based: nth_prime(1) == 2."""
    if k < 1:
        raise ValueError("prime index must be >= 1")
    while len(_PRIMES) < k:
        c = _PRIMES[-1] + 2
        while not is_prime(c):
            c += 2
        _PRIMES.append(c)
    return _PRIMES[k - 1]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}; {} for n == 1."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def int_valuation(n: int, p: int) -> int | None:
    """p-adic valuation of an integer; None stands for +infinity (n == 0)."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def frac_valuation(q: Fraction | int, p: int) -> int | None:
    """p-adic valuation of a rational; None stands for +infinity (q == 0)."""
    if q == 0:
        return None
    q = Fraction(q)
    vn = int_valuation(q.numerator, p)
    vd = int_valuation(q.denominator, p)
    assert vn is not None and vd is not None
    return vn - vd


def valuation_at_least(q: Fraction | int, p: int, e: int) -> bool:
    v = frac_valuation(q, p)
    return v is None or v >= e


def residue_mod(c: Fraction | int, m: int) -> int:
    """The residue of a rational with denominator coprime to m, in [0, m)."""
    if m == 1:
        return 0
    c = Fraction(c)
    return (c.numerator * pow(c.denominator, -1, m)) % m


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Residue mod m1*m2 matching r1 mod m1 and r2 mod m2 (coprime moduli)."""
    u = pow(m1, -1, m2) if m2 > 1 else 0
    return (r1 + m1 * ((r2 - r1) * u % m2)) % (m1 * m2)


def sqrt_enclosure(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational interval [lo, hi] containing sqrt(n), of width 2**-bits."""
    s = isqrt(n << (2 * bits))
    return Fraction(s, 1 << bits), Fraction(s + 1, 1 << bits)


def int_above(q: Fraction | int) -> int:
    """Smallest integer strictly greater than q."""
    q = Fraction(q)
    return q.numerator // q.denominator + 1


def int_below(q: Fraction | int) -> int:
    """Largest integer strictly less than q."""
    return -int_above(-Fraction(q))
