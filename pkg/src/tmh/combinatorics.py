"""Exact binomials, the numbers A(n, l) and mod-2 binomial machinery.

Integers are Python ints and rationals are :class:`fractions.Fraction`,
so every value here is exact. No floating point is used anywhere.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

Rational = Union[int, Fraction]
DyadicExpansion = Tuple[int, ...]


def binom_general(x: Rational, n: int) -> Fraction:
    """Generalised binomial ``x (x-1) ... (x-n+1) / n!`` for rational ``x``."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    num = 1
    for i in range(n):
        num *= p - i * q
    return Fraction(num, q**n * math.factorial(n))


def binom_nk(n: int, k: int) -> int:
    """Return ``binom(n + k, n)`` for ``n >= 0`` and any integer ``k``."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k >= 0:
        return math.comb(n + k, n)
    if k >= -n:
        # the falling product (n+k)...(k+1) passes through zero
        return 0
    # binom(n+k, n) = (-1)^n binom(-k-1, n)
    sign = -1 if n % 2 else 1
    return sign * math.comb(-k - 1, n)


def dyadic(n: int) -> DyadicExpansion:
    """Base-2 digits of ``n``, least significant first; ``()`` for 0."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    bits = []
    while n:
        bits.append(n & 1)
        n >>= 1
    return tuple(bits)


def _digit(bits: DyadicExpansion, i: int) -> int:
    return bits[i] if i < len(bits) else 0


def digits_disjoint(a: int, b: int) -> bool:
    """True iff ``a_i(a) + a_i(b) <= 1`` for every dyadic position ``i``."""
    da, db = dyadic(a), dyadic(b)
    return all(_digit(da, i) + _digit(db, i) <= 1 for i in range(max(len(da), len(db))))


def _lucas_nonneg(top: int, bottom: int) -> int:
    # product of bit binomials binom(a_i(top), a_i(bottom)); only binom(0, 1) vanishes
    dt, db = dyadic(top), dyadic(bottom)
    for i in range(len(db)):
        if db[i] == 1 and _digit(dt, i) == 0:
            return 0
    return 1


def binom_mod2_lucas(n: int, k: int) -> int:
    """``binom(n + k, n) mod 2`` via dyadic digits (Lucas)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k >= 0:
        return _lucas_nonneg(n + k, n)
    if k >= -n:
        return 0
    return _lucas_nonneg(-k - 1, n)


def binom_odd_iff(n: int, k: int) -> bool:
    """Decide whether ``binom(n + k, n)`` is odd from digit disjointness alone."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k >= 0:
        return digits_disjoint(n, k)
    if k >= -n:
        return False
    return digits_disjoint(-k - 1 - n, n)


def binom_mod2_reduced(m: int, n: int) -> int:
    """``binom(m + n, n) mod 2`` by the reduction through quotients by 4."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    while m and n:
        if (n * m) % 2 == 1 or ((n // 2) * (m // 2)) % 2 == 1:
            return 0
        m, n = m // 4, n // 4
    return 1


def prop18_check(m: int, n: int) -> int:
    """Right-hand side of ``binom(4m+n, 4m) == binom(m + [n/4], m) mod 2``."""
    return binom_mod2_lucas(m, n // 4)


def prop11_check(m: int, n: int) -> int:
    """Right-hand side of the reduction for ``binom(4m+1+n, 4m+1) mod 2``."""
    if n % 2 == 1:
        return 0
    return binom_mod2_lucas(m, n // 4)


@lru_cache(maxsize=None)
def a_number(n: int, l: int) -> Fraction:
    """A(n, l) = l!/n! S(n, l), via ``A(n,l) = l/n (A(n-1,l) + A(n-1,l-1))``."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if l < 0 or l > n:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    return Fraction(l, n) * (a_number(n - 1, l) + a_number(n - 1, l - 1))


def a_number_explicit(n: int, l: int) -> Fraction:
    """A(n, l) from the alternating sum ``1/n! sum (-1)^(l-m) binom(l,m) m^n``."""
    if l < 0 or l > n:
        return Fraction(0)
    total = sum((-1) ** (l - m) * math.comb(l, m) * m**n for m in range(l + 1))
    return Fraction(total, math.factorial(n))


@lru_cache(maxsize=None)
def stirling2(n: int, l: int) -> int:
    """Stirling numbers of the second kind by ``S(n,l) = l S(n-1,l) + S(n-1,l-1)``."""
    if n < 0 or l < 0:
        raise ValueError("n and l must be non-negative")
    if n == 0:
        return 1 if l == 0 else 0
    if l == 0 or l > n:
        return 0
    return l * stirling2(n - 1, l) + stirling2(n - 1, l - 1)


def bell(n: int) -> int:
    return sum(stirling2(n, l) for l in range(n + 1))


def bernoulli0(n: int) -> Fraction:
    """B_n(0), the coefficients of ``x / (e^x - 1)`` times ``n!``.

    Uses ``sum_l (-1)^l n!/(l+1) A(n, l)``; without the sign the sum
    does not reproduce ``B_1(0) = -1/2``.
    """
    nf = math.factorial(n)
    return sum(
        (Fraction((-1) ** l * nf, l + 1) * a_number(n, l) for l in range(n + 1)),
        Fraction(0),
    )


def divided_difference_power(n: int, l: int) -> Fraction:
    """l-th divided difference of ``x^n`` at the nodes ``0, 1, ..., l``."""
    if n < 0 or l < 0:
        raise ValueError("n and l must be non-negative")
    total = sum((-1) ** (l - m) * math.comb(l, m) * m**n for m in range(l + 1))
    return Fraction(total, math.factorial(l))
