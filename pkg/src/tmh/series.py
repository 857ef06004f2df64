"""Truncated power series over the rationals and the fundamental-class pairing.

The cohomology ring of the ambient projective bundle ``V`` is
``Z[u, v] / (u^(n1+1), v (v - i_1 u) ... (v - i_n2 u))``. Rather than reduce
modulo the second relation, products are kept as bivariate series capped at
u-degree ``n1`` and total degree ``n1 + n2``; the pairing then evaluates each
top-degree monomial ``u^a v^(n1+n2-a)`` as ``h_(n1-a)(I)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .combinatorics import Rational


@dataclass(frozen=True)
class UniSeries:
    """Univariate series truncated after degree ``len(coeffs) - 1``."""

    coeffs: Tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> Fraction:
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return Fraction(0)

    def __mul__(self, other: UniSeries) -> UniSeries:
        D = min(self.degree, other.degree)
        out = [Fraction(0)] * (D + 1)
        for i in range(D + 1):
            a = self.coeffs[i]
            if a:
                for j in range(D + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return UniSeries(tuple(out))

    def inverse(self) -> UniSeries:
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        c0 = self.coeffs[0]
        inv: List[Fraction] = [1 / c0]
        for m in range(1, len(self.coeffs)):
            acc = sum((self.coeffs[j] * inv[m - j] for j in range(1, m + 1)), Fraction(0))
            inv.append(-acc / c0)
        return UniSeries(tuple(inv))


def exp_series(c: Rational, D: int) -> UniSeries:
    """``e^(c x)`` to degree ``D``."""
    c = Fraction(c)
    return UniSeries(tuple(c**m / math.factorial(m) for m in range(D + 1)))


def one_minus_exp_neg_over_x(D: int) -> UniSeries:
    """``(1 - e^(-x)) / x``, coefficient ``m`` being ``(-1)^m / (m+1)!``."""
    return UniSeries(tuple(Fraction((-1) ** m, math.factorial(m + 1)) for m in range(D + 1)))


@lru_cache(maxsize=None)
def todd_series(D: int) -> UniSeries:
    """Todd series ``x / (1 - e^(-x))``; coefficient ``m`` is ``B_m(1) / m!``."""
    if D < 0:
        raise ValueError(f"D must be non-negative, got {D}")
    return one_minus_exp_neg_over_x(D).inverse()


@lru_cache(maxsize=None)
def q_series(D: int) -> UniSeries:
    """``e^(-x/2) x / (1 - e^(-x)) = (x/2) / sinh(x/2)``, the A-hat series."""
    return exp_series(Fraction(-1, 2), D) * todd_series(D)


class BiSeries:
    """Sparse polynomial in ``u, v`` truncated at ``deg_u <= U`` and total degree ``<= D``."""

    __slots__ = ("coeffs", "U", "D")

    def __init__(self, coeffs: Dict[Tuple[int, int], Fraction], U: int, D: int):
        self.U = U
        self.D = D
        self.coeffs = {
            (a, b): Fraction(c)
            for (a, b), c in coeffs.items()
            if c and a <= U and a + b <= D
        }

    @classmethod
    def one(cls, U: int, D: int) -> BiSeries:
        return cls({(0, 0): Fraction(1)}, U, D)

    @classmethod
    def monomial(cls, a: int, b: int, U: int, D: int, c: Rational = 1) -> BiSeries:
        return cls({(a, b): Fraction(c)}, U, D)

    def coeff(self, a: int, b: int) -> Fraction:
        return self.coeffs.get((a, b), Fraction(0))

    def _check_caps(self, other: BiSeries) -> None:
        if (self.U, self.D) != (other.U, other.D):
            raise ValueError(f"cap mismatch: {(self.U, self.D)} vs {(other.U, other.D)}")

    def __add__(self, other: BiSeries) -> BiSeries:
        self._check_caps(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + c
        return BiSeries(out, self.U, self.D)

    def scale(self, c: Rational) -> BiSeries:
        return BiSeries({k: c * x for k, x in self.coeffs.items()}, self.U, self.D)

    def __mul__(self, other: BiSeries) -> BiSeries:
        return bi_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.U, self.D) == (other.U, other.D) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*u^{a}v^{b}" for (a, b), c in sorted(self.coeffs.items()))
        return f"BiSeries({terms or '0'}; U={self.U}, D={self.D})"


def bi_mul(p: BiSeries, q: BiSeries) -> BiSeries:
    p._check_caps(q)
    U, D = p.U, p.D
    out: Dict[Tuple[int, int], Fraction] = {}
    for (a1, b1), c1 in p.coeffs.items():
        for (a2, b2), c2 in q.coeffs.items():
            a, b = a1 + a2, b1 + b2
            if a <= U and a + b <= D:
                out[(a, b)] = out.get((a, b), Fraction(0)) + c1 * c2
    return BiSeries(out, U, D)


def bi_pow(p: BiSeries, e: int) -> BiSeries:
    if e < 0:
        raise ValueError(f"exponent must be non-negative, got {e}")
    result = BiSeries.one(p.U, p.D)
    base = p
    while e:
        if e & 1:
            result = bi_mul(result, base)
        e >>= 1
        if e:
            base = bi_mul(base, base)
    return result


def substitute_linear(s: UniSeries, cu: Rational, cv: Rational, U: int, D: int) -> BiSeries:
    """``s(cu*u + cv*v)`` expanded by the binomial theorem and truncated to the caps."""
    if s.degree < D:
        raise ValueError(f"series known to degree {s.degree}, need {D}")
    cu, cv = Fraction(cu), Fraction(cv)
    out: Dict[Tuple[int, int], Fraction] = {}
    for m in range(D + 1):
        sm = s[m]
        if not sm:
            continue
        for a in range(min(m, U) + 1):
            out[(a, m - a)] = out.get((a, m - a), Fraction(0)) + (
                sm * math.comb(m, a) * cu**a * cv ** (m - a)
            )
    return BiSeries(out, U, D)


def beta(k: int, twist: Sequence[int]) -> int:
    """Complete homogeneous symmetric polynomial ``h_k`` of the twist entries."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    h = [1] + [0] * k
    for x in twist:
        for j in range(1, k + 1):
            h[j] += x * h[j - 1]
    return h[k]


@dataclass(frozen=True)
class FundamentalClassPairing:
    """``<u^(n1-k) v^(n2+k), [V]> = betas[k]`` for ``0 <= k <= n1``."""

    n1: int
    n2: int
    betas: Tuple[int, ...]

    @classmethod
    def of(cls, n1: int, n2: int, twist: Sequence[int]) -> FundamentalClassPairing:
        return cls(n1, n2, tuple(beta(k, twist) for k in range(n1 + 1)))

    def __call__(self, p: BiSeries) -> Fraction:
        top = self.n1 + self.n2
        if p.D < top or p.U < self.n1:
            raise ValueError(f"series truncated at (U={p.U}, D={p.D}) cannot be paired in degree {top}")
        return sum(
            (p.coeff(a, top - a) * self.betas[self.n1 - a] for a in range(self.n1 + 1)),
            Fraction(0),
        )


def pair(p: BiSeries, n1: int, n2: int, twist: Sequence[int]) -> Fraction:
    """Evaluate ``p`` on the fundamental class of ``V``."""
    return FundamentalClassPairing.of(n1, n2, twist)(p)


@lru_cache(maxsize=None)
def a_hat_class(n1: int, n2: int, twist: Tuple[int, ...]) -> BiSeries:
    """``Q(u)^(n1+1) Q(v) prod_j Q(v - i_j u)`` truncated for pairing on ``V``."""
    U, D = n1, n1 + n2
    q = q_series(D)
    prod = bi_pow(substitute_linear(q, 1, 0, U, D), n1 + 1)
    qv = substitute_linear(q, 0, 1, U, D)
    prod = bi_mul(prod, qv)
    for i in twist:
        factor = qv if i == 0 else substitute_linear(q, -i, 1, U, D)
        prod = bi_mul(prod, factor)
    return prod


def genus_pairing(spec, sign: int = 1) -> Fraction:
    """``<Q(u)^(n1+1) Q(v) prod Q(v - i_j u) e^(sign (d1 u + d2 v)/2), [V]>``.

    ``spec`` needs ``n1``, ``n2``, ``twist``, ``d1`` and ``d2`` attributes.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    n1, n2, twist = spec.n1, spec.n2, tuple(spec.twist)
    U, D = n1, n1 + n2
    e = substitute_linear(
        exp_series(1, D), Fraction(sign * spec.d1, 2), Fraction(sign * spec.d2, 2), U, D
    )
    return pair(bi_mul(a_hat_class(n1, n2, twist), e), n1, n2, twist)


def total_chern_class(n1: int, n2: int, twist: Sequence[int]) -> BiSeries:
    """``c(V) = (1+u)^(n1+1) (1+v) prod_j (1 + v - i_j u)``."""
    U, D = n1, n1 + n2
    one = BiSeries.one(U, D)
    c = bi_pow(one + BiSeries.monomial(1, 0, U, D), n1 + 1)
    c = bi_mul(c, one + BiSeries.monomial(0, 1, U, D))
    for i in twist:
        c = bi_mul(c, BiSeries({(0, 0): 1, (0, 1): 1, (1, 0): -i}, U, D))
    return c


def chern_and_euler(n1: int, n2: int, twist: Sequence[int]) -> Tuple[Tuple[int, int], int]:
    """``c_1(V)`` as ``(u, v)`` coefficients and ``chi(V) = <c_top(V), [V]>``."""
    c = total_chern_class(n1, n2, twist)
    c1 = (int(c.coeff(1, 0)), int(c.coeff(0, 1)))
    euler = pair(c, n1, n2, twist)
    assert euler.denominator == 1
    return c1, int(euler)


def elementary_symmetric(twist: Iterable[int], k: int) -> int:
    e = [1] + [0] * k
    for x in twist:
        for j in range(k, 0, -1):
            e[j] += x * e[j - 1]
    return e[k]
