"""A-hat genus, alpha invariant and PSC verdicts of twisted Milnor hypersurfaces.

``H^I_{n1,n2}(d1, d2)`` is the hypersurface dual to ``d1 u + d2 v`` in
``V = CP(eta^i_1 + ... + eta^i_n2 + C) -> CP^n1``. Everything here is a
function of the five integers/vectors in :class:`TwistSpec`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Tuple

from .combinatorics import binom_general, binom_nk, digits_disjoint
from .series import elementary_symmetric


class MalformedSpec(ValueError):
    pass


class NotSpin(ValueError):
    pass


class WrongShape(ValueError):
    pass


class IntegralityViolation(ArithmeticError):
    pass


@dataclass(frozen=True)
class TwistSpec:
    n1: int
    n2: int
    twist: Tuple[int, ...]
    d1: int
    d2: int

    def __post_init__(self):
        object.__setattr__(self, "twist", tuple(int(i) for i in self.twist))
        if self.n1 < 1 or self.n2 < 1:
            raise MalformedSpec(f"n1 and n2 must be >= 1, got n1={self.n1}, n2={self.n2}")
        if len(self.twist) != self.n2:
            raise MalformedSpec(
                f"twist vector must have length n2={self.n2}, got {len(self.twist)}"
            )

    @property
    def sigma1(self) -> int:
        return sum(self.twist)

    @property
    def sigma2(self) -> int:
        return elementary_symmetric(self.twist, 2)

    @property
    def dim_real(self) -> int:
        return 2 * (self.n1 + self.n2) - 2

    def negated(self) -> TwistSpec:
        return TwistSpec(self.n1, self.n2, self.twist, -self.d1, -self.d2)


@dataclass(frozen=True)
class SpinData:
    is_spin: bool
    k1: Optional[int] = None
    k2: Optional[int] = None


@dataclass(frozen=True)
class KOClass:
    """An element of ``KO_n(pt)``; ``value`` is None for the trivial group."""

    n_mod_8: int
    group: str  # "Z", "Z2" or "Trivial"
    value: Optional[int] = None

    @property
    def nonzero(self) -> bool:
        return bool(self.value)


def ko_group(n: int) -> str:
    r = n % 8
    if r in (0, 4):
        return "Z"
    if r in (1, 2):
        return "Z2"
    return "Trivial"


def spin_check(spec: TwistSpec) -> SpinData:
    """Spin (with the structure induced from V) iff ``c1`` of the hypersurface is even."""
    a = spec.d1 - spec.n1 - 1 + spec.sigma1
    b = spec.d2 - spec.n2 - 1
    if a % 2 or b % 2:
        return SpinData(False)
    return SpinData(True, a // 2, b // 2)


def _compositions(r: int, budget: int) -> Iterator[Tuple[int, ...]]:
    # r parts, each >= 1, total <= budget, lexicographic
    if r == 0:
        yield ()
        return
    for first in range(1, budget - (r - 1) + 1):
        for rest in _compositions(r - 1, budget - first):
            yield (first,) + rest


def f_closed(spec: TwistSpec) -> Fraction:
    """The closed-form binomial sum F_{n1,n2,I}(d1, d2).

    Summands whose index subset contains a zero twist cancel in the
    alternating m-sum, so only subsets of the nonzero entries are visited.
    """
    n1, n2 = spec.n1, spec.n2
    top1 = Fraction(spec.d1 + n1 - 1 + spec.sigma1, 2)
    top2 = Fraction(spec.d2 + n2 - 1, 2)
    nonzero = [i for i in spec.twist if i != 0]
    total = Fraction(0)
    for r in range(min(len(nonzero), n1) + 1):
        for s in itertools.combinations(nonzero, r):
            for ls in _compositions(r, n1):
                L = sum(ls)
                outer = binom_general(top2 + L - r, n2 + L)
                if not outer:
                    continue
                inner = Fraction(0)
                for ms in itertools.product(*(range(l + 1) for l in ls)):
                    coef = 1
                    for l, m in zip(ls, ms):
                        coef *= math.comb(l, m)
                    if sum(ms) % 2:
                        coef = -coef
                    shift = sum(i * m for i, m in zip(s, ms))
                    inner += coef * binom_general(top1 - shift, n1)
                total += outer * inner
    return total


def _require_integer(x: Fraction, what: str, spec: TwistSpec) -> int:
    if x.denominator != 1:
        raise IntegralityViolation(f"{what} = {x} is not an integer for {spec}")
    return x.numerator


def a_hat_difference(spec: TwistSpec) -> Fraction:
    """``F(d1, d2) - F(-d1, -d2)``, with no dimension convention applied."""
    return f_closed(spec) - f_closed(spec.negated())


def a_hat(spec: TwistSpec) -> Fraction:
    """The A-hat genus; 0 unless the real dimension is divisible by 4.

    Integral whenever the spec is spin. Non-spin hypersurfaces can have a
    fractional A-hat genus, which is returned exactly.
    """
    if (spec.n1 + spec.n2) % 2 == 0:
        return Fraction(0)
    value = a_hat_difference(spec)
    if spin_check(spec).is_spin:
        _require_integer(value, "A-hat", spec)
    return value


def alpha(spec: TwistSpec) -> KOClass:
    """Atiyah-Milnor-Singer invariant in ``KO_dim(pt)``."""
    if not spin_check(spec).is_spin:
        raise NotSpin(f"{spec} carries no induced spin structure")
    n = spec.dim_real % 8
    group = ko_group(n)
    if n == 0:
        return KOClass(n, group, _require_integer(a_hat(spec), "A-hat", spec))
    if n == 4:
        ah = _require_integer(a_hat(spec), "A-hat", spec)
        if ah % 2:
            raise IntegralityViolation(f"A-hat = {ah} is odd in dimension 8k+4 for {spec}")
        return KOClass(n, group, ah // 2)
    if n == 2:
        f = _require_integer(f_closed(spec), "F", spec)
        return KOClass(n, group, f % 2)
    return KOClass(n, group, None)


def _spin_k(spec: TwistSpec) -> Tuple[int, int]:
    sd = spin_check(spec)
    if not sd.is_spin:
        raise NotSpin(f"{spec} carries no induced spin structure")
    return sd.k1, sd.k2


def alpha_closed_n1_1(spec: TwistSpec) -> int:
    """alpha mod 2 for ``n1 = 1, n2 = 1 mod 4``: ``(k1+1) C(n2+k2, n2) + s1 C(n2+k2, n2+1)``."""
    if spec.n1 != 1 or spec.n2 % 4 != 1:
        raise WrongShape(f"need n1 = 1 and n2 = 1 mod 4, got {spec}")
    k1, k2 = _spin_k(spec)
    n2 = spec.n2
    value = (k1 + 1) * binom_nk(n2, k2) + spec.sigma1 * binom_nk(n2 + 1, k2 - 1)
    return value % 2


def alpha_closed_n1_2(spec: TwistSpec) -> int:
    """alpha mod 2 for ``n1 = 2, n2 = 0 mod 4``."""
    if spec.n1 != 2 or spec.n2 % 4 != 0:
        raise WrongShape(f"need n1 = 2 and n2 = 0 mod 4, got {spec}")
    k1, k2 = _spin_k(spec)
    n2, s1, s2 = spec.n2, spec.sigma1, spec.sigma2
    power_sum = s1 * s1 - 2 * s2
    middle = Fraction(-power_sum + (2 * k1 + 3) * s1, 2)
    value = (
        binom_nk(2, k1) * binom_nk(n2, k2)
        + middle * binom_nk(n2 + 1, k2 - 1)
        + power_sum * binom_nk(n2 + 2, k2 - 1)
        + s2 * binom_nk(n2 + 2, k2 - 2)
    )
    return _require_integer(value, "closed-form alpha", spec) % 2


def psc_verdict(spec: TwistSpec) -> str:
    """"exists", "obstructed" or "inapplicable" (non-spin, or dimension below 5).

    Simple connectivity is assumed, not checked.
    """
    if not spin_check(spec).is_spin or spec.dim_real < 5:
        return "inapplicable"
    return "obstructed" if alpha(spec).nonzero else "exists"


def _dyadic_window(k2: int, n2: int) -> Tuple[Optional[int], Optional[int]]:
    """``(k2 mod 4 or -k2 mod 4, quotient)`` for the two unbounded k2 ranges."""
    if k2 >= 0:
        return k2 % 4, k2 // 4
    if k2 <= -n2 - 1:
        return (-k2) % 4, (-k2 - 1 - n2) // 4
    return None, None


def psc_dyadic_n1_1(spec: TwistSpec) -> bool:
    """True iff the spin ``H^I_{1,n2}`` admits no PSC metric, from digit conditions only."""
    if spec.n1 != 1 or (spec.n1 + spec.n2) % 4 != 2:
        raise WrongShape(f"need n1 = 1 and n1 + n2 = 2 mod 4, got {spec}")
    k1, k2 = _spin_k(spec)
    s1 = spec.sigma1
    residue, q = _dyadic_window(k2, spec.n2)
    if residue is None or not digits_disjoint(q, spec.n2 // 4):
        return False
    if k2 >= 0:
        return (
            (residue == 0 and k1 % 2 == 0)
            or (residue == 1 and s1 % 2 == 1)
            or (residue == 2 and (k1 + s1) % 2 == 0)
        )
    return (
        (residue == 0 and k1 % 2 == 0)
        or (residue == 2 and (k1 + s1) % 2 == 0)
        or (residue == 3 and s1 % 2 == 1)
    )


def psc_dyadic_n1_2(spec: TwistSpec) -> bool:
    """True iff the spin ``H^I_{2,n2}`` admits no PSC metric, from digit conditions only."""
    if spec.n1 != 2 or (spec.n1 + spec.n2) % 4 != 2:
        raise WrongShape(f"need n1 = 2 and n1 + n2 = 2 mod 4, got {spec}")
    k1, k2 = _spin_k(spec)
    n2, s1, s2 = spec.n2, spec.sigma1, spec.sigma2
    b = binom_nk(2, k1)

    def odd(x: Fraction) -> bool:
        return _require_integer(Fraction(x), "parity condition", spec) % 2 == 1

    if k2 == -n2 - 1:
        return odd(Fraction((k1 + 1) * (k1 + 2), 2) + Fraction(s1 * (s1 - 2 * k1 - 3), 2))
    residue, q = _dyadic_window(k2, n2)
    if residue is None or not digits_disjoint(q, n2 // 4):
        return False
    if k2 >= 0:
        conditions = {
            0: lambda: k1 % 4 in (0, 1),
            1: lambda: odd(b + Fraction(s1 * s1 - 2 * s2, 2) + Fraction((2 * k1 + 3) * s1, 2)),
            2: lambda: odd(b + s1 * s1 - s2),
            3: lambda: odd(b + Fraction(s1 * (2 * k1 + 3 - s1), 2)),
        }
    else:
        conditions = {
            0: lambda: k1 % 4 in (0, 1),
            1: lambda: odd(b + Fraction(s1 * (s1 - 2 * k1 - 3), 2)),
            2: lambda: odd(b + s1 * s1 - s2),
            # the printed condition b + (2k1+3+3s1)s1/2 - s2 is off by s1^2
            3: lambda: odd(b + Fraction(s1 * s1 - 2 * s2 + (2 * k1 + 3) * s1, 2)),
        }
    return conditions[residue]()


def circle_action_obstruction(spec: TwistSpec) -> bool:
    """True when no nontrivial circle action can exist (spin with nonzero A-hat)."""
    return spin_check(spec).is_spin and a_hat(spec) != 0


@dataclass(frozen=True)
class InvariantReport:
    spec: TwistSpec
    dim_real: int
    spin: SpinData
    sigma1: int
    sigma2: int
    a_hat: Fraction
    alpha: Optional[KOClass]
    psc: str
    no_circle_action: bool
    assumptions: dict = field(default_factory=dict)


def report(spec: TwistSpec) -> InvariantReport:
    sd = spin_check(spec)
    ah = a_hat(spec)
    al = alpha(spec) if sd.is_spin else None
    if sd.is_spin and spec.dim_real >= 5:
        psc = "obstructed" if al.nonzero else "exists"
    else:
        psc = "inapplicable"
    rep = InvariantReport(
        spec=spec,
        dim_real=spec.dim_real,
        spin=sd,
        sigma1=spec.sigma1,
        sigma2=spec.sigma2,
        a_hat=ah,
        alpha=al,
        psc=psc,
        no_circle_action=sd.is_spin and ah != 0,
        assumptions={"simply_connected_assumed": True, "dim_ge_5": spec.dim_real >= 5},
    )
    assert rep.psc != "obstructed" or (sd.is_spin and al.nonzero)
    assert not rep.no_circle_action or (sd.is_spin and ah != 0)
    return rep
