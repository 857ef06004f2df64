"""Grids of hypersurfaces, the closed-form vs. pairing check, and the identity runs."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import combinatorics as cb
from .invariants import TwistSpec, f_closed, spin_check
from .series import UniSeries, exp_series, genus_pairing


def twist_vectors(n2: int, max_nonzero: int, bound: int) -> List[Tuple[int, ...]]:
    """All length-``n2`` vectors with at most ``max_nonzero`` entries in ``[-bound, bound] \\ {0}``."""
    out = set()
    values = [v for v in range(-bound, bound + 1) if v]
    for r in range(min(max_nonzero, n2) + 1):
        for pos in itertools.combinations(range(n2), r):
            for vals in itertools.product(values, repeat=r):
                t = [0] * n2
                for p, v in zip(pos, vals):
                    t[p] = v
                out.add(tuple(t))
    return sorted(out)


def spin_spec(n1: int, n2: int, twist: Sequence[int], k1: int, k2: int) -> TwistSpec:
    """The spin spec with the given ``(k1, k2)``."""
    return TwistSpec(n1, n2, tuple(twist), 2 * k1 + n1 + 1 - sum(twist), 2 * k2 + n2 + 1)


def spin_grid(
    n1s: Iterable[int], n2s: Iterable[int], max_nonzero: int, bound: int, max_k: int
) -> Iterator[TwistSpec]:
    ks = range(-max_k, max_k + 1)
    for n1 in n1s:
        for n2 in n2s:
            for tw in twist_vectors(n2, max_nonzero, bound):
                for k1 in ks:
                    for k2 in ks:
                        yield spin_spec(n1, n2, tw, k1, k2)


def nonspin_sample(
    max_n1: int, max_n2: int, max_nonzero: int, bound: int, count: int, d_bound: int = 9, seed: int = 0
) -> List[TwistSpec]:
    """``count`` distinct non-spin specs drawn with a seeded RNG."""
    rng = random.Random(seed)
    twists = {n2: twist_vectors(n2, max_nonzero, bound) for n2 in range(1, max_n2 + 1)}
    seen = set()
    out = []
    while len(out) < count:
        n1 = rng.randint(1, max_n1)
        n2 = rng.randint(1, max_n2)
        tw = rng.choice(twists[n2])
        spec = TwistSpec(n1, n2, tw, rng.randint(-d_bound, d_bound), rng.randint(-d_bound, d_bound))
        if spin_check(spec).is_spin or spec in seen:
            continue
        seen.add(spec)
        out.append(spec)
    return out


def oracle_grid(
    max_n1: int = 3, max_n2: int = 4, max_twist: int = 2, max_k: int = 3, nonspin: int = 200, seed: int = 0
) -> List[TwistSpec]:
    specs = list(spin_grid(range(1, max_n1 + 1), range(1, max_n2 + 1), 2, max_twist, max_k))
    if nonspin:
        specs += nonspin_sample(max_n1, max_n2, 2, max_twist, nonspin, seed=seed)
    return specs


@dataclass
class OracleResult:
    checked: int
    failures: int
    first_counterexample: Optional[Tuple[TwistSpec, Fraction, Fraction]] = None


def check_oracle(
    specs: Iterable[TwistSpec],
    closed: Optional[Callable[[TwistSpec], Fraction]] = None,
    oracle: Optional[Callable[[TwistSpec], Fraction]] = None,
) -> OracleResult:
    """Compare the closed form against the series pairing on every spec."""
    closed = closed or f_closed
    oracle = oracle or genus_pairing
    res = OracleResult(0, 0)
    for spec in specs:
        a, b = closed(spec), oracle(spec)
        res.checked += 1
        if a != b:
            res.failures += 1
            if res.first_counterexample is None:
                res.first_counterexample = (spec, a, b)
    return res


def _check_one(spec: TwistSpec) -> Optional[Tuple[TwistSpec, Fraction, Fraction]]:
    a, b = f_closed(spec), genus_pairing(spec)
    return None if a == b else (spec, a, b)


def check_oracle_parallel(specs: Sequence[TwistSpec], jobs: int) -> OracleResult:
    if jobs <= 1:
        return check_oracle(specs)
    from concurrent.futures import ProcessPoolExecutor

    res = OracleResult(0, 0)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for bad in ex.map(_check_one, specs, chunksize=256):
            res.checked += 1
            if bad is not None:
                res.failures += 1
                if res.first_counterexample is None:
                    res.first_counterexample = bad
    return res


# identity runs ---------------------------------------------------------------


def _expm1_power(l: int, D: int) -> UniSeries:
    e = exp_series(1, D)
    base = UniSeries((Fraction(0),) + e.coeffs[1:])
    out = UniSeries((Fraction(1),) + (Fraction(0),) * D)
    for _ in range(l):
        out = out * base
    return out


def bernoulli_by_inversion(D: int) -> List[Fraction]:
    """``B_n(0)`` for ``n <= D`` from the inverse of ``(e^x - 1)/x``."""
    quotient = UniSeries(tuple(Fraction(1, math.factorial(m + 1)) for m in range(D + 1)))
    inv = quotient.inverse()
    return [inv[n] * math.factorial(n) for n in range(D + 1)]


def counting_identities(depth: int = 14) -> List[Tuple[str, bool]]:
    rng = range(depth + 1)
    results = []
    results.append((
        "A(n,l) recurrence == explicit sum == l!/n! S(n,l)",
        all(
            cb.a_number(n, l) == cb.a_number_explicit(n, l)
            == Fraction(math.factorial(l) * cb.stirling2(n, l), math.factorial(n))
            for n in rng for l in rng
        ),
    ))
    results.append((
        "sum_n A(n,l) x^n == (e^x - 1)^l to degree depth",
        all(
            _expm1_power(l, depth)[n] == cb.a_number(n, l)
            for l in rng for n in rng
        ),
    ))
    results.append((
        "Bell(n) == sum_l n!/l! A(n,l)",
        all(
            cb.bell(n) == sum(Fraction(math.factorial(n), math.factorial(l)) * cb.a_number(n, l) for l in rng)
            for n in rng
        ),
    ))
    inv = bernoulli_by_inversion(depth)
    results.append((
        "B_n(0) (signed A-sum) == series inversion of (e^x - 1)/x",
        all(cb.bernoulli0(n) == inv[n] for n in rng),
    ))
    results.append((
        "divided difference of x^n at 0..l == n!/l! A(n,l)",
        all(
            cb.divided_difference_power(n, l)
            == Fraction(math.factorial(n), math.factorial(l)) * cb.a_number(n, l)
            for n in rng for l in range(depth + 2)
        ),
    ))
    return results


def parity_identities(bound: int = 200, lucas_bound: int = 512) -> List[Tuple[str, bool]]:
    r = range(bound + 1)
    rl = range(lucas_bound + 1)
    parity = lambda n, k: cb.binom_nk(n, k) % 2
    results = []
    results.append((
        "Lucas parity == big-integer parity",
        all(cb.binom_mod2_lucas(n, m) == parity(n, m) for n in rl for m in rl),
    ))
    results.append((
        "quarter reduction == Lucas",
        all(cb.binom_mod2_reduced(m, n) == cb.binom_mod2_lucas(n, m) for n in r for m in r),
    ))
    results.append((
        "C(4m+n, 4m) == C(m+[n/4], m) mod 2",
        all(cb.prop18_check(m, n) == math.comb(4 * m + n, 4 * m) % 2 for m in r for n in r),
    ))
    results.append((
        "C(4m+1+n, 4m+1) reduction mod 2",
        all(cb.prop11_check(m, n) == math.comb(4 * m + 1 + n, 4 * m + 1) % 2 for m in r for n in r),
    ))
    nmax = min(bound, 128)
    results.append((
        "dyadic odd-iff == Lucas",
        all(
            cb.binom_odd_iff(n, k) == (cb.binom_mod2_lucas(n, k) == 1)
            for n in range(nmax + 1) for k in range(-300, 301)
        ),
    ))
    return results
