import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tmh.checks import spin_spec, twist_vectors
from tmh.combinatorics import binom_nk
from tmh.invariants import (
    MalformedSpec,
    NotSpin,
    TwistSpec,
    WrongShape,
    a_hat,
    alpha,
    alpha_closed_n1_1,
    alpha_closed_n1_2,
    circle_action_obstruction,
    f_closed,
    psc_dyadic_n1_1,
    psc_dyadic_n1_2,
    psc_verdict,
    report,
    spin_check,
)
from tmh.series import genus_pairing

S = TwistSpec
MILNOR = S(1, 2, (0, 0), 1, 1)
J2 = S(2, 3, (2, 0, 0), 1, 4)


def test_spec_validation():
    with pytest.raises(MalformedSpec, match="length n2=3"):
        S(2, 3, (1, 0), 1, 1)
    with pytest.raises(MalformedSpec):
        S(0, 1, (0,), 1, 1)
    assert S(1, 2, [1, 2], 0, 0).twist == (1, 2)


def test_sigmas_and_dim():
    s = S(2, 3, (1, -2, 3), 0, 0)
    assert (s.sigma1, s.sigma2, s.dim_real) == (2, -5, 8)


@pytest.mark.parametrize("spec, is_spin, k", [
    (S(1, 1, (0,), 2, 2), True, (0, 0)),
    (S(1, 1, (0,), 1, 1), False, (None, None)),
    (J2, True, (0, 0)),
    (S(1, 2, (0, 0), 4, 7), True, (1, 2)),
])
def test_spin_check(spec, is_spin, k):
    sd = spin_check(spec)
    assert sd.is_spin is is_spin and (sd.k1, sd.k2) == k


def test_f_closed_examples():
    assert f_closed(S(1, 1, (0,), 2, 2)) == 1
    assert f_closed(J2) == genus_pairing(J2)


@pytest.mark.parametrize("spec, want", [(MILNOR, 0), (J2, 2), (S(1, 2, (0, 0), 4, 7), 24)])
def test_a_hat_examples(spec, want):
    assert a_hat(spec) == want


def test_a_hat_nonspin_can_be_fractional():
    s = S(1, 2, (0, 0), 1, 2)
    assert a_hat(s) == Fraction(3, 8)
    assert a_hat(s) == genus_pairing(s, 1) - genus_pairing(s, -1)


def test_a_hat_zero_in_dimension_not_divisible_by_four():
    assert a_hat(S(1, 1, (0,), 2, 2)) == 0


@pytest.mark.parametrize("n1", [1, 2, 3])
@pytest.mark.parametrize("n2", [1, 2, 3, 4])
def test_untwisted_closed_form_factorises(n1, n2):
    for k1, k2 in itertools.product(range(-5, 6), repeat=2):
        s = spin_spec(n1, n2, (0,) * n2, k1, k2)
        assert f_closed(s) == binom_nk(n1, k1) * binom_nk(n2, k2)


def test_alpha_examples():
    a = alpha(S(1, 1, (0,), 2, 2))
    assert (a.n_mod_8, a.group, a.value) == (2, "Z2", 1)
    a = alpha(J2)
    assert (a.n_mod_8, a.group, a.value) == (0, "Z", 2)
    with pytest.raises(NotSpin):
        alpha(MILNOR)


@pytest.mark.parametrize("n1, n2", [(1, 3), (2, 2), (3, 1), (2, 6)])
def test_alpha_trivial_group(n1, n2):
    for k1, k2 in itertools.product(range(-2, 3), repeat=2):
        a = alpha(spin_spec(n1, n2, (0,) * n2, k1, k2))
        assert a.group == "Trivial" and a.value is None and not a.nonzero


def test_alpha_in_dimension_8k_plus_4_halves_a_hat():
    # n1 + n2 = 4 mod 8 excluded; n1 + n2 = 7 gives dim 12
    s = spin_spec(2, 5, (0,) * 5, 1, 1)
    a = alpha(s)
    assert a.group == "Z" and a.n_mod_8 == 4 and 2 * a.value == a_hat(s)


def test_closed_alpha_examples():
    assert alpha_closed_n1_1(S(1, 5, (0,) * 5, 2, 6)) == 1
    assert alpha_closed_n1_1(spin_spec(1, 5, (0,) * 5, 1, 0)) == 0
    assert alpha_closed_n1_2(spin_spec(2, 4, (0,) * 4, 0, 0)) == 1
    with pytest.raises(WrongShape):
        alpha_closed_n1_1(J2)
    with pytest.raises(WrongShape):
        alpha_closed_n1_2(S(1, 5, (0,) * 5, 2, 6))
    with pytest.raises(NotSpin):
        alpha_closed_n1_1(S(1, 5, (0,) * 5, 1, 6))


def test_psc_examples():
    assert psc_verdict(S(1, 1, (0,), 2, 2)) == "inapplicable"
    assert psc_verdict(MILNOR) == "inapplicable"
    assert psc_verdict(S(1, 5, (0,) * 5, 2, 6)) == "obstructed"
    assert psc_verdict(J2) == "obstructed"


def test_psc_exists_for_degree_one_one():
    count = 0
    for n1, n2 in itertools.product(range(1, 4), range(1, 6)):
        for tw in twist_vectors(n2, 2, 2):
            s = S(n1, n2, tw, 1, 1)
            if spin_check(s).is_spin and s.dim_real >= 5:
                assert psc_verdict(s) == "exists"
                count += 1
    assert count > 100


def test_dyadic_examples():
    for k2 in range(-5, 0):
        for k1 in range(-3, 4):
            assert psc_dyadic_n1_1(spin_spec(1, 5, (1, 0, 0, 0, 0), k1, k2)) is False
    assert psc_dyadic_n1_1(spin_spec(1, 5, (0,) * 5, 2, 0)) is True
    assert psc_dyadic_n1_2(spin_spec(2, 4, (0,) * 4, 2, 0)) is False


@pytest.mark.parametrize("n1, n2, classifier", [
    (1, 5, psc_dyadic_n1_1), (1, 9, psc_dyadic_n1_1), (1, 13, psc_dyadic_n1_1),
    (2, 4, psc_dyadic_n1_2), (2, 8, psc_dyadic_n1_2), (2, 12, psc_dyadic_n1_2),
])
def test_dyadic_classifier_deep_negative_k2(n1, n2, classifier):
    # reaches k2 well below -n2-1, where every residue class mod 4 occurs
    tws = [(0,) * n2, (1,) + (0,) * (n2 - 1), (3, 0) + (0,) * (n2 - 2), (1, 1) + (0,) * (n2 - 2),
           (-1, 2) + (0,) * (n2 - 2), (3, -3) + (0,) * (n2 - 2)]
    for tw in tws:
        for k1 in range(-6, 7):
            for k2 in range(-n2 - 13, 9):
                s = spin_spec(n1, n2, tw, k1, k2)
                assert classifier(s) == (psc_verdict(s) == "obstructed"), s


def test_circle_action():
    assert circle_action_obstruction(J2) is True
    assert circle_action_obstruction(MILNOR) is False
    for n1, d1 in itertools.product(range(1, 4), range(-5, 6)):
        for tw in twist_vectors(2, 2, 2):
            assert circle_action_obstruction(S(n1, 2, tw, d1, 1)) is False


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_permutation_invariance(n1, n2, data):
    tw = data.draw(st.lists(st.integers(-3, 3), min_size=n2, max_size=n2))
    d1, d2 = data.draw(st.integers(-6, 6)), data.draw(st.integers(-6, 6))
    perm = data.draw(st.permutations(tw))
    assert f_closed(S(n1, n2, tw, d1, d2)) == f_closed(S(n1, n2, perm, d1, d2))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_closed_form_equals_pairing_random(n1, n2, data):
    tw = data.draw(st.lists(st.integers(-4, 4), min_size=n2, max_size=n2))
    s = S(n1, n2, tw, data.draw(st.integers(-9, 9)), data.draw(st.integers(-9, 9)))
    assert f_closed(s) == genus_pairing(s)


def test_report_fields():
    r = report(MILNOR)
    assert (r.spin.is_spin, r.a_hat, r.alpha, r.psc, r.no_circle_action) == (False, 0, None, "inapplicable", False)
    r = report(J2)
    assert (r.spin.k1, r.spin.k2, r.a_hat, r.alpha.value, r.psc, r.no_circle_action) == (0, 0, 2, 2, "obstructed", True)
    r = report(S(1, 1, (0,), 2, 2))
    assert r.psc == "inapplicable" and r.alpha.value == 1
    assert r.assumptions == {"simply_connected_assumed": True, "dim_ge_5": False}
