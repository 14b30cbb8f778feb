"""Integer-set layer: periodic sets, digit-encoded sets, approximations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbbkit.errors import SetError, WindowError
from gbbkit.intsets import (FiniteSet, GodelSet, PeriodicSet, gcd_of_set,
                            godel_window, nested_approx)


def brute_window(modulus, residues, lo, hi):
    return frozenset(m for m in range(lo, hi + 1) if m % modulus in residues)


# --- periodic sets ---------------------------------------------------------


def test_least_period_normalization():
    s = PeriodicSet(6, {0, 2, 4})
    assert s.modulus == 2
    assert s.residues == frozenset({0})
    assert PeriodicSet(4, {0, 1, 2, 3}).is_all
    assert PeriodicSet(5, set()).modulus == 1


def test_membership_and_window():
    s = PeriodicSet.multiples(3)
    assert 0 in s and -3 in s and 4 not in s
    assert s.window(-4, 7) == frozenset({-3, 0, 3, 6})


periodic_sets = st.builds(
    PeriodicSet,
    st.integers(min_value=1, max_value=12),
    st.frozensets(st.integers(min_value=-20, max_value=20), max_size=8),
)


@given(periodic_sets, periodic_sets)
@settings(max_examples=60)
def test_algebra_matches_pointwise(a, b):
    lo, hi = -30, 30
    assert (a & b).window(lo, hi) == a.window(lo, hi) & b.window(lo, hi)
    assert (a | b).window(lo, hi) == a.window(lo, hi) | b.window(lo, hi)
    comp = a.complement()
    assert comp.window(lo, hi) == frozenset(range(lo, hi + 1)) - a.window(lo, hi)


@given(periodic_sets, st.integers(min_value=-15, max_value=15))
@settings(max_examples=40)
def test_shift_translates(a, k):
    assert a.shift(k).window(-20, 20) == frozenset(
        m for m in range(-20, 21) if (m - k) in a
    )


def test_gcd_of_set():
    assert gcd_of_set(PeriodicSet.multiples(6)) == 6
    assert gcd_of_set(PeriodicSet(6, {0, 4})) == 2
    assert gcd_of_set(PeriodicSet.all_integers()) == 1


def test_bad_modulus():
    with pytest.raises(SetError):
        PeriodicSet(0, {0})


# --- digit-encoded sets ----------------------------------------------------


def test_godel_members():
    g = GodelSet(frozenset({0, 2}), 6)
    assert g.members_below(200) == [0, 1, 100, 101]
    assert 101 in g and 11 not in g and 2 not in g and -1 not in g
    assert 10100 not in g  # needs digit position 4
    assert 10100 in GodelSet(frozenset({0, 2, 4}), 6)


def test_godel_window_error():
    g = GodelSet(frozenset({0, 2}), 3)
    with pytest.raises(WindowError):
        10 ** 4 in g  # noqa: B015 -- membership query raises
    with pytest.raises(WindowError):
        g.members_below(10 ** 5)


def test_godel_position_validation():
    with pytest.raises(SetError):
        GodelSet(frozenset({-1}), 3)
    with pytest.raises(SetError):
        GodelSet(frozenset({5}), 3)


def test_f_certificates_agree_on_window():
    g = GodelSet(frozenset({0, 2, 3}), 6)
    for n in range(5):
        cert = g.f_certificate(n)
        hi = 2 * 10 ** n
        assert cert.window(0, hi) == frozenset(g.members_below(hi + 1))


def test_godel_window_helper():
    members, certs = godel_window({0, 2}, 200, f_levels=(1, 2))
    assert members == [0, 1, 100, 101]
    assert 1 in certs and 2 in certs
    with pytest.raises(WindowError):
        godel_window({0, 2}, 10 ** 9, certified_bound=3)


# --- approximation chains --------------------------------------------------


def test_nested_approx_shortest_prefix():
    target = FiniteSet(frozenset({0}))
    chain = [PeriodicSet.multiples(p) for p in (2, 3, 5, 7)]
    got = nested_approx(target, chain, 6)
    assert got == PeriodicSet.multiples(30)


def test_nested_approx_failure():
    target = FiniteSet(frozenset({1}))
    with pytest.raises(SetError):
        nested_approx(target, [PeriodicSet.multiples(2)], 4)
