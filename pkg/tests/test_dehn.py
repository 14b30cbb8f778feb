"""Word problem for cyclically presented groups via Dehn's algorithm."""

import random

import pytest

from gbbkit.dehn import (CyclicPresentation, Word, dehn_reduce, free_reduce,
                         invert_word, is_identity, small_cancellation_check)
from gbbkit.errors import DehnError, WindowError
from gbbkit.fixtures import (dehn_presentation_godel,
                             dehn_presentation_periodic)
from gbbkit.intsets import PeriodicSet


def conjugate(word, by):
    return by + word + invert_word(by)


# --- words -------------------------------------------------------------------


def test_free_reduce():
    assert free_reduce((1, -1)) == ()
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert free_reduce((1, 2, 3)) == (1, 2, 3)


def test_word_parse():
    assert Word.parse("a1 a2 -a3").letters == (1, 2, -3)
    assert Word.parse("a1 a1^-1 a2").letters == (2,)
    with pytest.raises(DehnError):
        Word.parse("b1")
    with pytest.raises(DehnError):
        Word.parse("a1^2")
    with pytest.raises(DehnError):
        Word((1, 0))


# --- presentation validation ---------------------------------------------------


def test_presentation_validation():
    with pytest.raises(DehnError):
        CyclicPresentation(2, PeriodicSet.multiples(2))
    with pytest.raises(DehnError):
        CyclicPresentation(13, "2Z")
    pres = dehn_presentation_periodic()
    with pytest.raises(DehnError):
        small_cancellation_check(pres, 6, 0)


def test_relator_shape():
    pres = dehn_presentation_periodic(l=3)
    assert pres.relator(2) == (1, 1, 2, 2, 3, 3)
    assert pres.relator(-1) == (-1, -2, -3)
    assert pres.relator(0) == ()


# --- small cancellation ---------------------------------------------------------


def test_small_cancellation_periodic_l13():
    pres = dehn_presentation_periodic(l=13)
    rep = small_cancellation_check(pres, 6, 15)
    assert rep.passes
    assert rep.max_ratio < 1 / 6
    # every relator's worst piece is reported
    assert set(rep.per_relator_ratio) == {
        n for n in range(-15, 16) if n and n % 2 == 0
    }


def test_small_cancellation_godel_l13():
    pres = dehn_presentation_godel(l=13)
    rep = small_cancellation_check(pres, 6, 15)
    assert rep.passes


def test_small_cancellation_fails_for_tiny_l():
    # with l=3 the pieces a_i^n between R_n and R_2n reach 1/3 of R_n
    pres = CyclicPresentation(3, PeriodicSet.all_integers())
    rep = small_cancellation_check(pres, 6, 4)
    assert not rep.passes


# --- Dehn reduction: relator powers ---------------------------------------------


def test_relator_identity_iff_exponent_in_set_periodic():
    pres = dehn_presentation_periodic(l=13)
    for n in range(-15, 16):
        if n == 0:
            continue
        word = pres.relator(n)
        assert is_identity(pres, word) == (n % 2 == 0), n


def test_relator_identity_iff_exponent_in_set_godel():
    pres = dehn_presentation_godel(l=13)
    for n in range(-15, 16):
        if n == 0:
            continue
        word = pres.relator(n)
        # members of the digit-encoded set below 16 are just {0, 1};
        # negative exponents are never members
        assert is_identity(pres, word) == (n == 1), n


def test_generators_are_nontrivial():
    pres = dehn_presentation_periodic(l=13)
    assert not is_identity(pres, (1,))
    assert not is_identity(pres, (1, 2, 3))


def test_random_relator_products_reduce_to_identity():
    pres = dehn_presentation_periodic(l=13)
    rng = random.Random(99)
    exponents = [n for n in range(-6, 7) if n and n % 2 == 0]
    for _ in range(500):
        word = ()
        for _ in range(rng.randrange(1, 5)):
            rel = pres.relator(rng.choice(exponents))
            conj = tuple(
                rng.choice([i, -i])
                for i in rng.sample(range(1, 14), rng.randrange(0, 3))
            )
            word = word + conjugate(rel, conj)
        assert is_identity(pres, word)


def test_reduction_trace_shrinks():
    pres = dehn_presentation_periodic(l=13)
    trace = []
    out = dehn_reduce(pres, pres.relator(2) + pres.relator(4), trace=trace)
    assert len(out) == 0
    lengths = [len(w) for w, _, _ in trace]
    assert lengths == sorted(lengths, reverse=True)


# --- window behavior -------------------------------------------------------------


def test_window_error_on_huge_exponent():
    pres = dehn_presentation_godel(l=13, position_bound=3)
    # deciding R_n for n past the certified digits must raise, not guess
    with pytest.raises(WindowError):
        is_identity(pres, pres.relator(10 ** 4))


def test_inside_window_large_member():
    pres = dehn_presentation_godel(l=5, position_bound=4)
    assert is_identity(pres, pres.relator(101))
    assert not is_identity(pres, pres.relator(11))
