"""Acceptance gate: one test per release criterion, in order.  Each test
prints an ``ACCEPTANCE n PASS/FAIL`` line so the gate can be read off the
captured output directly (run pytest with -s or check the captured stdout
of failures)."""

import itertools
import random
import time
from contextlib import contextmanager

from gbbkit.cubical import (build_quotient, cylinder_classes,
                            hyperplane_counts, hyperplanes, specialness,
                            vertex_link)
from gbbkit.dehn import (CyclicPresentation, invert_word, is_identity,
                         small_cancellation_check)
from gbbkit.fixtures import (annulus_complex, dehn_presentation_godel,
                             dehn_presentation_periodic, rose_wreath_recipe,
                             single_edge_trivial, square_complex,
                             square_index16_quotient, square_presentation,
                             square_quotient_bits, triple_cover_presentation,
                             triple_cover_quotient)
from gbbkit.groups import (Permutation, WreathElement, build_pqrs,
                           ore_commutator, power_product, r_set,
                           subgroup_closure)
from gbbkit.intsets import GodelSet, PeriodicSet
from gbbkit.presentation import loops_upto
from gbbkit.quotients import (cocycle_recipe, hw_product_quotient,
                              kernel_torsion_free, loop_r_set,
                              stabilizer_image)
from gbbkit.simplicial import (barycentric, build_complex, identity_record,
                               is_suitable)


@contextmanager
def criterion(n, summary):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {n} FAIL: {summary}")
        raise
    print(f"ACCEPTANCE {n} PASS: {summary}")


# --------------------------------------------------------------------------


def test_acceptance_1_detector_identity():
    with criterion(1, "residue detector identity on 50 seeded draws"):
        t0 = time.monotonic()
        rng = random.Random(7)
        draws = 0
        while draws < 50:
            deg = rng.randrange(3, 6)
            n = rng.randrange(2, 7)
            k = rng.randrange(1, n)
            sigma = Permutation(tuple(rng.sample(range(deg), deg)))
            if sigma.parity() != 0:
                continue
            draws += 1
            alpha, beta = ore_commutator(sigma)
            a, b, c, d = build_pqrs(alpha, beta, k, n)
            placed = WreathElement.at_position(sigma, k - 1, n)
            for j in range(n):
                prod = power_product([a, b, c, d], j)
                if j == k % n:
                    assert prod == placed
                else:
                    assert prod.is_identity()
        assert time.monotonic() - t0 < 1.0


def test_acceptance_2_index2_enumeration():
    with criterion(2, "15 nontrivial index-2 quotients, 8 torsion-free"):
        t0 = time.monotonic()
        nontrivial = []
        torsion_free = []
        for bits in itertools.product((0, 1), repeat=4):
            if not any(bits):
                continue
            nontrivial.append(bits)
            q = square_quotient_bits(bits)
            tf, _ = kernel_torsion_free(q)
            assert tf == (sum(bits) % 2 == 1)
            if tf:
                torsion_free.append(bits)
        assert len(nontrivial) == 15
        assert len(torsion_free) == 8
        assert time.monotonic() - t0 < 1.0


def test_acceptance_3_index2_specialness():
    with criterion(3, "index-2 specialness patterns, stable over wraps"):
        t0 = time.monotonic()
        pres = square_presentation()

        # case one: single nontrivial value on the a-edge
        pats = set()
        for N in (2, 4, 8):
            Y = build_quotient(pres, square_quotient_bits((1, 0, 0, 0)), N,
                               validate_links=(N == 2))
            rep = specialness(Y)
            pats.add(rep.pattern())
            assert not rep.special
        assert len(pats) == 1
        counts, selfosc, interosc = next(iter(pats))
        assert dict(counts) == {"w": 1, "x": 1, "y": 2, "z": 2}
        assert selfosc == ("w", "x")
        assert interosc == (("w", "x"),)

        # case two: nontrivial on a, b, c (trivial on the d-edge)
        pats = set()
        for N in (2, 4, 8):
            Y = build_quotient(pres, square_quotient_bits((1, 1, 1, 0)), N,
                               validate_links=(N == 2))
            rep = specialness(Y)
            pats.add(rep.pattern())
            assert not rep.special
        assert len(pats) == 1
        counts, selfosc, interosc = next(iter(pats))
        assert dict(counts) == {"w": 1, "x": 2, "y": 2, "z": 1}
        assert selfosc == ("w", "z")
        assert interosc == (("w", "x"), ("w", "z"), ("x", "y"), ("y", "z"))

        # all 8 torsion-free cases: not special
        for bits in itertools.product((0, 1), repeat=4):
            if sum(bits) % 2 == 0:
                continue
            Y = build_quotient(pres, square_quotient_bits(bits), 2)
            assert not specialness(Y).special, bits
        assert time.monotonic() - t0 < 5.0


def test_acceptance_4_index16_special():
    with criterion(4, "index-16 quotient: cell counts, special, cylinders"):
        t0 = time.monotonic()
        pres = square_presentation()
        q = square_index16_quotient()
        Y = build_quotient(pres, q, 2)
        vph = Y.counts()["vertices_per_height"]
        assert vph == {0: 16, 1: 8}
        planes = hyperplanes(Y)
        assert hyperplane_counts(planes, directed=True) == {
            lbl: 16 for lbl in "wxyz"
        }
        assert specialness(Y).special
        # x-edge cylinder classes biject with cosets of <theta(a), theta(b)>
        H = subgroup_closure(
            [q.theta[("w", "x")], q.theta[("x", "y")]]
        ).elements
        classes = cylinder_classes(Y, "x")
        assert len(classes) == Y.Q.order // len(H)
        for cls in classes:
            by_height = {}
            for e in cls:
                by_height.setdefault(e.j, set()).add(e.q)
            for qs in by_height.values():
                q0 = next(iter(qs))
                assert qs == {q0 * h for h in H}
        assert time.monotonic() - t0 < 10.0


def test_acceptance_5_link_oracle():
    with criterion(5, "every vertex link matches the doubled base or cover"):
        t0 = time.monotonic()
        builds = [
            (square_presentation(), square_quotient_bits((1, 0, 0, 0)), 2),
            (square_presentation(), square_quotient_bits((1, 1, 1, 0)), 2),
            (square_presentation(), square_index16_quotient(), 2),
            (triple_cover_presentation(), triple_cover_quotient(), 3),
        ]
        builds.append(single_edge_trivial() + (1,))
        for pres, q, N in builds:
            # construction validates all links by graph isomorphism and
            # raises on any mismatch
            Y = build_quotient(pres, q, N, validate_links=True)
            for v in Y.vertices:
                g, tag = vertex_link(Y, v)
                assert len(g) <= 32
                expected = "S(L)" if v[0] in pres.S else "S(M)"
                assert tag == expected, (v, tag)
        assert time.monotonic() - t0 < 10.0


def test_acceptance_6_rose_wreath_labelling():
    with criterion(6, "wreath labelling on the subdivided 2-petal rose"):
        t0 = time.monotonic()
        result = rose_wreath_recipe(r=12, n=2, s0=(0,),
                                    loop_length_bound=36)
        pres, q = result.presentation, result.quotient
        assert q.certificate.passed
        tf, _ = kernel_torsion_free(q)
        assert tf
        from gbbkit.covers import lifts_to_loop
        S = pres.S
        for loop in loops_upto(pres.L, 36, reduced=True):
            rs = r_set([q.theta[e] for e in loop])
            if lifts_to_loop(pres.cover, loop):
                assert rs.is_all, loop
            else:
                assert rs == S, loop
        assert time.monotonic() - t0 < 30.0


def test_acceptance_7_r_set_laws():
    with criterion(7, "exponent-set laws for products and loops"):
        rng = random.Random(11)
        from math import lcm
        for _ in range(100):
            deg = rng.randrange(2, 5)
            elems = [
                Permutation(tuple(rng.sample(range(deg), deg)))
                for _ in range(rng.randrange(1, 4))
            ]
            rs = r_set(elems)
            assert 0 in rs
            exponent = lcm(*(g.order() for g in elems))
            assert exponent % rs.modulus == 0
        # loop exponent sets equal S on non-lifting loops for every
        # torsion-free-kernel fixture
        loop = (("w", "x"), ("x", "y"), ("y", "z"), ("z", "w"))
        for bits in itertools.product((0, 1), repeat=4):
            if sum(bits) % 2 == 0:
                continue
            q = square_quotient_bits(bits)
            assert loop_r_set(q, loop) == q.presentation.S
        q3 = triple_cover_quotient()
        loop3 = (("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v0"))
        assert loop_r_set(q3, loop3) == q3.presentation.S


def test_acceptance_8_dehn_solver():
    with criterion(8, "Dehn solver on 13 generators, two exponent sets"):
        t0 = time.monotonic()
        for pres, member in (
            (dehn_presentation_periodic(l=13), lambda n: n % 2 == 0),
            (dehn_presentation_godel(l=13), lambda n: n in (1,)),
        ):
            for n in range(-15, 16):
                if n == 0:
                    continue
                assert is_identity(pres, pres.relator(n)) == member(n), n
            rep = small_cancellation_check(pres, 6, 15)
            assert rep.passes and rep.max_ratio < 1 / 6
        pres = dehn_presentation_periodic(l=13)
        rng = random.Random(5)
        exponents = [n for n in range(-6, 7) if n and n % 2 == 0]
        for _ in range(500):
            word = ()
            for _ in range(rng.randrange(1, 5)):
                rel = pres.relator(rng.choice(exponents))
                conj = tuple(
                    rng.choice([i, -i])
                    for i in rng.sample(range(1, 14), rng.randrange(0, 3))
                )
                word = word + conj + rel + invert_word(conj)
            assert is_identity(pres, word)
        assert time.monotonic() - t0 < 10.0


def test_acceptance_9_suitability():
    with criterion(9, "second barycentric subdivision is suitable"):
        two_simplex = build_complex(["p", "q", "r"], [{"p", "q", "r"}])
        for cx in (square_complex(), two_simplex, annulus_complex()):
            ok, witness = is_suitable(barycentric(cx, iterations=2))
            assert ok, witness
        ok, witness = is_suitable(identity_record(square_complex()))
        assert not ok and witness is not None


def test_acceptance_10_godel_sets():
    with criterion(10, "digit-encoded set windows and certificates"):
        g = GodelSet(frozenset({0, 2}), 6)
        assert g.members_below(200) == [0, 1, 100, 101]
        h = GodelSet(frozenset({0, 2, 3}), 6)
        for n in range(5):
            cert = h.f_certificate(n)
            hi = 2 * 10 ** n
            assert cert.window(0, hi) == frozenset(h.members_below(hi + 1))


def test_acceptance_11_cocycle_recipes():
    with criterion(11, "classifying-cocycle recipes and products"):
        for q in (cocycle_recipe(square_presentation()),
                  triple_cover_quotient()):
            assert q.mode == "abelian-exact"
            assert q.certificate.passed
            assert kernel_torsion_free(q)[0]
            qq = hw_product_quotient(q)
            assert qq.mode == "abelian-exact"
            assert qq.certificate.passed
            assert kernel_torsion_free(qq)[0]
