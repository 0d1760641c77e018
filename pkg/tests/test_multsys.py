import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bstiles.multsys import (ROTATION_ANGLE, S0, IterationCapExceeded, LinearPiece, MultSystem,
                             QuotientPoint, circle_distance, f_quotient, f_quotient_inverse, image,
                             is_immortal_up_to, iterate, iterate_bruteforce, periodic_point_search,
                             phi_circle, preimage, random_quotient_point, rotation_residual)
from strategies import rationals

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def test_piece_from_bounds():
    pc = LinearPiece.from_bounds(2, THIRD, 1)
    assert (pc.a, pc.d1, pc.e1, pc.d2, pc.e2) == (0, 1, 3, 0, 1)
    assert (pc.lo, pc.hi) == (THIRD, 1)
    with pytest.raises(ValueError):
        LinearPiece.from_bounds(2, HALF, Fraction(3, 2))
    with pytest.raises(ValueError):
        LinearPiece(0, 0)
    with pytest.raises(ValueError):
        LinearPiece(2, 0, 2, 3, 2, 3)


def test_image_examples():
    assert image(S0, 1) == {2, THIRD}
    assert image(S0, HALF) == {1}
    assert image(S0, 5) == set()
    assert preimage(S0, HALF) == {Fraction(3, 2)}


def test_iterate_examples():
    assert iterate(S0, HALF, 0) == {HALF}
    # recorded from the branch-sequence oracle
    assert iterate_bruteforce(S0, HALF, 2) == {2, THIRD}
    assert iterate(S0, HALF, 2) == {2, THIRD}
    assert iterate_bruteforce(S0, HALF, -1) == {Fraction(3, 2)}
    assert iterate(S0, HALF, -1) == {Fraction(3, 2)}


@given(rationals(0, 3, 40), st.integers(-6, 6))
def test_iterate_matches_bruteforce(x, k):
    assert iterate(S0, x, k) == iterate_bruteforce(S0, x, k)


@given(rationals(0, 3, 40), st.integers(1, 5))
def test_iterate_back_and_forth(x, k):
    fwd = iterate(S0, x, k)
    if fwd:
        back = set().union(*(iterate(S0, y, -k) for y in fwd))
        assert x in back


def test_iteration_caps():
    doubling = MultSystem((LinearPiece(2, 0), LinearPiece(Fraction(1, 2), 0), LinearPiece(1, 0)))
    with pytest.raises(IterationCapExceeded):
        iterate(doubling, HALF, 10, max_set=3)
    with pytest.raises(IterationCapExceeded):
        iterate(S0, HALF, 300)


def test_immortality():
    rng = random.Random(3)
    for _ in range(20):
        d = rng.randint(1, 100)
        x = Fraction(rng.randint(math.ceil(d / 3), 2 * d), d)
        assert is_immortal_up_to(S0, x, 50)
    assert not is_immortal_up_to(MultSystem((LinearPiece(2, 1),)), Fraction(3, 2), 2)
    assert not is_immortal_up_to(S0, 5, 0)


def test_periodic_point_search():
    assert periodic_point_search(S0, 200, 12) == []
    ident = MultSystem((LinearPiece(1, 0),))
    hits = periodic_point_search(ident, 3, 1)
    assert [x for x, _ in hits] == [0, 1, HALF, THIRD, Fraction(2, 3)]
    assert all(k == 1 for _, k in hits)
    pair = MultSystem((LinearPiece(2, 0), LinearPiece(HALF, 0)))
    assert (HALF, 2) in periodic_point_search(pair, 2, 2)


def test_quotient_map():
    assert f_quotient(QuotientPoint(HALF)) == QuotientPoint(1)
    top = f_quotient(QuotientPoint(1))
    assert top.value == 2 and top == QuotientPoint(THIRD)
    assert f_quotient(top) == QuotientPoint(Fraction(2, 3))
    assert f_quotient_inverse(QuotientPoint(Fraction(2, 3))).value == THIRD
    with pytest.raises(ValueError):
        QuotientPoint(3)


def test_quotient_bijection():
    rng = random.Random(0)
    for _ in range(1000):
        x = random_quotient_point(rng, 1000)
        assert f_quotient_inverse(f_quotient(x)) == x
        assert f_quotient(f_quotient_inverse(x)) == x


def test_rotation():
    assert ROTATION_ANGLE == pytest.approx(0.3868528072, abs=1e-10)
    assert phi_circle(QuotientPoint(2)) == 0
    assert phi_circle(QuotientPoint(THIRD)) == 0
    assert circle_distance(0.95, 0.05) == pytest.approx(0.1)
    assert rotation_residual(10**4) < 1e-9
