import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bstiles import multiplying as ak
from bstiles.group import GroupParams, GroupWord, canonical_form, lambda_map, parse_word
from bstiles.multsys import S0, LinearPiece, MultSystem, rationals_in
from bstiles.wang import Patch, check_multiplies, multiplies_residual, verify_patch
from strategies import rationals, words

BS23 = GroupParams(2, 3)
THIRD = Fraction(1, 3)


def test_balanced_examples():
    assert ak.balanced(Fraction(1, 2), 0, 1) == 0
    assert ak.balanced(Fraction(1, 2), 0, 2) == 1
    for j in range(-5, 5):
        assert ak.balanced(3, Fraction(7, 5), j) == 3


@given(rationals(), rationals(-20, 20), st.integers(-30, 30))
def test_balanced_two_valued(x, z, j):
    assert ak.balanced(x, z, j) in (math.floor(x), math.floor(x) + 1)


def test_ak_tile_examples():
    t = ak.ak_tile(BS23, 2, GroupWord(), Fraction(1, 2))
    assert t.top == (0, 1)
    assert t.bottom == (1, 1, 1)
    assert t.left == t.right == 0
    zero = ak.ak_tile(BS23, Fraction(5, 7), parse_word("bab"), 0)
    assert zero.top == (0, 0) and zero.bottom == (0, 0, 0) and zero.left == zero.right == 0


@given(words(8), rationals(), st.sampled_from([Fraction(2), THIRD, Fraction(3, 2), Fraction(-4, 5)]),
       st.sampled_from([(2, 3), (1, 2), (3, 2), (2, 2)]))
def test_multiplying_equation(w, x, q, mn):
    p = GroupParams(*mn)
    assert multiplies_residual(ak.ak_tile(p, q, w, x), q, p.m, p.n) == 0


@given(words(6), rationals(), st.sampled_from([Fraction(2), THIRD, Fraction(3, 2)]))
def test_horizontal_and_vertical_identities(w, x, q):
    here = ak.ak_tile(BS23, q, w, x)
    assert ak.ak_tile(BS23, q, w * GroupWord.of(("a", 2)), x).left == here.right
    for j in (1, 2):
        for p in (1, 2, 3):
            up = w * GroupWord.of(("a", j - p), ("b", 1))
            assert ak.ak_tile(BS23, q, up, x / q).bottom[p - 1] == here.top[j - 1]


@given(words(8), rationals(), st.sampled_from([Fraction(2), THIRD]))
def test_sides_are_balanced_words(w, x, q):
    t = ak.ak_tile(BS23, q, w, x)
    lam = lambda_map(w, BS23)
    assert t.top == tuple(ak.balanced(x, 2 * lam, j) for j in (1, 2))
    lam_down = lambda_map(w * GroupWord.of(("b", -1)), BS23)
    assert t.bottom == tuple(ak.balanced(q * x, 2 * lam_down, j) for j in (1, 2, 3))


def test_left_label_bounds_examples():
    assert ak.left_label_bounds(BS23, 2) == (-6, 2, 6)
    assert ak.left_label_bounds(BS23, THIRD) == (-3, 6, 18)


@given(words(8), rationals(-3, 3), st.sampled_from([Fraction(2), THIRD, Fraction(3, 2), Fraction(-2, 3)]))
def test_left_labels_inside_bounds(w, x, q):
    k1, k2, den = ak.left_label_bounds(BS23, q)
    t = ak.ak_tile(BS23, q, w, x)
    for lbl in (t.left, t.right):
        num = lbl * den
        assert num.denominator == 1 and k1 <= num <= k2


def random_lambda_oracle(q, lo, hi, draws=20000, seed=1):
    """Tiles at random lambda in Z[1/6] and random x on a fine grid: no group walk involved."""
    rng = random.Random(seed)
    xs = list(rationals_in(lo, hi, 30))
    out = set()
    for _ in range(draws):
        lam = Fraction(rng.randint(-10**6, 10**6), 6**rng.randint(0, 6))
        out.add(ak.tile_from_lambda(BS23, q, lam, rng.choice(xs)))
    return out


@pytest.mark.parametrize("q, lo, hi, count", [
    (Fraction(2), Fraction(0), Fraction(1), 48),
    (Fraction(2), THIRD, Fraction(1), 35),
    (THIRD, Fraction(1), Fraction(2), 12),
])
def test_enumeration_counts(q, lo, hi, count):
    en = ak.enumerate_tileset(BS23, q, lo, hi)
    assert len(en.tileset) == count
    assert set(en.tileset) == random_lambda_oracle(q, lo, hi)
    assert check_multiplies(en.tileset, q)
    assert en.certificate["rounds"][-1][2] == count
    over = ak.enumerate_tileset(BS23, q, lo, hi, strategy="overapprox")
    assert set(en.tileset) <= set(over.tileset)
    assert check_multiplies(over.tileset, q)


def test_enumeration_certificate_shape():
    en = ak.enumerate_tileset(BS23, THIRD, 1, 2)
    rounds = en.certificate["rounds"]
    assert rounds[-1][2] == rounds[-2][2] == rounds[-3][2]
    assert (en.radius, en.denominator) == tuple(rounds[-1][:2])


def test_degenerate_interval():
    en = ak.enumerate_tileset(BS23, 1, 0, 0)
    assert len(en.tileset) == 1
    t = en.tileset.tiles[0]
    assert t.top == (0, 0) and t.bottom == (0, 0, 0) and t.left == t.right == 0


def test_enumeration_errors():
    with pytest.raises(ak.InconclusiveEnumeration):
        ak.enumerate_tileset(BS23, 2, 0, 1, max_radius=2)
    with pytest.raises(ValueError):
        ak.enumerate_tileset(BS23, 2, Fraction(1, 2), Fraction(3, 2))
    with pytest.raises(ValueError):
        ak.enumerate_tileset(BS23, 2, 0, 1, strategy="exact")


def test_build_ys_for_s0():
    ys = ak.build_Ys(S0, BS23)
    assert len(ys.tileset) == 48 + 12
    assert {t.left[1] for t in ys.tileset} == {1, 2}
    c1 = ys.constraints_for(1)
    assert ak.WindowConstraint(1, 3, 1, 1) in c1
    assert ak.WindowConstraint(1, 1, 0, 0) in c1
    # [1, 2] = 1 + 0/1 .. 1 + 1 - 0/1: both windows are vacuous
    assert all(c.count == 0 for c in ys.constraints_for(2))


def test_single_piece_system():
    ys = ak.build_Ys(MultSystem((LinearPiece.from_bounds(1, 0, 1),)), BS23)
    assert all(c.count == 0 for c in ys.constraints)
    assert check_multiplies(ys.tileset, 1)


def test_mixed_colours_rejected():
    ys = ak.build_Ys(S0, BS23)
    g = canonical_form(GroupWord(), BS23)
    right = canonical_form(parse_word("a^2"), BS23)
    t1 = ak.orbit_tile(S0, ak.orbit_for_s0(Fraction(1, 2), 2), BS23, g)
    # the colour-2 tile whose left number equals t1's right number
    mate = next(t for t in ys.tileset if t.left[1] == 2 and t.left[0] == t1.right[0])
    x = Patch.from_assignment(BS23, {g: t1, right: mate})
    v = verify_patch(x)
    assert len(v) == 1 and v[0].rule == "horizontal"


def test_orbit_for_s0_examples():
    br = ak.orbit_for_s0(Fraction(1, 2), 5)
    assert [br.values[k] for k in range(6)] == [Fraction(1, 2), 1, 2, Fraction(2, 3), Fraction(4, 3), Fraction(4, 9)]
    assert br.values[-1] == Fraction(3, 2)
    br.check(S0)
    br2 = ak.orbit_for_s0(Fraction(2, 3), 3)
    assert (br2.values[1], br2.values[2]) == (Fraction(4, 3), Fraction(4, 9))
    for x0 in (THIRD, Fraction(2), Fraction(1), Fraction(5, 7)):
        b = ak.orbit_for_s0(x0, 8)
        b.check(S0)
        assert all(THIRD <= v <= 2 for v in b.values.values())


def test_general_orbit_branch():
    br = ak.orbit_branch(S0, Fraction(1, 2), 5)
    br.check(S0)
    with pytest.raises(ValueError):
        ak.orbit_branch(S0, Fraction(5), 2)


def test_orbit_configuration_radius_six():
    br = ak.orbit_for_s0(Fraction(1, 2), 6)
    x = ak.orbit_configuration(S0, br, BS23, 6)
    assert len(x) == 1009
    assert verify_patch(x) == []
    ys = ak.build_Ys(S0, BS23)
    assert ak.window_failures(x, ys.constraints) == []
    assert all(t in ys.tileset for t in x.tileset)
    # line alphabets: colour 1 uses {0, 1}, colour 2 uses {1, 2}
    for t in x.tileset:
        allowed = {0, 1} if t.left[1] == 1 else {1, 2}
        assert set(t.top) <= allowed


@pytest.mark.parametrize("seed", range(4))
def test_random_orbits(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 500)
    x0 = Fraction(rng.randint(math.ceil(d / 3), 2 * d), d)
    x = ak.orbit_configuration(S0, ak.orbit_for_s0(x0, 4), BS23, 4)
    assert verify_patch(x) == []
    assert ak.window_failures(x, ak.build_Ys(S0, BS23).constraints) == []


def test_window_failure_detected():
    # a colour-1 line reading 0 0 0 breaks "every 3 letters contain a 1"
    br = ak.orbit_for_s0(Fraction(1, 2), 4)
    x = ak.orbit_configuration(S0, br, BS23, 4)
    strict = [ak.WindowConstraint(1, 2, 2, 1), ak.WindowConstraint(2, 2, 2, 2)]
    assert ak.window_failures(x, strict)


def test_radius_zero_and_short_branch():
    br = ak.orbit_for_s0(Fraction(1, 2), 0)
    x = ak.orbit_configuration(S0, br, BS23, 0)
    assert len(x) == 1 and verify_patch(x) == []
    with pytest.raises(ak.BranchTooShort):
        ak.orbit_configuration(S0, br, BS23, 2)


def test_weak_period():
    br = ak.orbit_for_s0(Fraction(1, 2), 7)
    assert ak.weak_period_check(S0, br, BS23, ak.WEAK_PERIOD, 5)
    assert not ak.weak_period_check(S0, br, BS23, GroupWord.of(("a", 1)), 5)
    assert ak.weak_period_check(S0, br, BS23, GroupWord(), 5)
    assert ak.WEAK_PERIOD == parse_word("baBabABA")
