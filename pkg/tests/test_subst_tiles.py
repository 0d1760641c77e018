import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bstiles.group import GroupParams, GroupWord, canonical_form, multiply, parse_word, qnf_word
from bstiles.substitution import apply_pointed, fixpoint2_windows, fixpoint_window, sigma
from bstiles.subst_tiles import (F, F_iter, R, SigmaTile, a_period_falsification, b_periodicity_check,
                                 explicit_patch, explicit_patch_n2, explicit_tile, level_top_word,
                                 periodicity_witness, tau_sigma, tile_builder)
from bstiles.wang import Patch, level_words, verify_patch

B = GroupWord.of(("b", 1))
A = GroupWord.of(("a", 1))


def test_tau_sigma():
    for n in range(2, 7):
        ts = tau_sigma(n)
        assert len(ts) == 2 * n
        for t in ts:
            assert t.left == t.right
            assert t.bottom == sigma(n, t.left).images[t.top[0]]
    t = SigmaTile(0, 1).wang(3)
    assert (t.top, t.left, t.bottom) == ((0,), 1, (0, 1, 0))
    assert all(v == 0 for r in range(4) for v in SigmaTile(1, r).wang(4).bottom)


@given(st.integers(-10**4, 10**4), st.integers(2, 6))
def test_floor_remainder_identities(k, n):
    assert n * F(k, n) + R(k, n) == k + 1
    assert 0 <= R(k, n) < n
    assert F(k * n, n) == k
    assert F(k + n, n) == F(k, n) + 1
    for t in range(1, 7):
        assert F_iter(k + n**t, n, t) == F_iter(k, n, t) + 1


def test_explicit_tile_examples():
    w = fixpoint_window(3, 50)
    for l in range(-20, 20):
        assert explicit_tile(3, GroupWord.of(("a", l))) == SigmaTile(w[l], 1)
    assert (F(0, 3), R(0, 3)) == (0, 1)
    assert explicit_tile(3, B) == SigmaTile(w[0], 1)
    with pytest.raises(ValueError):
        explicit_tile(2, B)


def test_well_definedness():
    rng = random.Random(7)
    builders = {n: tile_builder(n) for n in (2, 3, 4)}
    for _ in range(2000):
        n = rng.choice((2, 3, 4))
        k, l, m, t = rng.randint(0, 4), rng.randint(-300, 300), rng.randint(0, 4), rng.randint(1, 3)
        assert builders[n](qnf_word(k, l, m)) == builders[n](qnf_word(k + t, l * n**t, m + t))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_explicit_patch_valid(n):
    for r in range(0, 6):
        assert verify_patch(explicit_patch(n, r)) == []
    assert len(explicit_patch(n, 0)) == 1


def test_explicit_patch_n2():
    x = explicit_patch_n2(6)
    assert verify_patch(x) == []
    u, v = fixpoint2_windows(8)
    e = canonical_form(GroupWord(), GroupParams(1, 2))
    assert x.tile(e) == SigmaTile(u[0], 1).wang(2)
    # b^-1 a^l b has k + m = 2, so it reads u
    build = tile_builder(2)
    for l in range(-6, 6):
        assert build(qnf_word(1, l, 1)).c == u[F(l, 2)]
    with pytest.raises(ValueError):
        explicit_patch(2, 3)


def test_corrupted_patch_is_caught():
    x = explicit_patch(3, 3)
    g = canonical_form(parse_word("b"), GroupParams(1, 3))
    t = x.tileset.tiles[x.cells[g]]
    other = next(i for i, s in enumerate(x.tileset.tiles) if s.top != t.top)
    cells = dict(x.cells)
    cells[g] = other
    assert any(v.mentions(g) for v in verify_patch(Patch(x.tileset, cells)))


def test_periodicity_checks():
    assert b_periodicity_check(tile_builder(3), 3, B, 5)
    assert b_periodicity_check(tile_builder(4), 4, B, 4)
    assert not b_periodicity_check(tile_builder(3), 3, A, 5)
    assert b_periodicity_check(tile_builder(2), 2, B**2, 5)
    g = periodicity_witness(tile_builder(2), 2, B, 5)
    assert g is not None
    p = GroupParams(1, 2)
    assert tile_builder(2)(multiply(B, g, p)) != tile_builder(2)(g)


def test_levels_read_the_fixpoint():
    n = 3
    build = tile_builder(n)
    w = fixpoint_window(n, 81)
    for h in (-2, -1, 0, 1, 2):
        assert level_top_word(build, n, h, -81, 81) == list(w.letters)
    # the word one level up is the substitution image of the word read below
    image = apply_pointed(sigma(n, 1), w.restrict(-27, 27))
    assert image.restrict(-81, 81) == w


def test_patch_level_words_are_fixpoint_windows():
    x = explicit_patch(3, 5)
    w = fixpoint_window(3, 3**6)
    for lw in level_words(x):
        if len(lw.labels) >= 3:
            text = "".join(map(str, lw.labels))
            assert text in "".join(map(str, w.letters))


def test_a_period_falsification():
    rep = a_period_falsification(3, 50, level_depth=1, window=3**8)
    assert rep.all_found
    fake = a_period_falsification(3, 5, words=[[0] * 200])
    assert fake.inconclusive() == [1, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        a_period_falsification(3, 0)
    assert a_period_falsification(2, 20, window=2**9).all_found
