import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bstiles.group import (E, BallTooLarge, CanonicalForm, GroupParams, GroupWord, WordParseError,
                           alpha, ball, ball_layers, canonical_form, equals, format_word, height,
                           inverse, iter_level, lambda_map, level_coordinates, multiply,
                           parse_word, phi_embed, qnf_word, quasi_normal_form_1n)
from strategies import words

BS23 = GroupParams(2, 3)
BS12 = GroupParams(1, 2)
P = parse_word("baBabABA")


def affine(w, n):
    """BS(1, n) acting on Q by a: t -> t + 1, b: t -> n t (a faithful representation)."""
    scale, shift = Fraction(1), Fraction(0)
    for g, e in w.letters:
        # right multiplication composes on the inside
        if g == "a":
            shift += scale * e
        else:
            scale *= Fraction(n) ** e
    return scale, shift


def test_parse_and_format():
    assert parse_word("a^3bA^2B") == GroupWord.of(("a", 3), ("b", 1), ("a", -2), ("b", -1))
    assert parse_word("aA") == parse_word("e") == parse_word("") == GroupWord()
    assert format_word(parse_word("aab")) == "a^2b"
    assert format_word(GroupWord()) == "e"
    with pytest.raises(WordParseError) as info:
        parse_word("abx")
    assert info.value.position == 2


@given(words(12))
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w)) == w


def test_relator_is_trivial():
    for m, n in [(2, 3), (1, 2), (3, 3), (-2, 3), (2, -3)]:
        p = GroupParams(m, n)
        rel = GroupWord.of(("b", 1), ("a", m), ("b", -1), ("a", -n))
        assert canonical_form(rel, p) == E


def test_zero_parameter_rejected():
    with pytest.raises(ValueError):
        GroupParams(0, 3)


def test_known_forms():
    assert canonical_form(parse_word("baaB"), BS23) == CanonicalForm(3)
    assert str(canonical_form(P, BS23)) == "A^6baBabaBa^2"
    assert canonical_form(P, BS12) == E
    assert canonical_form(parse_word("ba^5"), BS23) == CanonicalForm(6, ((1, 1),))


def test_weak_period_invariants():
    assert alpha(P, BS23) == 0
    assert height(P) == 0
    assert alpha(parse_word("ba"), BS23) == Fraction(3, 2)
    assert phi_embed(parse_word("ba"), BS23) == (Fraction(3, 2), 1)


def test_ball_sizes_match_word_enumeration():
    # frozen from BFS; rechecked here against canonicalizing every word
    assert [len(layer) for layer in ball_layers(BS23, 4)] == [1, 4, 12, 36, 94]
    sizes = [len(ball(BS23, r)) for r in range(7)]
    assert sizes == [1, 5, 17, 53, 147, 389, 1009]
    gens = [("a", 1), ("a", -1), ("b", 1), ("b", -1)]
    seen = set()
    for k in range(5):
        for ls in itertools.product(gens, repeat=k):
            seen.add(canonical_form(GroupWord(ls), BS23))
    assert len(seen) == 147


def test_bs12_ball_against_affine_representation():
    for r in range(6):
        b = ball(BS12, r)
        assert len({affine(g.word(), 2) for g in b}) == len(b)


@given(words(10), words(10))
def test_bs12_equality_agrees_with_affine(u, v):
    assert equals(u, v, BS12) == (affine(u, 2) == affine(v, 2))


@given(words(10), words(10), st.sampled_from([BS23, BS12, GroupParams(3, 3), GroupParams(2, -3)]))
def test_multiplication(u, v, p):
    assert multiply(u, v, p) == canonical_form(u * v, p)
    assert multiply(canonical_form(u, p), v, p) == canonical_form(u * v, p)
    assert multiply(u, inverse(u, p), p) == E
    assert canonical_form(canonical_form(u, p), p) == canonical_form(u, p)


@given(words(10))
def test_canonical_residues_reduced(w):
    g = canonical_form(w, BS23)
    for e, r in g.tail:
        assert 0 <= r < (2 if e == 1 else 3)
    # no pinch: b^e a^0 b^-e never survives
    for (e1, r), (e2, _) in zip(g.tail, g.tail[1:]):
        assert not (e1 == -e2 and r == 0)


@given(words(10))
def test_lambda_recursion(w):
    lam = lambda_map(w, BS23)
    assert lambda_map(w * GroupWord.of(("a", 1)), BS23) == lam + Fraction(1, 2)
    assert lambda_map(w * GroupWord.of(("b", 1)), BS23) == Fraction(2, 3) * lam
    assert lambda_map(canonical_form(w, BS23), BS23) == lam


@given(words(10), st.integers(-20, 20))
def test_level_coordinates(w, j):
    g = canonical_form(w, BS23)
    key, pos = level_coordinates(g, BS23)
    assert level_coordinates(multiply(g, GroupWord.of(("a", j)), BS23), BS23) == (key, pos + j)


def test_level_coordinates_separate_levels():
    keys = {level_coordinates(g, BS23)[0] for g in ball(BS23, 4)}
    assert (1, 1) in keys and (0, 1) in keys and () in keys
    # b and ab lie on different levels: they differ by a non-power of a
    kb = level_coordinates(canonical_form(parse_word("b"), BS23), BS23)[0]
    kab = level_coordinates(canonical_form(parse_word("ab"), BS23), BS23)[0]
    assert kb != kab


def test_iter_level():
    g = canonical_form(parse_word("b"), BS23)
    row = list(iter_level(g, BS23, -1, 1, 2))
    assert row[1] == g
    assert row[2] == canonical_form(parse_word("ba^2"), BS23)


@given(words(10), st.sampled_from([2, 3]))
def test_quasi_normal_form(w, n):
    k, l, m = quasi_normal_form_1n(w, n)
    assert k >= 0 and m >= 0
    assert m - k == height(w)
    assert equals(qnf_word(k, l, m), w, GroupParams(1, n))


def test_quasi_normal_form_examples():
    assert quasi_normal_form_1n(parse_word("aB"), 2) == (1, 2, 0)
    assert quasi_normal_form_1n(parse_word("ba"), 3) == (0, 3, 1)
    assert quasi_normal_form_1n(parse_word("Bab"), 2) == (1, 1, 1)
    assert quasi_normal_form_1n(parse_word("Ba^2b"), 2) == (0, 1, 0)


def test_ball_caps(monkeypatch):
    with pytest.raises(BallTooLarge):
        ball(BS23, 9)
    with pytest.raises(BallTooLarge):
        ball(BS23, 4, max_nodes=50)
    monkeypatch.setenv("BS_MAX_NODES", "20")
    with pytest.raises(BallTooLarge):
        ball(BS23, 3)
    with pytest.raises(ValueError):
        ball_layers(BS23, -1)
