"""The tileset tau_sigma on BS(1, n) and its explicit weakly periodic configurations.

The tile of the couple (c, i) has top c, left = right = i and bottom
sigma_i(c), with bottom_j = sigma_i(c)_(j-1).  With F(k) = floor((k+1)/n) and
R(k) = (k+1) mod n, the configuration built from a fixpoint w of sigma_1 puts

    (w_l, 1)                            at b^-k a^l
    (w_F^m(l), R(F^(m-1)(l)))           at b^-k a^l b^m,  m > 0
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .group import CanonicalForm, GroupParams, GroupWord, ball, multiply, quasi_normal_form_1n
from .substitution import lazy_fixpoint, period_witness, sigma
from .wang import Patch, Tileset, WangTile


@dataclass(frozen=True, order=True)
class SigmaTile:
    c: int
    i: int

    def wang(self, n: int) -> WangTile:
        return WangTile((self.c,), self.i, self.i, sigma(n, self.i).images[self.c])


def tau_sigma(n: int) -> Tileset:
    if n < 2:
        raise ValueError("n must be >= 2")
    return Tileset(GroupParams(1, n),
                   tuple(SigmaTile(c, i).wang(n) for c in (0, 1) for i in range(n)))


def F(k: int, n: int) -> int:
    return (k + 1) // n


def R(k: int, n: int) -> int:
    return (k + 1) % n


def F_iter(k: int, n: int, t: int) -> int:
    for _ in range(t):
        k = F(k, n)
    return k


def tile_from_qnf(n: int, k: int, l: int, m: int, w: Callable[[int], int]) -> SigmaTile:
    if k < 0 or m < 0:
        raise ValueError("quasi-normal form needs k, m >= 0")
    if m == 0:
        return SigmaTile(w(l), 1)
    inner = F_iter(l, n, m - 1)
    return SigmaTile(w(F(inner, n)), R(inner, n))


def _fixpoint(n: int) -> Callable[[int], int]:
    if n < 3:
        raise ValueError("the single-fixpoint construction needs n >= 3; use the n = 2 variant")
    return lazy_fixpoint(sigma(n, 1), 0, 0)


def _fixpoints2() -> tuple[Callable[[int], int], Callable[[int], int]]:
    s1 = sigma(2, 1)
    s2 = s1.compose(s1)
    return lazy_fixpoint(s2, 0, 0), lazy_fixpoint(s2, 0, 1)


def explicit_tile(n: int, g, w: Callable[[int], int] | None = None) -> SigmaTile:
    """Tile at g (n >= 3), read off the quasi-normal form of g."""
    if w is None:
        w = _fixpoint(n)
    return tile_from_qnf(n, *quasi_normal_form_1n(g, n), w)


def explicit_tile_n2(g, words=None) -> SigmaTile:
    """n = 2: the word is u when k + m is even and v when it is odd."""
    u, v = words if words is not None else _fixpoints2()
    k, l, m = quasi_normal_form_1n(g, 2)
    return tile_from_qnf(2, k, l, m, u if (k + m) % 2 == 0 else v)


def tile_builder(n: int) -> Callable[[object], SigmaTile]:
    """g -> tile of the explicit configuration (the alternating one for n = 2)."""
    if n == 2:
        words = _fixpoints2()
        return lambda g: explicit_tile_n2(g, words)
    w = _fixpoint(n)
    return lambda g: explicit_tile(n, g, w)


def _patch(n: int, radius: int, build) -> Patch:
    p = GroupParams(1, n)
    ts = tau_sigma(n)
    cells = {g: ts.index(build(g).wang(n)) for g in ball(p, radius)}
    return Patch(ts, cells)


def explicit_patch(n: int, radius: int) -> Patch:
    if n == 2:
        raise ValueError("sigma_1 has no fixpoint for n = 2; use explicit_patch_n2")
    return _patch(n, radius, tile_builder(n))


def explicit_patch_n2(radius: int) -> Patch:
    return _patch(2, radius, tile_builder(2))


def subst_patch(n: int, radius: int) -> Patch:
    return explicit_patch_n2(radius) if n == 2 else explicit_patch(n, radius)


def b_periodicity_check(build: Callable[[object], SigmaTile], n: int, period: GroupWord,
                        radius: int) -> bool:
    """True iff tile(period * g) = tile(g) for every g in the ball."""
    return periodicity_witness(build, n, period, radius) is None


def periodicity_witness(build, n: int, period: GroupWord, radius: int) -> CanonicalForm | None:
    p = GroupParams(1, n)
    for g in ball(p, radius):
        if build(multiply(period, g, p)) != build(g):
            return g
    return None


@dataclass
class PeriodFalsification:
    witnesses: dict            # k -> (level index, position) or None when inconclusive

    @property
    def all_found(self) -> bool:
        return all(v is not None for v in self.witnesses.values())

    def inconclusive(self) -> list[int]:
        return [k for k, v in self.witnesses.items() if v is None]


def level_top_word(build, n: int, height: int, lo: int, hi: int) -> list[int]:
    """Top labels along the level of b^height, positions lo..hi-1."""
    return [build(GroupWord.of(("b", height), ("a", t))).c for t in range(lo, hi)]


def a_period_falsification(n: int, k_max: int, level_depth: int = 1, window: int = 3**8,
                           words: Sequence[Sequence[int]] | None = None) -> PeriodFalsification:
    """For each 1 <= k <= k_max, find a level and a position breaking a^k-periodicity.

    Levels are those of b^h for |h| <= level_depth, read over ``window``
    positions centred on 0; ``words`` replaces them with caller-supplied words.
    """
    if k_max < 1:
        raise ValueError("k must be >= 1")
    if words is None:
        build = tile_builder(n)
        lo = -(window // 2)
        words = [level_top_word(build, n, h, lo, lo + window)
                 for h in range(-level_depth, level_depth + 1)]
    out = {}
    for k in range(1, k_max + 1):
        out[k] = None
        for li, word in enumerate(words):
            pos = period_witness(word, k)
            if pos is not None:
                out[k] = (li, pos)
                break
    return PeriodFalsification(out)
