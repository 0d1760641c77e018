"""Wang tiles on BS(m, n) and verification of finite patches.

A tile has m top labels, one left, one right and n bottom labels.  A tiling T
is valid when, for every g,

    T_g(right) = T_{g a^m}(left)
    T_g(top_k) = T_{g a^(k-l) b}(bottom_l)      k = 1..m, l = 1..n

Labels are exact values: ``Fraction``, ``int`` (colours), or a
``(Fraction, int)`` pair for the coloured side labels of a product tileset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .group import (CanonicalForm, GroupParams, _Builder, level_coordinates)

Label = Union[Fraction, int, tuple]


@dataclass(frozen=True)
class WangTile:
    top: tuple
    left: Label
    right: Label
    bottom: tuple

    def __post_init__(self):
        object.__setattr__(self, "top", tuple(self.top))
        object.__setattr__(self, "bottom", tuple(self.bottom))

    def sort_key(self):
        return (self.top, _label_key(self.left), _label_key(self.right), self.bottom)


def _label_key(lbl):
    return lbl if isinstance(lbl, tuple) else (lbl,)


@dataclass(frozen=True)
class Tileset:
    params: GroupParams
    tiles: tuple[WangTile, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))
        m, n = self.params.m, self.params.n
        index = {}
        for i, t in enumerate(self.tiles):
            if len(t.top) != m or len(t.bottom) != n:
                raise ValueError(f"tile {i} has {len(t.top)} top / {len(t.bottom)} bottom "
                                 f"labels, expected {m} / {n}")
            if t in index:
                raise ValueError(f"duplicate tile at positions {index[t]} and {i}")
            index[t] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_tiles(cls, params: GroupParams, tiles: Iterable[WangTile]) -> "Tileset":
        """Deduplicate and sort; the resulting order is deterministic."""
        return cls(params, tuple(sorted(set(tiles), key=WangTile.sort_key)))

    def index(self, tile: WangTile) -> int:
        return self._index[tile]

    def __contains__(self, tile):
        return tile in self._index

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)


@dataclass
class Patch:
    """Finite partial configuration: canonical group elements -> tile indices."""

    tileset: Tileset
    cells: dict[CanonicalForm, int]

    def __post_init__(self):
        for g, i in self.cells.items():
            if not 0 <= i < len(self.tileset):
                raise ValueError(f"cell {g} points at tile {i}, tileset has {len(self.tileset)}")

    @property
    def params(self) -> GroupParams:
        return self.tileset.params

    def tile(self, g: CanonicalForm) -> WangTile | None:
        i = self.cells.get(g)
        return None if i is None else self.tileset.tiles[i]

    @classmethod
    def from_assignment(cls, params: GroupParams, assignment: dict[CanonicalForm, WangTile]) -> "Patch":
        ts = Tileset.from_tiles(params, assignment.values())
        return cls(ts, {g: ts.index(t) for g, t in assignment.items()})

    def restrict(self, keep: Iterable[CanonicalForm]) -> "Patch":
        keep = set(keep)
        return Patch(self.tileset, {g: i for g, i in self.cells.items() if g in keep})

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True, order=True)
class AdjacencyViolation:
    site: CanonicalForm
    neighbor: CanonicalForm
    rule: str                       # "horizontal" or "vertical"
    k: int = 0                      # top index on the site (vertical only)
    l: int = 0                      # bottom index on the neighbour (vertical only)
    expected: object = field(default=None, compare=False)
    actual: object = field(default=None, compare=False)

    def mentions(self, g: CanonicalForm) -> bool:
        return g in (self.site, self.neighbor)


def _shift(g: CanonicalForm, p: GroupParams, j: int, b: int = 0) -> CanonicalForm:
    bld = _Builder(p, g)
    bld.push_a(j)
    if b:
        bld.push_b(b)
    return bld.freeze()


def verify_patch(x: Patch) -> list[AdjacencyViolation]:
    """Every violated adjacency between two present cells, each reported once from the lower/left tile."""
    p = x.params
    m, n = p.m, p.n
    tiles = x.tileset.tiles
    out = []
    for g, i in x.cells.items():
        t = tiles[i]
        right = _shift(g, p, m)
        j = x.cells.get(right)
        if j is not None and tiles[j].left != t.right:
            out.append(AdjacencyViolation(g, right, "horizontal", 0, 0, t.right, tiles[j].left))
        for k in range(1, m + 1):
            for l in range(1, n + 1):
                up = _shift(g, p, k - l, 1)
                j = x.cells.get(up)
                if j is not None and tiles[j].bottom[l - 1] != t.top[k - 1]:
                    out.append(AdjacencyViolation(g, up, "vertical", k, l,
                                                  t.top[k - 1], tiles[j].bottom[l - 1]))
    out.sort()
    return out


def _numeric(lbl) -> Fraction:
    if isinstance(lbl, tuple):
        lbl = lbl[0]
    if isinstance(lbl, bool) or not isinstance(lbl, (int, Fraction)):
        raise TypeError(f"label {lbl!r} is not a rational")
    return Fraction(lbl)


def multiplies_residual(t: WangTile, q, m: int, n: int) -> Fraction:
    """q (t_1+...+t_m)/m + l - (b_1+...+b_n)/n - r, zero iff the tile multiplies by q."""
    q = Fraction(q)
    top = sum(_numeric(v) for v in t.top)
    bot = sum(_numeric(v) for v in t.bottom)
    return q * top / m + _numeric(t.left) - bot / n - _numeric(t.right)


def check_multiplies(ts: Tileset, q) -> bool:
    m, n = ts.params.m, ts.params.n
    return all(multiplies_residual(t, q, m, n) == 0 for t in ts.tiles)


class LineGap(LookupError):
    def __init__(self, missing: list[CanonicalForm]):
        super().__init__(f"{len(missing)} cells missing along the level: "
                         + ", ".join(str(g) for g in missing[:8]))
        self.missing = missing


def line_word(x: Patch, g: CanonicalForm, side: str, lo: int, hi: int) -> list:
    """Concatenated side labels of the tiles g a^(m t), t = lo..hi.

    Top sides contribute m labels per tile and bottom sides n, so consecutive
    tiles continue the same label sequence.
    """
    if side not in ("top", "bottom"):
        raise ValueError("side must be 'top' or 'bottom'")
    if lo > hi:
        return []
    p = x.params
    cells = [_shift(g, p, p.m * t) for t in range(lo, hi + 1)]
    missing = [c for c in cells if c not in x.cells]
    if missing:
        raise LineGap(missing)
    word = []
    for c in cells:
        t = x.tile(c)
        word.extend(t.top if side == "top" else t.bottom)
    return word


def window_check(w: Sequence, e: int, d: int, target) -> bool:
    """Every e consecutive labels of w contain at least d copies of target."""
    if e < 1:
        raise ValueError("window length must be positive")
    if e > len(w):
        raise ValueError(f"window length {e} exceeds word length {len(w)}")
    hits = [1 if v == target else 0 for v in w]
    count = sum(hits[:e])
    if count < d:
        return False
    for i in range(e, len(hits)):
        count += hits[i] - hits[i - e]
        if count < d:
            return False
    return True


@dataclass
class LevelWord:
    key: tuple
    start: int          # position of the first label
    labels: list
    tiles: frozenset    # tile indices used on the level


def level_words(x: Patch) -> list[LevelWord]:
    """Top-side label runs of every level present in the patch.

    The tile at position s of a level carries the labels at positions s..s+m-1,
    so each level yields the maximal runs of consecutive known positions.
    """
    p = x.params
    by_level: dict[tuple, dict[int, object]] = {}
    used: dict[tuple, set[int]] = {}
    for g, i in x.cells.items():
        key, pos = level_coordinates(g, p)
        used.setdefault(key, set()).add(i)
        labels = by_level.setdefault(key, {})
        for j, v in enumerate(x.tileset.tiles[i].top):
            labels.setdefault(pos + j, v)
    out = []
    for key in sorted(by_level):
        labels = by_level[key]
        tiles = frozenset(used[key])
        positions = sorted(labels)
        run_start = positions[0]
        run = [labels[run_start]]
        for prev, cur in zip(positions, positions[1:]):
            if cur == prev + 1:
                run.append(labels[cur])
            else:
                out.append(LevelWord(key, run_start, run, tiles))
                run_start, run = cur, [labels[cur]]
        out.append(LevelWord(key, run_start, run, tiles))
    return out
