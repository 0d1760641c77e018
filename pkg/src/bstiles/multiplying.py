"""The multiplying tilesets tau_{q,I} on BS(m, n) and the SFT Y_S of a multiplicative system.

For g in BS(m, n) and a real x, write z = m lambda(g).  The tile of (g, x) is

    t_j = floor((z + j) x)       - floor((z + j - 1) x)           j = 1..m
    b_j = floor((z' + j) q x)    - floor((z' + j - 1) q x)        j = 1..n,  z' = n lambda(g)
    l   = q/m floor(z x)         - 1/n floor(z' q x)
    r   = q/m floor((z + m) x)   - 1/n floor((z' + n) q x)

and it satisfies q (t_1 + ... + t_m)/m + l = (b_1 + ... + b_n)/n + r.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconclusiveError
from .group import (GroupParams, GroupWord, ball, canonical_form, height, lambda_map,
                    multiply)
from .multsys import (S0, LinearPiece, MultSystem, QuotientPoint, f_quotient,
                      f_quotient_inverse, rationals_in)
from .wang import Patch, Tileset, WangTile, level_words, window_check

floor = math.floor


def balanced(x, z, j: int) -> int:
    """B_j(x, z) = floor((z + j) x) - floor((z + j - 1) x)."""
    return floor((z + j) * x) - floor((z + j - 1) * x)


def tile_from_lambda(p: GroupParams, q, lam: Fraction, x) -> WangTile:
    m, n = p.m, p.n
    q, x = Fraction(q), Fraction(x)
    z, zb = m * lam, n * lam
    qx = q * x
    top = tuple(balanced(x, z, j) for j in range(1, m + 1))
    bottom = tuple(balanced(qx, zb, j) for j in range(1, n + 1))
    left = q / m * floor(z * x) - Fraction(floor(zb * qx), n)
    right = q / m * floor((z + m) * x) - Fraction(floor((zb + n) * qx), n)
    return WangTile(top, left, right, bottom)


def ak_tile(p: GroupParams, q, g, x) -> WangTile:
    p.require_positive()
    return tile_from_lambda(p, q, lambda_map(g, p), x)


def left_label_bounds(p: GroupParams, q) -> tuple[int, int, int]:
    """(k1, k2, D): every left (and right) label lies in {k1/D, ..., k2/D}.

    With q = q1/q2 the numerator n q1 floor(u) - m q2 floor(n q1 u / (m q2))
    lies in [-n q1 {u}, m q2 - n q1 {u}).
    """
    q = Fraction(q)
    q1, q2 = q.numerator, q.denominator
    m, n = p.m, p.n
    k1 = min(0, -n * q1)
    k2 = m * q2 + max(0, -n * q1)
    return k1, k2, m * n * q2


# --- enumeration of tau_{q,I} ---------------------------------------------

class InconclusiveEnumeration(InconclusiveError):
    pass


@dataclass
class Enumeration:
    tileset: Tileset
    strategy: str
    radius: int = 0                 # ball radius of the last round
    denominator: int = 0            # largest sampled denominator of the last round
    rounds: list = field(default_factory=list)   # (radius, denominator, tile count) per round

    @property
    def certificate(self) -> dict:
        return {"strategy": self.strategy, "radius": self.radius,
                "denominator": self.denominator,
                "rounds": [list(r) for r in self.rounds]}


def enumerate_tileset(p: GroupParams, q, lo, hi, strategy: str = "sample",
                      patience: int = 2, den_step: int = 4, max_radius: int = 8,
                      max_den: int = 64) -> Enumeration:
    """Collect the tiles of tau_{q,[lo,hi]}.

    ``sample``: round t uses g in the ball of radius t and x = p/d in [lo, hi]
    with d <= den_step * t; the set is declared stable once ``patience``
    consecutive rounds add nothing.  Sound under-approximation.

    ``overapprox``: every label tuple allowed by the label bounds that
    satisfies the multiplying equation.  Sound over-approximation.
    """
    p.require_positive()
    q, lo, hi = Fraction(q), Fraction(lo), Fraction(hi)
    a = floor(lo)
    if lo > hi or hi > a + 1:
        raise ValueError(f"[{lo}, {hi}] must be a nonempty subinterval of some [a, a+1]")
    if strategy == "overapprox":
        return _overapprox(p, q, lo, hi)
    if strategy != "sample":
        raise ValueError(f"unknown strategy {strategy!r}")

    tiles: set[WangTile] = set()
    seen_pairs: set[tuple[Fraction, Fraction]] = set()
    lams: set[Fraction] = set()
    rounds = []
    quiet = 0
    t = 0
    while quiet < patience:
        t += 1
        radius, den = t, den_step * t
        if radius > max_radius or den > max_den:
            raise InconclusiveEnumeration(
                f"tau_{{{q},[{lo},{hi}]}} still growing at radius {radius - 1}, "
                f"denominator {den - den_step}: {len(tiles)} tiles")
        lams.update(lambda_map(g, p) for g in ball(p, radius, max_radius=max_radius))
        xs = list(rationals_in(lo, hi, den))
        before = len(tiles)
        for lam in lams:
            for x in xs:
                if (lam, x) in seen_pairs:
                    continue
                seen_pairs.add((lam, x))
                tiles.add(tile_from_lambda(p, q, lam, x))
        rounds.append((radius, den, len(tiles)))
        quiet = quiet + 1 if len(tiles) == before and t > 1 else 0
    return Enumeration(Tileset.from_tiles(p, tiles), "sample", radius, den, rounds)


def _overapprox(p: GroupParams, q: Fraction, lo: Fraction, hi: Fraction) -> Enumeration:
    m, n = p.m, p.n
    a = floor(lo)
    k1, k2, den = left_label_bounds(p, q)
    sides = [Fraction(k, den) for k in range(k1, k2 + 1)]
    tops = list(itertools.product((a, a + 1), repeat=m))
    qlo, qhi = sorted((q * lo, q * hi))
    bottoms = []
    for c in range(floor(qlo), floor(qhi) + 1):
        bottoms.extend(itertools.product((c, c + 1), repeat=n))
    bottoms = sorted(set(bottoms))
    tiles = set()
    for top in tops:
        st = q * sum(top) / m
        for bot in bottoms:
            sb = Fraction(sum(bot), n)
            for left in sides:
                right = st + left - sb
                if right in sides or (k1 <= right * den <= k2 and (right * den).denominator == 1):
                    tiles.add(WangTile(top, left, right, bot))
    return Enumeration(Tileset.from_tiles(p, tiles), "overapprox")


# --- Y_S -------------------------------------------------------------------

@dataclass(frozen=True)
class WindowConstraint:
    """On lines of colour ``color``: every ``length`` consecutive top labels hold >= ``count`` copies of ``label``."""

    color: int
    length: int
    count: int
    label: int

    def check(self, word) -> bool:
        if self.count == 0 or len(word) < self.length:
            return True
        return window_check(word, self.length, self.count, self.label)


def piece_constraints(pc: LinearPiece, color: int) -> tuple[WindowConstraint, WindowConstraint]:
    return (WindowConstraint(color, pc.e1, pc.d1, pc.a + 1),
            WindowConstraint(color, pc.e2, pc.d2, pc.a))


@dataclass
class YSystem:
    system: MultSystem
    tileset: Tileset
    constraints: tuple[WindowConstraint, ...]
    enumerations: tuple[Enumeration, ...]

    def constraints_for(self, color: int) -> list[WindowConstraint]:
        return [c for c in self.constraints if c.color == color]


def colored(t: WangTile, color: int) -> WangTile:
    return WangTile(t.top, (t.left, color), (t.right, color), t.bottom)


def build_Ys(system: MultSystem, p: GroupParams, **enum_kwargs) -> YSystem:
    """Product tileset: colour i pairs the side labels of tau_{q_i,[a_i,a_i+1]}; colours are 1-based."""
    tiles = []
    constraints = []
    enums = []
    for color, pc in enumerate(system.pieces, start=1):
        en = enumerate_tileset(p, pc.q, pc.a, pc.a + 1, **enum_kwargs)
        enums.append(en)
        tiles.extend(colored(t, color) for t in en.tileset)
        constraints.extend(piece_constraints(pc, color))
    return YSystem(system, Tileset.from_tiles(p, tiles), tuple(constraints), tuple(enums))


# --- orbit configurations --------------------------------------------------

@dataclass(frozen=True)
class OrbitBranch:
    """x_k for k in [-K, K+1] and colours i_k (1-based) for k in [-K, K], with x_{k+1} = q_{i_k} x_k."""

    values: dict
    indices: dict
    K: int

    def value(self, k: int) -> Fraction:
        return self.values[k]

    def check(self, system: MultSystem) -> None:
        for k in range(-self.K, self.K + 1):
            pc = system.pieces[self.indices[k] - 1]
            if not pc.contains(self.values[k]):
                raise ValueError(f"x_{k} = {self.values[k]} is outside the domain of piece {self.indices[k]}")
            if pc.q * self.values[k] != self.values[k + 1]:
                raise ValueError(f"x_{k + 1} != q_{self.indices[k]} x_{k}")


class BranchTooShort(LookupError):
    pass


def _color_of_step(system: MultSystem, x: Fraction, y: Fraction) -> int:
    for color, pc in enumerate(system.pieces, start=1):
        if pc.contains(x) and pc.q * x == y:
            return color
    raise ValueError(f"no piece maps {x} to {y}")


def orbit_for_s0(x0, K: int) -> OrbitBranch:
    """Orbit of x0 under the circle map f of S0, lifted to rationals.

    f(1) is stored as 2; a preimage landing on the class {1/3, 2} is stored as 1/3.
    """
    x0 = Fraction(x0)
    values = {0: QuotientPoint(x0)}
    for k in range(0, K + 1):
        values[k + 1] = f_quotient(values[k])
    for k in range(0, -K, -1):
        values[k - 1] = f_quotient_inverse(values[k])
    vals = {k: v.value for k, v in values.items()}
    indices = {k: _color_of_step(S0, vals[k], vals[k + 1]) for k in range(-K, K + 1)}
    return OrbitBranch(vals, indices, K)


def orbit_branch(system: MultSystem, x0, K: int) -> OrbitBranch:
    """A branch for a general system: first piece (in order) that keeps the orbit in the domains."""
    x0 = Fraction(x0)
    if not system.in_domain(x0):
        raise ValueError(f"{x0} is outside every domain")
    vals = {0: x0}
    indices = {}
    for k in range(0, K + 1):
        x = vals[k]
        for color, pc in enumerate(system.pieces, start=1):
            if pc.contains(x) and (k == K or system.in_domain(pc.q * x)):
                vals[k + 1], indices[k] = pc.q * x, color
                break
        else:
            raise ValueError(f"orbit of {x0} dies at step {k}")
    for k in range(0, -K, -1):
        y = vals[k]
        for color, pc in enumerate(system.pieces, start=1):
            if pc.image_contains(y):
                vals[k - 1], indices[k - 1] = y / pc.q, color
                break
        else:
            raise ValueError(f"orbit of {x0} has no preimage at step {k - 1}")
    return OrbitBranch(vals, indices, K)


def orbit_tile(system: MultSystem, branch: OrbitBranch, p: GroupParams, g) -> WangTile:
    """Tile of the orbit configuration at g: colour i_k and value x_k with k = -||g||_b."""
    k = -height(g)
    if k not in branch.indices:
        raise BranchTooShort(f"orbit branch covers heights {-branch.K}..{branch.K}, "
                             f"but height {-k} is needed")
    color = branch.indices[k]
    t = ak_tile(p, system.pieces[color - 1].q, g, branch.values[k])
    return colored(t, color)


def orbit_configuration(system: MultSystem, branch: OrbitBranch, p: GroupParams,
                        radius: int) -> Patch:
    if branch.K < radius:
        raise BranchTooShort(f"orbit branch covers heights {-branch.K}..{branch.K}, "
                             f"radius {radius} needs {-radius}..{radius}")
    cells = {g: orbit_tile(system, branch, p, g) for g in ball(p, radius)}
    return Patch.from_assignment(p, cells)


def line_color(x: Patch, tiles) -> int:
    colors = {x.tileset.tiles[i].left[1] for i in tiles}
    if len(colors) != 1:
        raise ValueError(f"level mixes colours {sorted(colors)}")
    return colors.pop()


def window_failures(x: Patch, constraints) -> list[tuple]:
    """(level key, constraint) pairs whose window condition fails on some maximal run."""
    by_color: dict[int, list[WindowConstraint]] = {}
    for c in constraints:
        by_color.setdefault(c.color, []).append(c)
    bad = []
    for lw in level_words(x):
        color = line_color(x, lw.tiles)
        for c in by_color.get(color, ()):
            if not c.check(lw.labels):
                bad.append((lw.key, c))
    return bad


def weak_period_check(system: MultSystem, branch: OrbitBranch, p: GroupParams,
                      period: GroupWord, radius: int) -> bool:
    """True iff the orbit tile at period*g equals the tile at g for every g in the ball."""
    period_cf = canonical_form(period, p)
    for g in ball(p, radius):
        if orbit_tile(system, branch, p, multiply(period_cf, g, p)) != orbit_tile(system, branch, p, g):
            return False
    return True


WEAK_PERIOD = GroupWord((("b", 1), ("a", 1), ("b", -1), ("a", 1), ("b", 1), ("a", -1),
                         ("b", -1), ("a", -1)))
