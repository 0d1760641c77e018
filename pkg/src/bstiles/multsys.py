"""Multiplicative systems: finite families of linear maps x -> q x on rational intervals.

Also the circle map f on [1/3, 2] / (1/3 ~ 2) attached to the system S0 and its
conjugacy to an irrational rotation.  The rotation part is floating point and
never feeds back into exact tile construction.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InconclusiveError

DEFAULT_MAX_SET = 10**4
DEFAULT_MAX_STEPS = 256


@dataclass(frozen=True)
class LinearPiece:
    """x -> q x on [a + d1/e1, a + 1 - d2/e2]."""

    q: Fraction
    a: int
    d1: int = 0
    e1: int = 1
    d2: int = 0
    e2: int = 1

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q == 0:
            raise ValueError("slopes must be nonzero")
        if self.e1 <= 0 or self.e2 <= 0 or self.d1 < 0 or self.d2 < 0:
            raise ValueError("need e1, e2 > 0 and d1, d2 >= 0")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def from_bounds(cls, q, lo, hi, a: int | None = None) -> "LinearPiece":
        lo, hi = Fraction(lo), Fraction(hi)
        if a is None:
            a = math.floor(lo)
            if hi > a + 1:
                raise ValueError(f"[{lo}, {hi}] does not fit in a unit interval [a, a+1]")
        if not (a <= lo and hi <= a + 1):
            raise ValueError(f"[{lo}, {hi}] is not inside [{a}, {a + 1}]")
        left = lo - a
        right = a + 1 - hi
        return cls(Fraction(q), a, left.numerator, left.denominator,
                   right.numerator, right.denominator)

    @property
    def lo(self) -> Fraction:
        return self.a + Fraction(self.d1, self.e1)

    @property
    def hi(self) -> Fraction:
        return self.a + 1 - Fraction(self.d2, self.e2)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def image_contains(self, y) -> bool:
        return self.contains(y / self.q)

    def __str__(self):
        return f"x -> {self.q} x on [{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class MultSystem:
    pieces: tuple[LinearPiece, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise ValueError("a multiplicative system needs at least one piece")

    def in_domain(self, x) -> bool:
        return any(pc.contains(x) for pc in self.pieces)

    def __len__(self):
        return len(self.pieces)


S0 = MultSystem((
    LinearPiece.from_bounds(2, Fraction(1, 3), 1),
    LinearPiece.from_bounds(Fraction(1, 3), 1, 2),
))


def image(s: MultSystem, x) -> set[Fraction]:
    return {pc.q * x for pc in s.pieces if pc.contains(x)}


def preimage(s: MultSystem, y) -> set[Fraction]:
    return {y / pc.q for pc in s.pieces if pc.image_contains(y)}


class IterationCapExceeded(InconclusiveError):
    pass


def iterate(s: MultSystem, x, k: int, max_set: int = DEFAULT_MAX_SET,
            max_steps: int = DEFAULT_MAX_STEPS) -> set[Fraction]:
    """The k-th iteration: forward images for k > 0, inverse images for k < 0."""
    if abs(k) > max_steps:
        raise IterationCapExceeded(f"|k| = {abs(k)} exceeds the step bound {max_steps}")
    step = image if k > 0 else preimage
    layer = {Fraction(x)}
    for _ in range(abs(k)):
        layer = set().union(*(step(s, y) for y in layer)) if layer else set()
        if len(layer) > max_set:
            raise IterationCapExceeded(f"iteration set grew past {max_set} elements")
    return layer


def iterate_bruteforce(s: MultSystem, x, k: int) -> set[Fraction]:
    """Enumerate every branch sequence i_1..i_|k| and compose, checking domains at each step."""
    x = Fraction(x)
    if k == 0:
        return {x}
    out = set()
    for seq in itertools.product(s.pieces, repeat=abs(k)):
        y = x
        for pc in seq:
            if k > 0:
                if not pc.contains(y):
                    break
                y = pc.q * y
            else:
                if not pc.image_contains(y):
                    break
                y = y / pc.q
        else:
            out.add(y)
    return out


def is_immortal_up_to(s: MultSystem, x, K: int) -> bool:
    """Bounded immortality: S^k(x) meets the domains for every |k| <= K."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    x = Fraction(x)
    if not s.in_domain(x):
        return False
    for step in (image, preimage):
        layer = {x}
        for _ in range(K):
            layer = set().union(*(step(s, y) for y in layer))
            if not any(s.in_domain(y) for y in layer):
                return False
            # points that left the domains cannot be iterated further
            layer = {y for y in layer if s.in_domain(y)}
    return True


def rationals_in(lo: Fraction, hi: Fraction, max_den: int) -> Iterable[Fraction]:
    for q in range(1, max_den + 1):
        for p in range(math.ceil(lo * q), math.floor(hi * q) + 1):
            if math.gcd(p, q) == 1:
                yield Fraction(p, q)


def periodic_point_search(s: MultSystem, max_den: int, max_period: int) -> list[tuple[Fraction, int]]:
    """All p/q in the domains with q <= max_den and x in S^k(x) for some 1 <= k <= max_period.

    Each hit is reported once with its least period, ordered by (denominator, numerator).
    """
    if max_den < 1 or max_period < 1:
        raise ValueError("bounds must be >= 1")
    candidates = set()
    for pc in s.pieces:
        candidates.update(rationals_in(pc.lo, pc.hi, max_den))
    hits = []
    for x in candidates:
        layer = {x}
        for k in range(1, max_period + 1):
            layer = set().union(*(image(s, y) for y in layer))
            if x in layer:
                hits.append((x, k))
                break
            if not layer:
                break
    hits.sort(key=lambda h: (h[0].denominator, h[0].numerator))
    return hits


# --- the circle map of S0 -------------------------------------------------

THIRD = Fraction(1, 3)
TWO = Fraction(2)


@dataclass(frozen=True)
class QuotientPoint:
    """A point of [1/3, 2] with 1/3 and 2 identified; ``value`` is the stored representative."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if not THIRD <= self.value <= TWO:
            raise ValueError(f"{self.value} is outside [1/3, 2]")

    @property
    def is_endpoint(self) -> bool:
        return self.value in (THIRD, TWO)

    def _cls(self) -> Fraction:
        return TWO if self.value == THIRD else self.value

    def __eq__(self, other):
        if not isinstance(other, QuotientPoint):
            return NotImplemented
        return self._cls() == other._cls()

    def __hash__(self):
        return hash(self._cls())

    def __str__(self):
        return f"[{self.value}]" if self.is_endpoint else str(self.value)


def f_quotient(x: QuotientPoint) -> QuotientPoint:
    v = x.value
    if x.is_endpoint:
        return QuotientPoint(Fraction(2, 3))
    if v == 1:
        return QuotientPoint(TWO)
    if v < 1:
        return QuotientPoint(2 * v)
    return QuotientPoint(v / 3)


def f_quotient_inverse(y: QuotientPoint) -> QuotientPoint:
    v = y.value
    if y.is_endpoint:
        return QuotientPoint(Fraction(1))
    if v == Fraction(2, 3):
        # both 1/3 and 2 map here; a preimage is stored as 1/3
        return QuotientPoint(THIRD)
    if v > Fraction(2, 3):
        return QuotientPoint(v / 2)
    return QuotientPoint(3 * v)


ROTATION_ANGLE = math.log(2) / (math.log(2) + math.log(3))


def phi_circle(x: QuotientPoint) -> float:
    """(log x + log 3) / (log 2 + log 3) mod 1."""
    t = (math.log(x.value) + math.log(3)) / (math.log(2) + math.log(3))
    t = t % 1.0
    # log(2) + log(3) and log(6) may differ in the last bit
    return 0.0 if t > 1 - 1e-15 else t


def circle_distance(s: float, t: float) -> float:
    d = abs(s - t) % 1.0
    return min(d, 1.0 - d)


def random_quotient_point(rng: random.Random, max_den: int = 10**6) -> QuotientPoint:
    den = rng.randint(1, max_den)
    lo, hi = math.ceil(THIRD * den), 2 * den
    return QuotientPoint(Fraction(rng.randint(lo, hi), den))


def rotation_residual(sample_count: int, seed: int = 0) -> float:
    """max |phi(f(x)) - (phi(x) + theta)| on the circle over random rational samples."""
    rng = random.Random(seed)
    pts = [QuotientPoint(1), QuotientPoint(TWO), QuotientPoint(THIRD), QuotientPoint(Fraction(2, 3))]
    pts += [random_quotient_point(rng) for _ in range(max(0, sample_count - len(pts)))]
    worst = 0.0
    for x in pts:
        lhs = phi_circle(f_quotient(x))
        rhs = (phi_circle(x) + ROTATION_ANGLE) % 1.0
        worst = max(worst, circle_distance(lhs, rhs))
    return worst
