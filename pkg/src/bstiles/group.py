"""Exact arithmetic in the Baumslag-Solitar groups BS(m, n) = <a, b | b a^m b^-1 = a^n>.

Elements are kept in a Britton-reduced normal form

    a^r0 b^e1 a^r1 ... b^ek a^rk

where, for i >= 1, 0 <= r_i < |m| when e_i = +1 and 0 <= r_i < |n| when
e_i = -1.  Excess a-powers are pushed to the left using

    b a^(mt+s)   = a^(nt) b a^s
    b^-1 a^(nt+s) = a^(mt) b^-1 a^s
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .errors import InconclusiveError


@dataclass(frozen=True)
class GroupParams:
    m: int
    n: int

    def __post_init__(self):
        if not isinstance(self.m, int) or not isinstance(self.n, int):
            raise TypeError("m and n must be integers")
        if self.m == 0 or self.n == 0:
            raise ValueError(f"BS(m,n) needs nonzero parameters, got m={self.m}, n={self.n}")

    def require_positive(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"tile constructions need m, n >= 1, got BS({self.m},{self.n})")

    def __str__(self):
        return f"BS({self.m},{self.n})"


class WordParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"{reason} at position {position} in {text!r}")
        self.text = text
        self.position = position


def _merge(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for gen, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == gen:
            e += out[-1][1]
            out.pop()
            if e == 0:
                continue
        out.append((gen, e))
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """A word over a, b; runs of the same generator are merged."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for gen, _ in self.letters:
            if gen not in ("a", "b"):
                raise ValueError(f"unknown generator {gen!r}")
        object.__setattr__(self, "letters", _merge(self.letters))

    @classmethod
    def of(cls, *letters: tuple[str, int]) -> "GroupWord":
        return cls(tuple(letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "GroupWord":
        if k < 0:
            return self.inverse() ** (-k)
        return GroupWord(self.letters * k)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def __str__(self):
        return format_word(self)


A = GroupWord.of(("a", 1))
B = GroupWord.of(("b", 1))
IDENTITY = GroupWord()

_TOKEN = re.compile(r"\s*([abAB])(?:\^(-?\d+))?")


def parse_word(text: str) -> GroupWord:
    """Parse ``a``, ``b``, ``A`` (a^-1), ``B`` (b^-1) with optional ``^k`` exponents.

    ``""``, ``"e"`` and ``"1"`` all denote the identity.
    """
    if text.strip() in ("", "e", "1"):
        return IDENTITY
    letters = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise WordParseError(text, pos, f"unexpected character {text[pos]!r}")
        ch, exp = mt.group(1), mt.group(2)
        e = int(exp) if exp is not None else 1
        sign = -1 if ch.isupper() else 1
        letters.append((ch.lower(), sign * e))
        pos = mt.end()
    return GroupWord(tuple(letters))


def format_word(w: GroupWord) -> str:
    if w.is_empty():
        return "e"
    parts = []
    for g, e in w.letters:
        ch = g if e > 0 else g.upper()
        parts.append(ch if abs(e) == 1 else f"{ch}^{abs(e)}")
    return "".join(parts)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """a^head b^e1 a^r1 ... b^ek a^rk, with ``tail = ((e1, r1), ..., (ek, rk))``."""

    head: int = 0
    tail: tuple[tuple[int, int], ...] = ()

    def word(self) -> GroupWord:
        letters = [("a", self.head)]
        for e, r in self.tail:
            letters.append(("b", e))
            letters.append(("a", r))
        return GroupWord(tuple(letters))

    @property
    def height(self) -> int:
        return sum(e for e, _ in self.tail)

    @property
    def b_length(self) -> int:
        return len(self.tail)

    def is_identity(self) -> bool:
        return self.head == 0 and not self.tail

    def __str__(self):
        return format_word(self.word())


E = CanonicalForm()


class _Builder:
    """Mutable normal form used while multiplying on the right by generators."""

    __slots__ = ("p", "r", "es")

    def __init__(self, p: GroupParams, g: CanonicalForm = E):
        self.p = p
        self.r = [g.head] + [r for _, r in g.tail]
        self.es = [e for e, _ in g.tail]

    def push_a(self, j: int):
        if j == 0:
            return
        m, n = self.p.m, self.p.n
        r, es = self.r, self.es
        r[-1] += j
        i = len(es)
        while i >= 1:
            if es[i - 1] == 1:
                s = r[i] % abs(m)
                carry = ((r[i] - s) // m) * n
            else:
                s = r[i] % abs(n)
                carry = ((r[i] - s) // n) * m
            r[i] = s
            if carry == 0:
                return
            i -= 1
            r[i] += carry

    def push_b(self, e: int):
        # residues are reduced, so a pinch b^-e a^r b^e can only have r = 0
        if self.es and self.es[-1] == -e and self.r[-1] == 0:
            self.es.pop()
            self.r.pop()
        else:
            self.es.append(e)
            self.r.append(0)

    def push_word(self, w: GroupWord):
        for g, e in w.letters:
            if g == "a":
                self.push_a(e)
            else:
                step = 1 if e > 0 else -1
                for _ in range(abs(e)):
                    self.push_b(step)

    def freeze(self) -> CanonicalForm:
        return CanonicalForm(self.r[0], tuple(zip(self.es, self.r[1:])))


Element = Union[GroupWord, CanonicalForm]


def _as_word(g: Element) -> GroupWord:
    return g.word() if isinstance(g, CanonicalForm) else g


def canonical_form(w: Element, p: GroupParams) -> CanonicalForm:
    if isinstance(w, CanonicalForm):
        w = w.word()
    bld = _Builder(p)
    bld.push_word(w)
    return bld.freeze()


def multiply(g: Element, h: Element, p: GroupParams) -> CanonicalForm:
    """Canonical form of g*h."""
    if isinstance(g, CanonicalForm):
        bld = _Builder(p, g)
    else:
        bld = _Builder(p)
        bld.push_word(g)
    bld.push_word(_as_word(h))
    return bld.freeze()


def inverse(g: Element, p: GroupParams) -> CanonicalForm:
    return canonical_form(_as_word(g).inverse(), p)


def equals(g: Element, h: Element, p: GroupParams) -> bool:
    return canonical_form(g, p) == canonical_form(h, p)


def height(w: Element) -> int:
    if isinstance(w, CanonicalForm):
        return w.height
    return sum(e for g, e in w.letters if g == "b")


def alpha(w: Element, p: GroupParams) -> Fraction:
    """alpha(wa) = alpha(w) + (n/m)^||w||_b, alpha(wb) = alpha(w), alpha(e) = 0."""
    ratio = Fraction(p.n, p.m)
    h = 0
    acc = Fraction(0)
    for g, e in _as_word(w).letters:
        if g == "a":
            acc += e * ratio**h
        else:
            h += e
    return acc


def lambda_map(w: Element, p: GroupParams) -> Fraction:
    """lambda(g) = (1/m) (m/n)^||g||_b alpha(g)."""
    h = height(w)
    return Fraction(1, p.m) * Fraction(p.m, p.n) ** h * alpha(w, p)


def phi_embed(w: Element, p: GroupParams) -> tuple[Fraction, int]:
    return alpha(w, p), height(w)


def level_coordinates(g: CanonicalForm, p: GroupParams) -> tuple[tuple[int, ...], int]:
    """Split g as (level key, position) so that g a^j has the same key and position + j.

    The key is the normal form with residues pushed to the right instead:
    a^(nt+s) b = a^s b a^(mt) and a^(mt+s) b^-1 = a^s b^-1 a^(nt).
    """
    m, n = p.m, p.n
    s = [g.head] + [r for _, r in g.tail]
    es = [e for e, _ in g.tail]
    key: list[int] = []
    for i, e in enumerate(es):
        if e == 1:
            res = s[i] % abs(n)
            s[i + 1] += ((s[i] - res) // n) * m
        else:
            res = s[i] % abs(m)
            s[i + 1] += ((s[i] - res) // m) * n
        key.extend((res, e))
    return tuple(key), s[-1]


def quasi_normal_form_1n(w: Element, n: int) -> tuple[int, int, int]:
    """Write w in BS(1,n) as b^-k a^l b^m with k, m >= 0 and k + m minimal."""
    k, l, m = 0, 0, 0
    for g, e in _as_word(w).letters:
        if g == "a":
            # b^m a^j = a^(j n^m) b^m
            l += e * n**m
            continue
        for _ in range(abs(e)):
            if e > 0:
                m += 1
            elif m > 0:
                m -= 1
            else:
                # a^l b^-1 = b^-1 a^(l n)
                k += 1
                l *= n
    while k > 0 and m > 0 and l % n == 0:
        k, l, m = k - 1, l // n, m - 1
    return k, l, m


def qnf_word(k: int, l: int, m: int) -> GroupWord:
    return GroupWord((("b", -k), ("a", l), ("b", m)))


GENERATORS = (("a", 1), ("a", -1), ("b", 1), ("b", -1))
DEFAULT_MAX_RADIUS = 8
DEFAULT_MAX_NODES = 10**6


class BallTooLarge(InconclusiveError):
    pass


def _node_cap() -> int:
    env = os.environ.get("BS_MAX_NODES")
    return int(env) if env else DEFAULT_MAX_NODES


def ball_layers(p: GroupParams, radius: int, max_nodes: int | None = None) -> list[list[CanonicalForm]]:
    """Breadth-first spheres of the Cayley graph, sphere i at word distance exactly i."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if max_nodes is None:
        max_nodes = _node_cap()
    seen = {E}
    layers = [[E]]
    for _ in range(radius):
        nxt = []
        for g in layers[-1]:
            for gen, e in GENERATORS:
                bld = _Builder(p, g)
                if gen == "a":
                    bld.push_a(e)
                else:
                    bld.push_b(e)
                h = bld.freeze()
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > max_nodes:
                        raise BallTooLarge(
                            f"ball of radius {radius} in {p} exceeds {max_nodes} nodes"
                        )
        layers.append(nxt)
    return layers


def ball(p: GroupParams, radius: int, max_radius: int = DEFAULT_MAX_RADIUS,
         max_nodes: int | None = None) -> list[CanonicalForm]:
    """All elements at word distance <= radius, in BFS order."""
    if radius > max_radius:
        raise BallTooLarge(f"radius {radius} exceeds configured maximum {max_radius}")
    return [g for layer in ball_layers(p, radius, max_nodes) for g in layer]


def iter_level(g: CanonicalForm, p: GroupParams, lo: int, hi: int, step: int = 1) -> Iterator[CanonicalForm]:
    """g a^(step*t) for t = lo..hi."""
    for t in range(lo, hi + 1):
        bld = _Builder(p, g)
        bld.push_a(step * t)
        yield bld.freeze()

