"""Uniform substitutions on {0, 1}, pointed biinfinite words, fixpoints and factor complexity.

sigma_r(0) = 0^(n-r-1) 1 0^r and sigma_r(1) = 0^n.  A substitution acts on a
pointed word by sending the letter at position j to positions nj..nj+n-1, so
the image of the letter at position 0 starts at position 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .errors import InconclusiveError

ALPHABET = (0, 1)


@dataclass(frozen=True)
class UniformSubstitution:
    n: int
    images: tuple[tuple[int, ...], tuple[int, ...]]   # images[c] = s(c)
    name: str = ""

    def __post_init__(self):
        imgs = tuple(tuple(w) for w in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != 2 or any(len(w) != self.n for w in imgs):
            raise ValueError(f"both images must have length {self.n}")

    def __call__(self, word: Sequence[int]) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.images[c] for c in word))

    def compose(self, inner: "UniformSubstitution") -> "UniformSubstitution":
        """self o inner."""
        return UniformSubstitution(self.n * inner.n, (self(inner.images[0]), self(inner.images[1])),
                                   f"{self.name}o{inner.name}" if self.name and inner.name else "")

    def __str__(self):
        w0 = "".join(map(str, self.images[0]))
        w1 = "".join(map(str, self.images[1]))
        return f"0 -> {w0}, 1 -> {w1}"


def sigma(n: int, r: int) -> UniformSubstitution:
    if n < 2:
        raise ValueError("substitution size must be >= 2")
    if not 0 <= r < n:
        raise ValueError(f"shift index r={r} must lie in 0..{n - 1}")
    zero = tuple(1 if i == n - r - 1 else 0 for i in range(n))
    return UniformSubstitution(n, (zero, (0,) * n), f"sigma_{r}")


def composite(n: int, indices: Sequence[int]) -> UniformSubstitution:
    """sigma_{i_k} o ... o sigma_{i_1} for indices = (i_1, ..., i_k)."""
    if not indices:
        raise ValueError("need at least one factor")
    s = sigma(n, indices[0])
    for r in indices[1:]:
        s = sigma(n, r).compose(s)
    return s


@dataclass(frozen=True)
class PointedWord:
    """Letters at positions start .. start + len(letters) - 1 of a biinfinite word."""

    start: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def from_sides(cls, left: Sequence[int], right: Sequence[int]) -> "PointedWord":
        return cls(-len(left), tuple(left) + tuple(right))

    @property
    def stop(self) -> int:
        return self.start + len(self.letters)

    @property
    def left(self) -> tuple[int, ...]:
        return self.letters[:max(0, min(len(self.letters), -self.start))]

    @property
    def right(self) -> tuple[int, ...]:
        return self.letters[max(0, -self.start):]

    def __getitem__(self, i: int) -> int:
        if not self.start <= i < self.stop:
            raise IndexError(f"position {i} outside window [{self.start}, {self.stop})")
        return self.letters[i - self.start]

    def __len__(self):
        return len(self.letters)

    def restrict(self, lo: int, hi: int) -> "PointedWord":
        lo, hi = max(lo, self.start), min(hi, self.stop)
        if lo >= hi:
            return PointedWord(0, ())
        return PointedWord(lo, self.letters[lo - self.start:hi - self.start])

    def shift(self, j: int) -> "PointedWord":
        """rho^j: (rho^j u)_i = u_(i+j)."""
        return PointedWord(self.start - j, self.letters)

    def __str__(self):
        if not self.start <= 0 <= self.stop:
            raise ValueError("origin outside the window cannot be marked")
        return "".join(map(str, self.left)) + "|" + "".join(map(str, self.right))


def parse_pointed(text: str) -> PointedWord:
    left, sep, right = text.partition("|")
    if not sep:
        left, right = "", text
    return PointedWord.from_sides([int(c) for c in left], [int(c) for c in right])


def apply_pointed(s: UniformSubstitution, u: PointedWord) -> PointedWord:
    return PointedWord(s.n * u.start, s(u.letters))


# --- fixpoints -----------------------------------------------------------

class NoFixpoint(ValueError):
    pass


def fixpoint_seeds(s: UniformSubstitution) -> list[tuple[int, int]]:
    """(left, right) seed letters: s(right) starts with right and s(left) ends with left."""
    rights = [c for c in ALPHABET if s.images[c][0] == c]
    lefts = [c for c in ALPHABET if s.images[c][-1] == c]
    return [(cl, cr) for cl in lefts for cr in rights]


def _grow(s: UniformSubstitution, left: int, right: int, half_length: int) -> PointedWord:
    w = PointedWord(-1, (left, right))
    while -w.start < half_length or w.stop < half_length:
        w = apply_pointed(s, w)
    return w.restrict(-half_length, half_length)


def fixpoint_window(n: int, half_length: int) -> PointedWord:
    """Positions -L..L-1 of the unique fixpoint of sigma_1 (n >= 3)."""
    if n == 2:
        raise ValueError("sigma_1 has no fixpoint for n = 2; use fixpoint2_windows")
    if n < 2:
        raise ValueError("substitution size must be >= 2")
    return _grow(sigma(n, 1), 0, 0, half_length)


def fixpoint2_windows(half_length: int) -> tuple[PointedWord, PointedWord]:
    """The two fixpoints u (u_0 = 0) and v (v_0 = 1) of sigma_1^2 for n = 2."""
    s1 = sigma(2, 1)
    s2 = s1.compose(s1)
    return _grow(s2, 0, 0, half_length), _grow(s2, 0, 1, half_length)


def fixpoint_windows(s: UniformSubstitution, half_length: int) -> list[PointedWord]:
    seeds = fixpoint_seeds(s)
    if not seeds:
        raise NoFixpoint(f"no seed letter for {s}")
    return [_grow(s, cl, cr, half_length) for cl, cr in seeds]


def lazy_fixpoint(s: UniformSubstitution, left: int, right: int) -> Callable[[int], int]:
    """Letter lookup w_i = s(w_(i div N))_(i mod N) with w_0 = right and w_-1 = left."""
    N = s.n
    if s.images[right][0] != right or s.images[left][-1] != left:
        raise NoFixpoint(f"({left}, {right}) is not a seed pair for {s}")

    @lru_cache(maxsize=None)
    def w(i: int) -> int:
        if i == 0:
            return right
        if i == -1:
            return left
        return s.images[w(i // N)][i % N]

    return w


# --- factor complexity ---------------------------------------------------

@dataclass(frozen=True)
class ComplexityProfile:
    counts: tuple[int, ...]         # counts[k-1] = P(k)
    window: int = 0                 # length of the window the counts come from
    iterations: int = 0             # substitution steps until stabilization (0 when not iterated)

    def P(self, k: int) -> int:
        return self.counts[k - 1]


def factor_sets(letters: Sequence[int], max_len: int) -> list[frozenset]:
    text = "".join(map(str, letters))
    out = []
    for k in range(1, max_len + 1):
        out.append(frozenset(text[i:i + k] for i in range(len(text) - k + 1)))
    return out


def factor_complexity(w: PointedWord | Sequence[int], max_len: int) -> ComplexityProfile:
    """Exact counts of distinct factors of each length 1..max_len inside the window."""
    letters = w.letters if isinstance(w, PointedWord) else tuple(w)
    if max_len > len(letters):
        raise ValueError(f"window of length {len(letters)} has no factors of length {max_len}")
    return ComplexityProfile(tuple(len(f) for f in factor_sets(letters, max_len)), len(letters))


class ComplexityInconclusive(InconclusiveError):
    pass


def stable_complexity(s: UniformSubstitution, max_len: int, seed: tuple[int, int] | None = None,
                      max_iter: int = 40, max_window: int = 10**7) -> ComplexityProfile:
    """Complexity of a fixpoint of s, iterating until the factor sets stop changing.

    The window after step t is s^t(left . right); counts are reported once the
    factors of length <= max_len agree between two consecutive steps.
    """
    if seed is None:
        seeds = fixpoint_seeds(s)
        if not seeds:
            raise NoFixpoint(f"no seed letter for {s}")
        seed = seeds[0]
    w = PointedWord(-1, seed)
    prev = None
    for t in range(max_iter + 1):
        if len(w) >= max_len:
            cur = factor_sets(w.letters, max_len)
            if cur == prev:
                return ComplexityProfile(tuple(len(f) for f in cur), len(w), t)
            prev = cur
        nxt = apply_pointed(s, w)
        if len(nxt) > max_window:
            break
        w = nxt
    raise ComplexityInconclusive(f"factors of length <= {max_len} still changing "
                                 f"at window length {len(w)}")


def is_k_periodic(w: PointedWord | Sequence[int], k: int) -> bool:
    letters = w.letters if isinstance(w, PointedWord) else tuple(w)
    if k < 1:
        raise ValueError("period must be >= 1")
    if len(letters) < 2 * k:
        raise ValueError(f"window of length {len(letters)} is too short to test period {k}")
    return all(letters[i + k] == letters[i] for i in range(len(letters) - k))


def period_witness(letters: Sequence[int], k: int) -> int | None:
    """First index i with letters[i + k] != letters[i], or None."""
    for i in range(len(letters) - k):
        if letters[i + k] != letters[i]:
            return i
    return None
