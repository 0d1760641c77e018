"""BS(n, n), its finite-index subgroup H = <a^n, a^i b a^-i> and the isomorphism H = Z x F_n.

a^n is central in BS(n, n), so a word a^c0 b^e1 a^c1 ... b^eN a^cN can be
rewritten as a^T (a^-C1 b^e1 a^C1) ... (a^-CN b^eN a^CN) with T the total
a-exponent and C_j the a-exponent to the right of the j-th b-letter.  Each
conjugate only depends on -C_j mod n, and T = p + n k with 0 <= p < n.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .group import GroupParams, GroupWord, equals


# --- the free group F_n on g_0 .. g_(n-1) ---------------------------------

def free_reduce(letters) -> tuple[tuple[int, int], ...]:
    stack: list[tuple[int, int]] = []
    for i, e in letters:
        if e not in (1, -1):
            raise ValueError(f"free letters carry exponent +-1, got {e}")
        if stack and stack[-1] == (i, -e):
            stack.pop()
        else:
            stack.append((i, e))
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(f"g{i}" if e == 1 else f"g{i}^-1" for i, e in self.letters)


_FREE_TOKEN = re.compile(r"g(\d+)(?:\^(-?\d+))?$")


def parse_free(text: str) -> FreeWord:
    """Space-separated ``g<i>`` or ``g<i>^<k>``; ``e`` or the empty string is the identity."""
    letters = []
    for tok in text.split():
        if tok == "e":
            continue
        mt = _FREE_TOKEN.match(tok)
        if mt is None:
            raise ValueError(f"bad free-group token {tok!r}")
        i = int(mt.group(1))
        k = int(mt.group(2)) if mt.group(2) is not None else 1
        letters.extend([(i, 1 if k > 0 else -1)] * abs(k))
    return FreeWord(tuple(letters))


@dataclass(frozen=True)
class ZxFn:
    k: int = 0
    w: FreeWord = FreeWord()

    def __mul__(self, other: "ZxFn") -> "ZxFn":
        return ZxFn(self.k + other.k, self.w * other.w)

    def inverse(self) -> "ZxFn":
        return ZxFn(-self.k, self.w.inverse())


def _check_n(n: int):
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")


def phi_iso(z: ZxFn, n: int) -> GroupWord:
    """(1, e) -> a^n and (0, g_i) -> a^i b a^-i."""
    _check_n(n)
    letters = [("a", n * z.k)]
    for i, e in z.w.letters:
        if not 0 <= i < n:
            raise ValueError(f"generator g{i} does not exist for n = {n}")
        letters += [("a", i), ("b", e), ("a", -i)]
    return GroupWord(tuple(letters))


# --- canonical forms in BS(n, n) ------------------------------------------

@dataclass(frozen=True)
class HForm:
    k: int
    syllables: tuple[tuple[int, int], ...]   # (i, e): a^i b^e a^-i

    def as_zxfn(self) -> ZxFn:
        return ZxFn(self.k, FreeWord(self.syllables))


@dataclass(frozen=True)
class BSnnForm:
    p: int
    h: HForm

    def word(self, n: int) -> GroupWord:
        return GroupWord.of(("a", self.p)) * phi_iso(self.h.as_zxfn(), n)

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.h.k,
                "syllables": [list(s) for s in self.h.syllables]}


def canonicalize_bsnn(w: GroupWord, n: int) -> BSnnForm:
    _check_n(n)
    raw = []
    after = 0
    for g, e in reversed(w.letters):
        if g == "a":
            after += e
        else:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                raw.append(((-after) % n, step))
    raw.reverse()
    total = sum(e for g, e in w.letters if g == "a")
    p = total % n
    return BSnnForm(p, HForm((total - p) // n, free_reduce(raw)))


def coset(w: GroupWord, n: int) -> int:
    _check_n(n)
    return sum(e for g, e in w.letters if g == "a") % n


class NotInSubgroup(ValueError):
    pass


def phi_inverse(w: GroupWord, n: int) -> ZxFn:
    form = canonicalize_bsnn(w, n)
    if form.p != 0:
        raise NotInSubgroup(f"word lies in the coset a^{form.p} H, not in H")
    return form.h.as_zxfn()


def h_generators(n: int) -> list[tuple[str, GroupWord]]:
    gens = [("a^n", GroupWord.of(("a", n)))]
    for i in range(n):
        gens.append((f"g{i}", phi_iso(ZxFn(0, FreeWord(((i, 1),))), n)))
    return gens


CONJUGATORS = (("a", GroupWord.of(("a", 1))), ("A", GroupWord.of(("a", -1))),
               ("b", GroupWord.of(("b", 1))), ("B", GroupWord.of(("b", -1))))


@dataclass(frozen=True)
class NormalityWitness:
    conjugator: str
    generator: str
    form: BSnnForm
    matches_group: bool     # the rebuilt form equals s h s^-1 in BS(n, n)

    @property
    def ok(self) -> bool:
        return self.form.p == 0 and self.matches_group


def normality_witnesses(n: int) -> list[NormalityWitness]:
    """s h s^-1 for every s in {a, a^-1, b, b^-1} and every generator h of H."""
    p = GroupParams(n, n)
    out = []
    for sname, s in CONJUGATORS:
        for hname, h in h_generators(n):
            conj = s * h * s.inverse()
            form = canonicalize_bsnn(conj, n)
            out.append(NormalityWitness(sname, hname, form, equals(form.word(n), conj, p)))
    return out


def residually_finite(m: int, n: int) -> bool:
    if m == 0 or n == 0:
        raise ValueError("BS(m, n) needs nonzero parameters")
    return abs(m) == 1 or abs(n) == 1 or abs(m) == abs(n)
