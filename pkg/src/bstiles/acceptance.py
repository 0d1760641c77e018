"""The ten end-to-end acceptance checks, runnable from the CLI and from pytest.

Each check returns a Result; randomized checks draw from random.Random(seed).
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import multiplying as ak
from . import bsnn, multsys, subst_tiles
from .group import (E, GroupParams, GroupWord, alpha, ball, canonical_form, height,
                    qnf_word, quasi_normal_form_1n, equals)
from .substitution import (apply_pointed, fixpoint2_windows, fixpoint_window, is_k_periodic,
                           PointedWord, sigma, stable_complexity)
from .wang import check_multiplies, verify_patch

BS23 = GroupParams(2, 3)


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number}: {self.name} ({self.seconds:.1f}s) {self.detail}"


def _random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 1000) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(math.ceil(lo * d), math.floor(hi * d)), d)


def _random_word(rng: random.Random, length: int) -> GroupWord:
    gens = (("a", 1), ("a", -1), ("b", 1), ("b", -1))
    return GroupWord(tuple(rng.choice(gens) for _ in range(length)))


# 1 -------------------------------------------------------------------------

def multiplying_property(seed: int = 0) -> Result:
    t0 = time.perf_counter()
    notes = []
    ok = True
    for q, lo, hi in ((Fraction(2), Fraction(1, 3), Fraction(1)), (Fraction(1, 3), Fraction(1), Fraction(2))):
        en = ak.enumerate_tileset(BS23, q, lo, hi)
        good = check_multiplies(en.tileset, q)
        ok &= good
        notes.append(f"tau_{{{q},[{lo},{hi}]}}: {len(en.tileset)} tiles, residual zero={good}")
    dt = time.perf_counter() - t0
    ok &= dt < 60
    return Result(1, "multiplying property", ok, "; ".join(notes), dt)


# 2 -------------------------------------------------------------------------

def orbit_configurations(seed: int = 0, samples: int = 20, radius: int = 5) -> Result:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    ys = ak.build_Ys(multsys.S0, BS23)
    bad = []
    for _ in range(samples):
        x0 = _random_rational(rng, Fraction(1, 3), Fraction(2))
        branch = ak.orbit_for_s0(x0, radius)
        branch.check(multsys.S0)
        x = ak.orbit_configuration(multsys.S0, branch, BS23, radius)
        v = verify_patch(x)
        w = ak.window_failures(x, ys.constraints)
        outside = sum(1 for t in x.tileset if t not in ys.tileset)
        if v or w or outside:
            bad.append(f"x0={x0}: {len(v)} violations, {len(w)} window failures, {outside} foreign tiles")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 300
    detail = f"{samples} orbits at radius {radius}, all valid" if not bad else "; ".join(bad[:3])
    return Result(2, "orbit configurations", ok, detail, dt)


# 3 -------------------------------------------------------------------------

def weak_period(seed: int = 0, radius: int = 4) -> Result:
    t0 = time.perf_counter()
    p = ak.WEAK_PERIOD
    nontrivial = canonical_form(p, BS23) != E
    a0 = alpha(p, BS23) == 0
    periodic = all(ak.weak_period_check(multsys.S0, ak.orbit_for_s0(x0, radius + 2), BS23, p, radius)
                   for x0 in (Fraction(1, 2), Fraction(5, 7), Fraction(1)))
    ok = nontrivial and a0 and periodic
    return Result(3, "weak period", ok,
                  f"invariant={periodic} nontrivial={nontrivial} alpha(p)=0: {a0}",
                  time.perf_counter() - t0)


# 4 -------------------------------------------------------------------------

def proof_identities(seed: int = 0, trials: int = 10**4) -> Result:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    m, n = BS23.m, BS23.n
    qs = [Fraction(2), Fraction(1, 3), Fraction(3, 2), Fraction(5, 7)]
    fails = 0
    for _ in range(trials):
        g = canonical_form(_random_word(rng, rng.randint(0, 5)), BS23)
        x = _random_rational(rng, Fraction(-3), Fraction(3))
        q = rng.choice(qs)
        here = ak.ak_tile(BS23, q, g, x)
        if ak.ak_tile(BS23, q, g.word() * GroupWord.of(("a", m)), x).left != here.right:
            fails += 1
        for j in range(1, m + 1):
            for p in range(1, n + 1):
                up = g.word() * GroupWord.of(("a", j - p), ("b", 1))
                if ak.ak_tile(BS23, q, up, x / q).bottom[p - 1] != here.top[j - 1]:
                    fails += 1
    return Result(4, "horizontal and vertical identities", fails == 0,
                  f"{trials} random (g, x), {fails} failures", time.perf_counter() - t0)


# 5 -------------------------------------------------------------------------

def dynamics(seed: int = 0) -> Result:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    hits = multsys.periodic_point_search(multsys.S0, 200, 12)
    mismatches = 0
    for _ in range(100):
        x = _random_rational(rng, Fraction(0), Fraction(3), 60)
        for k in range(-6, 7):
            if multsys.iterate(multsys.S0, x, k) != multsys.iterate_bruteforce(multsys.S0, x, k):
                mismatches += 1
    residual = multsys.rotation_residual(10**4, seed)
    ok = not hits and mismatches == 0 and residual < 1e-9
    return Result(5, "dynamics of S0", ok,
                  f"periodic points={len(hits)} oracle mismatches={mismatches} "
                  f"rotation residual={residual:.2e}", time.perf_counter() - t0)


# 6 -------------------------------------------------------------------------

def _shift_identity_failures(rng: random.Random, windows: int = 100) -> int:
    fails = 0
    for _ in range(windows):
        n = rng.randint(2, 6)
        r = rng.randrange(n)
        s = sigma(n, r)
        u = PointedWord(-25, tuple(rng.randint(0, 1) for _ in range(50)))
        su = apply_pointed(s, u)
        for j in range(-20, 21):
            shifted = apply_pointed(s, u.shift(j))
            for i in range(n):
                if not (shifted[i] == s.images[u[j]][i] == su[n * j + i]):
                    fails += 1
        # sigma_r = rho^r o sigma_0
        s0u = apply_pointed(sigma(n, 0), u).shift(r)
        for i in range(su.start, su.stop):
            if s0u.start <= i < s0u.stop and s0u[i] != su[i]:
                fails += 1
    return fails


def substitutions(seed: int = 0) -> Result:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    shift_fails = _shift_identity_failures(rng)
    L = 3**7
    w = fixpoint_window(3, L)
    s1 = sigma(3, 1)
    image = apply_pointed(s1, w).restrict(-L, L)
    invariant = image == w
    u, v = fixpoint2_windows(L)
    t1 = sigma(2, 1)
    t2 = t1.compose(t1)
    pair_ok = (apply_pointed(t2, u).restrict(-L, L) == u and apply_pointed(t2, v).restrict(-L, L) == v
               and apply_pointed(t1, u).restrict(-L, L) == v and apply_pointed(t1, v).restrict(-L, L) == u)
    prof = stable_complexity(s1, 25)
    growth = all(prof.P(k) >= k + 1 for k in range(1, 26))
    aperiodic = not any(is_k_periodic(w, k) for k in range(1, 51))
    ok = shift_fails == 0 and invariant and pair_ok and growth and aperiodic
    return Result(6, "substitutions", ok,
                  f"shift failures={shift_fails} fixpoint invariant={invariant} n=2 pair={pair_ok} "
                  f"P(k)>=k+1 for k<=25: {growth} no period <=50: {aperiodic}",
                  time.perf_counter() - t0)


# 7 -------------------------------------------------------------------------

def tau_sigma_checks(seed: int = 0, pairs: int = 10**4) -> Result:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    sizes = all(len(subst_tiles.tau_sigma(n)) == 2 * n for n in range(2, 7))
    valid = all(not verify_patch(subst_tiles.explicit_patch(n, 5)) for n in (3, 4, 5))
    b = GroupWord.of(("b", 1))
    b_inv = all(subst_tiles.b_periodicity_check(subst_tiles.tile_builder(n), n, b, 5) for n in (3, 4, 5))
    build2 = subst_tiles.tile_builder(2)
    n2_valid = not verify_patch(subst_tiles.explicit_patch_n2(5))
    b2_inv = subst_tiles.b_periodicity_check(build2, 2, b**2, 5)
    witness = subst_tiles.periodicity_witness(build2, 2, b, 5)
    wd_fails = 0
    builders = {n: subst_tiles.tile_builder(n) for n in (2, 3, 4, 5)}
    for _ in range(pairs):
        n = rng.choice((2, 3, 4, 5))
        k, l, m = rng.randint(0, 4), rng.randint(-200, 200), rng.randint(0, 4)
        tt = rng.randint(1, 3)
        g1, g2 = qnf_word(k, l, m), qnf_word(k + tt, l * n**tt, m + tt)
        if builders[n](g1) != builders[n](g2):
            wd_fails += 1
    ok = sizes and valid and b_inv and n2_valid and b2_inv and witness is not None and wd_fails == 0
    return Result(7, "tau_sigma configurations", ok,
                  f"sizes={sizes} valid(n=3,4,5)={valid} b-invariant={b_inv} n=2 valid={n2_valid} "
                  f"b^2-invariant={b2_inv} b-counterexample={witness} "
                  f"well-definedness failures={wd_fails}", time.perf_counter() - t0)


# 8 -------------------------------------------------------------------------

MESKIN_TABLE = (
    ((1, 5), True), ((2, 3), False), ((-2, 2), True), ((1, 1), True), ((3, 3), True),
    ((2, 4), False), ((-1, 7), True), ((4, -1), True), ((5, -5), True), ((3, 2), False),
    ((2, 5), False), ((6, 6), True), ((-3, -3), True), ((1, -4), True), ((4, 6), False),
    ((-2, 3), False), ((7, 1), True), ((2, -2), True), ((3, 9), False), ((-6, 4), False),
)


def _random_zxfn(rng: random.Random, n: int) -> bsnn.ZxFn:
    letters = tuple((rng.randrange(n), rng.choice((1, -1))) for _ in range(rng.randint(0, 5)))
    return bsnn.ZxFn(rng.randint(-3, 3), bsnn.FreeWord(letters))


def bsnn_checks(seed: int = 0, pairs: int = 10**4) -> Result:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    hom_fails = trip_fails = 0
    for _ in range(pairs):
        n = rng.choice((2, 3, 4))
        p = GroupParams(n, n)
        z1, z2 = _random_zxfn(rng, n), _random_zxfn(rng, n)
        if not equals(bsnn.phi_iso(z1 * z2, n), bsnn.phi_iso(z1, n) * bsnn.phi_iso(z2, n), p):
            hom_fails += 1
        if bsnn.phi_inverse(bsnn.phi_iso(z1, n), n) != z1:
            trip_fails += 1
    normal = all(w.ok for n in (2, 3, 4) for w in bsnn.normality_witnesses(n))
    cosets = {n: len({bsnn.coset(g.word(), n) for g in ball(GroupParams(n, n), 4)}) for n in (2, 3, 4)}
    cosets_ok = all(c == n for n, c in cosets.items())
    meskin = all(bsnn.residually_finite(m, n) == want for (m, n), want in MESKIN_TABLE)
    ok = hom_fails == 0 and trip_fails == 0 and normal and cosets_ok and meskin
    return Result(8, "BS(n,n) subgroup", ok,
                  f"homomorphism failures={hom_fails} round-trip failures={trip_fails} "
                  f"normality={normal} cosets={cosets} residual finiteness table={meskin}",
                  time.perf_counter() - t0)


# 9 -------------------------------------------------------------------------

def _insert_relator(rng: random.Random, w: GroupWord, p: GroupParams) -> GroupWord:
    rel = GroupWord.of(("b", 1), ("a", p.m), ("b", -1), ("a", -p.n))
    conj = _random_word(rng, rng.randint(0, 3))
    piece = conj * (rel if rng.random() < 0.5 else rel.inverse()) * conj.inverse()
    if rng.random() < 0.3:
        x = _random_word(rng, 1)
        piece = piece * x * x.inverse()
    letters = [l for g, e in w.letters for l in [(g, 1 if e > 0 else -1)] * abs(e)]
    cut = rng.randint(0, len(letters))
    return GroupWord(tuple(letters[:cut])) * piece * GroupWord(tuple(letters[cut:]))


def group_layer(seed: int = 0, trials: int = 10**4) -> Result:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    nf_fails = qnf_fails = 0
    for p in (GroupParams(2, 3), GroupParams(1, 2)):
        for _ in range(trials):
            w = _random_word(rng, rng.randint(0, 8))
            if canonical_form(_insert_relator(rng, w, p), p) != canonical_form(w, p):
                nf_fails += 1
    for _ in range(trials):
        n = rng.choice((2, 3))
        p = GroupParams(1, n)
        w = _random_word(rng, rng.randint(0, 8))
        k, l, m = quasi_normal_form_1n(w, n)
        if not equals(qnf_word(k, l, m), w, p) or m - k != height(w):
            qnf_fails += 1
    ok = nf_fails == 0 and qnf_fails == 0
    return Result(9, "group layer", ok,
                  f"relator insertions: {nf_fails} failures; quasi-normal forms: {qnf_fails} failures",
                  time.perf_counter() - t0)


# 10 ------------------------------------------------------------------------

def balanced_representation(seed: int = 0, samples: int = 300) -> Result:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    worst = Fraction(0)
    fails = 0
    for _ in range(samples):
        x = _random_rational(rng, Fraction(-5), Fraction(5))
        z = _random_rational(rng, Fraction(-50), Fraction(50))
        N = rng.randint(1, 1000)
        avg = Fraction(sum(ak.balanced(x, z, j) for j in range(1, N + 1)), N)
        err = abs(avg - x)
        worst = max(worst, err * N)
        if err > Fraction(1, N):
            fails += 1
    return Result(10, "balanced representation", fails == 0,
                  f"{samples} samples, {fails} failures, worst N*|avg-x| = {worst}",
                  time.perf_counter() - t0)


CRITERIA = {
    1: multiplying_property,
    2: orbit_configurations,
    3: weak_period,
    4: proof_identities,
    5: dynamics,
    6: substitutions,
    7: tau_sigma_checks,
    8: bsnn_checks,
    9: group_layer,
    10: balanced_representation,
}


def run(numbers=None, seed: int = 0) -> list[Result]:
    numbers = sorted(CRITERIA) if numbers is None else numbers
    return [CRITERIA[k](seed=seed) for k in numbers]
