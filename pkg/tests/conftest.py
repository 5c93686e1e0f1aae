"""Shared fixtures and independent helpers for the test suite."""

from __future__ import annotations

import itertools
import random

import pytest

from mwgb.algebra import PolyRing, Polynomial
from mwgb.grading import MgrevlexOrder, WeightMatrix, enumerate_monomials, monomials_by_mdeg
from mwgb.errors import RankDeficient


def ring_for(W: WeightMatrix, p: int = 101) -> PolyRing:
    return PolyRing(W.n, p, MgrevlexOrder(W))


def brute_monomials(weights, d):
    """Every exponent vector with sum(w*a) == d, by plain product search."""
    bounds = [range(d // w + 1) for w in weights]
    return {a for a in itertools.product(*bounds) if sum(w * x for w, x in zip(weights, a)) == d}


def gf_rank(rows, p):
    """Rank over GF(p) with Python ints only; independent of numpy code paths."""
    M = [[int(x) % p for x in r] for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def random_unimodular(k, rng: random.Random, steps: int = 6):
    """Product of random elementary integer matrices (determinant +-1)."""
    P = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(steps):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if k == 1 or rng.random() < 0.2:
            P[i] = [-x for x in P[i]]
        else:
            c = rng.choice([-2, -1, 1, 2])
            P[i] = [a + c * b for a, b in zip(P[i], P[j])]
    return P


def random_weights(rng: random.Random, n: int, k: int = 2, top: int = 3, top1: int = 2) -> WeightMatrix:
    while True:
        rows = [[rng.randint(1, top1) for _ in range(n)]]
        rows += [[rng.randint(0, top) for _ in range(n)] for _ in range(k - 1)]
        try:
            return WeightMatrix(rows)
        except RankDeficient:
            continue


def random_poly(ring: PolyRing, W: WeightMatrix, deg, rng: random.Random, density=1.0):
    mons = enumerate_monomials(W, mdeg=deg)
    terms = [(m, rng.randrange(1, ring.p)) for m in mons if rng.random() < density]
    if not terms:
        terms = [(rng.choice(mons), 1)]
    return Polynomial(ring, terms)


def random_small_system(seed: int, *, n_max=4, w1_max=6, p=101):
    """Random W-homogeneous system: k = 2, n <= n_max, generator W_1-degrees <= w1_max."""
    rng = random.Random(seed)
    n = rng.randint(3, n_max)
    W = random_weights(rng, n)
    R = ring_for(W, p)
    r = rng.randint(2, 3)
    F = []
    for _ in range(r):
        d1 = rng.randint(3, w1_max)
        groups = monomials_by_mdeg(W, d1)
        if not groups:
            continue
        most = max(len(ms) for ms in groups.values())
        deg = rng.choice([d for d, ms in groups.items() if len(ms) >= min(most, 3)])
        F.append(random_poly(R, W, deg, rng, density=0.8))
    if not F:
        F.append(R.variable(0))
    return W, F


@pytest.fixture
def rng():
    return random.Random(12345)


def random_homogeneous(ring: PolyRing, W: WeightMatrix, rng: random.Random, lo=1, hi=5):
    """Random W-homogeneous polynomial whose W_1-degree is drawn from [lo, hi]."""
    while True:
        mons = enumerate_monomials(W, w1_degree=rng.randint(lo, hi))
        if mons:
            return random_poly(ring, W, W.mdeg(rng.choice(mons)), rng)


class TwistedOrder:
    """Mgrevlex of ``W2`` for comparisons, W_1-degree of ``W`` for truncation.

    Lets the Buchberger oracle run under an equivalent weight matrix whose
    first row need not be positive.
    """

    def __init__(self, W2: WeightMatrix, W: WeightMatrix):
        self._cmp = MgrevlexOrder(W2)
        self._grading = W

    def key(self, m):
        return self._cmp.key(m)

    def degree(self, m):
        return self._grading.w1_degree(m)


def leading_set_under(W2, W, F, bound):
    """Leading monomials of <F> under W2-Mgrevlex, truncated at W_1-degree ``bound``."""
    from mwgb.algebra import buchberger_oracle, leading_monomials

    ring = PolyRing(W.n, F[0].ring.p, TwistedOrder(W2, W))
    moved = [Polynomial(ring, [(m, c) for m, c in f.terms]) for f in F]
    return leading_monomials(buchberger_oracle(moved, degree_bound=bound))
