"""Hilbert multiseries, multiplication maps and regularity classification."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import DEFAULT_PRIME, PolyRing, Polynomial, _normal_form, _Reducer, divides
from .errors import EmptyDegree, InhomogeneousInput, ZeroPolynomial
from .grading import MgrevlexOrder, WeightMatrix, enumerate_monomials, monomials_by_mdeg, poly_mdeg
from .modlinalg import check_prime_size, nullspace, rank, rref

VERDICTS = ("regular", "semi_regular", "weakly_regular", "none")


@dataclass
class TruncatedMultiseries:
    """Prefix of a k-variate power series; only degrees with d_1 <= bound are kept."""

    coefficients: dict
    bound: int

    def __post_init__(self):
        self.coefficients = {
            tuple(d): int(c) for d, c in self.coefficients.items() if c and d[0] <= self.bound
        }

    def __getitem__(self, d) -> int:
        return self.coefficients.get(tuple(d), 0)

    def __eq__(self, other):
        if not isinstance(other, TruncatedMultiseries):
            return NotImplemented
        return self.bound == other.bound and self.coefficients == other.coefficients

    def degrees(self) -> list:
        return sorted(self.coefficients)

    def times_one_minus(self, shift: Sequence[int]) -> TruncatedMultiseries:
        """Multiply by (1 - T^shift), truncated."""
        shift = tuple(shift)
        out = dict(self.coefficients)
        for d, c in self.coefficients.items():
            e = tuple(a + b for a, b in zip(d, shift))
            if e[0] <= self.bound:
                out[e] = out.get(e, 0) - c
        return TruncatedMultiseries(out, self.bound)

    def floored(self) -> TruncatedMultiseries:
        return TruncatedMultiseries(
            {d: c for d, c in self.coefficients.items() if c > 0}, self.bound
        )

    def format(self) -> str:
        lines = [f"{'degree':<16}coefficient"]
        for d in self.degrees():
            lines.append(f"{str(d):<16}{self.coefficients[d]}")
        return "\n".join(lines)


def hs_algebra(W: WeightMatrix, bound: int) -> TruncatedMultiseries:
    """Series of K[X] itself: the product of 1/(1 - T^{W_j}) over the columns."""
    W.require_positive_w1()
    coeffs = {(0,) * W.k: 1}
    for col in W.columns():
        nxt = defaultdict(int)
        for d, c in coeffs.items():
            e = d
            while e[0] <= bound:
                nxt[e] += c
                e = tuple(a + b for a, b in zip(e, col))
        coeffs = nxt
    return TruncatedMultiseries(coeffs, bound)


def hs_regular(W: WeightMatrix, gen_degrees: Sequence, bound: int) -> TruncatedMultiseries:
    s = hs_algebra(W, bound)
    for d in gen_degrees:
        s = s.times_one_minus(d)
    return s


def hs_semiregular(W: WeightMatrix, gen_degrees: Sequence, bound: int) -> TruncatedMultiseries:
    """Like :func:`hs_regular` but negative coefficients are zeroed after each factor."""
    s = hs_algebra(W, bound)
    for d in gen_degrees:
        s = s.times_one_minus(d).floored()
    return s


def _lms(G) -> list:
    if hasattr(G, "leading_monomials"):
        return list(G.leading_monomials())
    return [g.lm for g in G if g]


def hs_quotient_oracle(W: WeightMatrix, G, bound: int) -> TruncatedMultiseries:
    """Count standard monomials of a Gröbner basis degree by degree."""
    W.require_positive_w1()
    lms = _lms(G)
    coeffs = defaultdict(int)
    for d1 in range(bound + 1):
        for deg, mons in monomials_by_mdeg(W, d1).items():
            coeffs[deg] += sum(1 for m in mons if not any(divides(l, m) for l in lms))
    return TruncatedMultiseries(coeffs, bound)


# ---------------------------------------------------------------------------
# multiplication maps


def _standard(W: WeightMatrix, lms, d) -> tuple:
    return tuple(m for m in enumerate_monomials(W, mdeg=d) if not any(divides(l, m) for l in lms))


@dataclass(frozen=True)
class MultiplicationMap:
    """phi^(d): (A/I)_d -> (A/I)_{d + deg f}, f . g, in standard-monomial bases.

    Row r of ``matrix`` holds the coordinates of NF(f * source[r]).
    ``kernel`` is an echelonized basis of the kernel, as normal forms, so
    its leading monomials are pairwise distinct.
    """

    degree: tuple
    source: tuple
    target: tuple
    matrix: np.ndarray = field(repr=False)
    rank: int
    kernel: tuple

    @property
    def kernel_dim(self) -> int:
        return len(self.source) - self.rank

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0

    @property
    def surjective(self) -> bool:
        return self.rank == len(self.target)


def multiplication_map(
    W: WeightMatrix, G: Sequence[Polynomial], f: Polynomial, d: Sequence[int]
) -> MultiplicationMap:
    """Matrix of multiplication by ``f`` from degree ``d``, modulo the ideal with Gröbner basis G."""
    ring = f.ring
    p = ring.p
    G = [g for g in G if g]
    fdeg = poly_mdeg(W, f)
    if fdeg is None:
        raise InhomogeneousInput("multiplier must be non-zero and W-homogeneous")
    d = tuple(d)
    lms = [g.lm for g in G]
    # descending order makes rref pivots the leading monomials of the kernel rows
    source = tuple(sorted(_standard(W, lms, d), key=ring.order.key, reverse=True))
    target = _standard(W, lms, tuple(a + b for a, b in zip(d, fdeg)))
    col = {m: j for j, m in enumerate(target)}
    M = np.zeros((len(source), len(target)), dtype=np.int64)
    red = _Reducer(G) if G else None
    for r, s in enumerate(source):
        h = f.mul_monomial(s)
        if red is not None:
            h = _normal_form(h, red)
        for m, c in h.terms:
            M[r, col[m]] = c
    rk = rank(M, p) if M.size else 0
    kernel = ()
    if len(source) > rk:
        K = nullspace(M.T, p) if len(target) else np.eye(len(source), dtype=np.int64)
        K, _ = rref(K, p)
        kernel = tuple(
            Polynomial(ring, [(source[j], int(c)) for j, c in enumerate(row) if c], _sorted=True)
            for row in K
        )
    return MultiplicationMap(d, source, target, M, rk, kernel)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Witness:
    index: int
    degree: tuple
    source_dim: int
    target_dim: int
    rank: int
    kernel_dim: int
    injective: bool
    surjective: bool
    kernel_lms: tuple
    classification: str  # injective | semi_trivial | eliminable | not_eliminable


@dataclass(frozen=True)
class RegularityReport:
    verdict: str
    bound: int
    witnesses: tuple

    def at_least(self, level: str) -> bool:
        return VERDICTS.index(self.verdict) <= VERDICTS.index(level)

    @property
    def is_regular(self) -> bool:
        return self.at_least("regular")

    @property
    def is_semi_regular(self) -> bool:
        return self.at_least("semi_regular")

    @property
    def is_weakly_regular(self) -> bool:
        return self.at_least("weakly_regular")

    def defects(self) -> list:
        return [w for w in self.witnesses if w.kernel_dim]

    def summary(self) -> str:
        return f"{self.verdict} (up to bound {self.bound})"

    def format(self) -> str:
        lines = [self.summary()]
        bad = self.defects()
        if bad:
            lines.append(f"{'i':>3}  {'degree':<14}{'src':>5}{'tgt':>5}{'rank':>6}{'ker':>5}  class")
            for w in bad:
                lines.append(
                    f"{w.index:>3}  {str(w.degree):<14}{w.source_dim:>5}{w.target_dim:>5}"
                    f"{w.rank:>6}{w.kernel_dim:>5}  {w.classification}"
                )
        return "\n".join(lines)


def ideal_basis(W: WeightMatrix, F: Sequence[Polynomial], bound: int) -> list:
    """Reduced Gröbner basis of <F>, truncated at W_1-degree ``bound``."""
    from .steps import truncated_groebner

    if not F:
        return []
    G, _ = truncated_groebner(F, W, bound)
    return G.reduced()


def classify_sequence(W: WeightMatrix, F: Sequence[Polynomial], bound: int) -> RegularityReport:
    """Inspect every phi_i^(d) with (d + d_i)_1 <= bound and classify its kernel.

    A kernel element counts as semi-trivial when its map is surjective and as
    eliminable when its leading monomial is divisible by the leading monomial
    of a semi-trivial divisor for the same i. Divisors are represented by
    their normal forms, so trivial divisors never show up.
    """
    W.require_positive_w1()
    degrees = []
    for f in F:
        if not f:
            raise ZeroPolynomial("sequence contains the zero polynomial")
        d = poly_mdeg(W, f)
        if d is None:
            raise InhomogeneousInput("every polynomial must be W-homogeneous")
        degrees.append(d)

    witnesses = []
    level = 0
    for i in range(2, len(F) + 1):
        di = degrees[i - 1]
        G = ideal_basis(W, F[: i - 1], bound)
        maps = []
        for d1 in range(bound - di[0] + 1):
            for d in monomials_by_mdeg(W, d1):
                maps.append(multiplication_map(W, G, F[i - 1], d))
        semi = [k.lm for mp in maps if mp.kernel and mp.surjective for k in mp.kernel]
        for mp in maps:
            klms = tuple(k.lm for k in mp.kernel)
            if mp.injective:
                cls = "injective"
            elif mp.surjective:
                cls, level = "semi_trivial", max(level, 1)
            elif all(any(divides(s, m) for s in semi) for m in klms):
                cls, level = "eliminable", max(level, 2)
            else:
                cls, level = "not_eliminable", 3
            witnesses.append(
                Witness(i, mp.degree, len(mp.source), len(mp.target), mp.rank,
                        mp.kernel_dim, mp.injective, mp.surjective, klms, cls)
            )
    return RegularityReport(VERDICTS[level], bound, tuple(witnesses))


# ---------------------------------------------------------------------------
# sampling


def random_system(
    W: WeightMatrix, gen_degrees: Sequence, seed: int, p: int = DEFAULT_PRIME
) -> list:
    """Monic random polynomials with full support at each requested W-degree."""
    W.require_positive_w1()
    check_prime_size(p)
    ring = PolyRing(W.n, p, MgrevlexOrder(W))
    rng = np.random.default_rng(seed)
    out = []
    for d in gen_degrees:
        mons = enumerate_monomials(W, mdeg=tuple(d))
        if not mons:
            raise EmptyDegree(f"no monomial of W-degree {tuple(d)}")
        coeffs = rng.integers(0, p, size=len(mons))
        while not coeffs.any():
            coeffs = rng.integers(0, p, size=len(mons))
        out.append(ring.poly(zip(mons, (int(c) for c in coeffs))).monic())
    return out


def series_table(series: dict) -> str:
    """Side-by-side table of several series sharing a bound."""
    names = list(series)
    degs = sorted(set().union(*(s.coefficients for s in series.values())))
    lines = [f"{'degree':<16}" + "".join(f"{n:>14}" for n in names)]
    for d in degs:
        lines.append(f"{str(d):<16}" + "".join(f"{series[n][d]:>14}" for n in names))
    return "\n".join(lines)


def recurrence_holds(W: WeightMatrix, F: Sequence[Polynomial], bound: int) -> list:
    """Check c_{d+d_i,i} = c_{d+d_i,i-1} - c_{d,i-1} + dim ker phi_i^(d).

    Returns the list of (i, d) where it fails; empty means it held everywhere.
    """
    bases = [ideal_basis(W, F[:i], bound) for i in range(len(F) + 1)]
    series = [hs_quotient_oracle(W, G, bound) for G in bases]
    bad = []
    for i in range(1, len(F) + 1):
        di = poly_mdeg(W, F[i - 1])
        for d1 in range(bound - di[0] + 1):
            for d in monomials_by_mdeg(W, d1):
                e = tuple(a + b for a, b in zip(d, di))
                mp = multiplication_map(W, bases[i - 1], F[i - 1], d)
                if series[i][e] != series[i - 1][e] - series[i - 1][d] + mp.kernel_dim:
                    bad.append((i, d))
    return bad
