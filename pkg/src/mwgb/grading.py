"""Matrix gradings: weight matrices, W-degrees, the W-Mgrevlex order, and
monomial enumeration at a prescribed degree.

Everything rational is done with :class:`fractions.Fraction`; the matrices
involved are tiny (k, n below ten), so exactness costs nothing.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import Monomial, Polynomial
from .errors import DimensionMismatch, NonPositiveW1, RankDeficient, UnboundedEnumeration


# ---------------------------------------------------------------------------
# exact rational linear algebra


def rational_rref(rows: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    return len(rational_rref(rows)[1])


def _normalize_ineq(coeffs, rhs):
    """Scale a <= constraint so its first nonzero coefficient has |.| == 1."""
    for a in coeffs:
        if a != 0:
            s = abs(a)
            return tuple(x / s for x in coeffs), rhs / s
    return tuple(coeffs), rhs


def lp_feasible(
    ineqs: Sequence[tuple[Sequence, object]],
    eqs: Sequence[tuple[Sequence, object]] = (),
    nvars: int | None = None,
) -> bool:
    """Exact feasibility of {x in Q^n : a.x <= b for ineqs, a.x == b for eqs}.

    Equalities are eliminated by substitution, then Fourier–Motzkin
    elimination runs on the remaining inequalities.
    """
    if nvars is None:
        nvars = len((ineqs or eqs)[0][0])
    ineqs = [([Fraction(x) for x in a], Fraction(b)) for a, b in ineqs]
    if eqs:
        aug = [list(a) + [b] for a, b in eqs]
        R, piv = rational_rref(aug)
        if nvars in piv:
            return False  # 0 = nonzero
        free = [j for j in range(nvars) if j not in piv]
        new = []
        for a, b in ineqs:
            # x_p = R[p][-1] - sum_f R[p][f] x_f
            coeffs = [a[f] for f in free]
            rhs = b
            for row, pc in zip(R, piv):
                cp = a[pc]
                if cp == 0:
                    continue
                rhs -= cp * row[-1]
                for t, f in enumerate(free):
                    coeffs[t] -= cp * row[f]
            new.append((coeffs, rhs))
        ineqs = new
        nvars = len(free)

    system = {_normalize_ineq(a, b) for a, b in ineqs}
    for j in range(nvars):
        pos, neg, keep = [], [], set()
        for a, b in system:
            if a[j] > 0:
                pos.append((a, b))
            elif a[j] < 0:
                neg.append((a, b))
            else:
                keep.add((a, b))
        for ap, bp in pos:
            for an, bn in neg:
                s, t = -an[j], ap[j]
                a = tuple(s * x + t * y for x, y in zip(ap, an))
                keep.add(_normalize_ineq(a, s * bp + t * bn))
        system = keep
        if any(all(x == 0 for x in a) and b < 0 for a, b in system):
            return False
    return all(b >= 0 for _, b in system)


# ---------------------------------------------------------------------------
# weight matrices


@dataclass(frozen=True)
class WeightMatrix:
    """k x n integer matrix of rank k; row i is the weight system W_{i+1}."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("weight matrix must be non-empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("weight matrix rows have different lengths")
        object.__setattr__(self, "rows", rows)
        if len(rows) > len(rows[0]):
            raise RankDeficient(f"k={len(rows)} exceeds n={len(rows[0])}")
        if rational_rank(rows) != len(rows):
            raise RankDeficient(f"weight matrix {rows} does not have rank {len(rows)}")

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def w1(self) -> tuple:
        return self.rows[0]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.n)]

    def mdeg(self, m: Monomial) -> tuple:
        if len(m) != self.n:
            raise DimensionMismatch(f"monomial has {len(m)} exponents, expected {self.n}")
        return tuple(sum(w * a for w, a in zip(r, m)) for r in self.rows)

    def w1_degree(self, m: Monomial) -> int:
        return sum(w * a for w, a in zip(self.rows[0], m))

    def has_positive_w1(self) -> bool:
        return all(w > 0 for w in self.rows[0])

    def require_positive_w1(self):
        if not self.has_positive_w1():
            raise NonPositiveW1(f"first weight row {self.rows[0]} is not positive")

    def transform(self, P: Sequence[Sequence[int]]) -> WeightMatrix:
        """Return P . W for a k x k integer matrix P."""
        return WeightMatrix(
            tuple(
                tuple(sum(P[i][t] * self.rows[t][j] for t in range(self.k)) for j in range(self.n))
                for i in range(len(P))
            )
        )


def mdeg(W: WeightMatrix, m: Monomial) -> tuple:
    return W.mdeg(m)


def poly_mdeg(W: WeightMatrix, f: Polynomial):
    """W-degree of a W-homogeneous polynomial, or None if f is zero or not homogeneous."""
    degs = {W.mdeg(m) for m, _ in f.terms}
    return degs.pop() if len(degs) == 1 else None


def w_homogeneous_decompose(W: WeightMatrix, f: Polynomial) -> dict:
    groups = defaultdict(list)
    for m, c in f.terms:
        groups[W.mdeg(m)].append((m, c))
    return {d: Polynomial(f.ring, ts, _sorted=True) for d, ts in groups.items()}


def is_w_homogeneous(W: WeightMatrix, f: Polynomial) -> bool:
    return len(w_homogeneous_decompose(W, f)) <= 1


def are_equivalent(W1: WeightMatrix, W2: WeightMatrix) -> bool:
    if (W1.k, W1.n) != (W2.k, W2.n):
        raise DimensionMismatch("weight matrices have different shapes")
    return rational_rref(W1.rows)[0] == rational_rref(W2.rows)[0]


@dataclass(frozen=True)
class WeightProperties:
    positive: bool
    nonnegative: bool
    positive_type: bool
    size_bounded: bool


def is_positive_type(W: WeightMatrix) -> bool:
    # exists a in Q^k with (a W)_j >= 1 for every column j
    ineqs = [([-x for x in W.column(j)], -1) for j in range(W.n)]
    return lp_feasible(ineqs, nvars=W.k)


def is_size_bounded(W: WeightMatrix) -> bool:
    # no v >= 0 with sum(v) = 1 and W v = 0
    n = W.n
    ineqs = [([-1 if t == j else 0 for t in range(n)], 0) for j in range(n)]
    eqs = [([1] * n, 1)] + [(list(r), 0) for r in W.rows]
    return not lp_feasible(ineqs, eqs, nvars=n)


def weight_properties(W: WeightMatrix) -> WeightProperties:
    entries = [x for r in W.rows for x in r]
    return WeightProperties(
        positive=all(x > 0 for x in entries),
        nonnegative=all(x >= 0 for x in entries),
        positive_type=is_positive_type(W),
        size_bounded=is_size_bounded(W),
    )


# ---------------------------------------------------------------------------
# W-Mgrevlex


@dataclass(frozen=True)
class MgrevlexOrder:
    """Compare W-degrees lexicographically, break ties by revlex."""

    weights: WeightMatrix
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = self.weights.mdeg(m) + tuple(-e for e in reversed(m))
            self._cache[m] = k
        return k

    def degree(self, m: Monomial) -> int:
        return self.weights.w1_degree(m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def mgrevlex_cmp(W: WeightMatrix, m1: Monomial, m2: Monomial) -> int:
    """-1, 0 or 1 as m1 is smaller than, equal to, or greater than m2."""
    return MgrevlexOrder(W).compare(m1, m2)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _weighted_compositions(weights: tuple, d: int) -> tuple:
    """All exponent vectors a >= 0 with sum(weights[j] * a[j]) == d (weights > 0)."""
    n = len(weights)
    out = []

    def rec(j, rest, acc):
        if j == n - 1:
            w = weights[j]
            if rest % w == 0:
                out.append(tuple(acc) + (rest // w,))
            return
        w = weights[j]
        for a in range(rest // w + 1):
            acc.append(a)
            rec(j + 1, rest - a * w, acc)
            acc.pop()

    if d >= 0:
        rec(0, d, [])
    return tuple(out)


def monomials_of_w1_degree(W: WeightMatrix, d: int) -> tuple:
    if not W.has_positive_w1():
        raise UnboundedEnumeration(f"first weight row {W.w1} is not positive")
    return _weighted_compositions(W.w1, d)


@lru_cache(maxsize=None)
def _grouped(W: WeightMatrix, d: int) -> dict:
    groups = defaultdict(list)
    for m in monomials_of_w1_degree(W, d):
        groups[W.mdeg(m)].append(m)
    order = MgrevlexOrder(W)
    return {
        deg: tuple(sorted(ms, key=order.key, reverse=True))
        for deg, ms in sorted(groups.items())
    }


def monomials_by_mdeg(W: WeightMatrix, d: int) -> dict:
    """Monomials of W_1-degree d grouped by full W-degree (keys in lex order,
    each group sorted decreasingly under W-Mgrevlex)."""
    return _grouped(W, d)


def enumerate_monomials(
    W: WeightMatrix, *, w1_degree: int | None = None, mdeg: Sequence[int] | None = None
) -> tuple:
    """All monomials of the given W_1-degree, or of the given full W-degree."""
    if (w1_degree is None) == (mdeg is None):
        raise ValueError("give exactly one of w1_degree / mdeg")
    if w1_degree is not None:
        return monomials_of_w1_degree(W, w1_degree)
    mdeg = tuple(mdeg)
    if len(mdeg) != W.k:
        raise DimensionMismatch(f"degree {mdeg} has length {len(mdeg)}, expected {W.k}")
    if not W.has_positive_w1():
        raise UnboundedEnumeration(f"first weight row {W.w1} is not positive")
    if mdeg[0] < 0:
        return ()
    return _grouped(W, mdeg[0]).get(mdeg, ())
