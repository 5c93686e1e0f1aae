"""Exact arithmetic over a prime field GF(p).

Monomials are plain tuples of exponents. Polynomials are immutable, sparse,
and keep their terms sorted in decreasing order under the ring's monomial
order. Coefficients are Python ints in ``range(p)``.

The Buchberger routine here is deliberately textbook and slow; it exists to
cross-check the matrix engine, never to replace it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from sympy import isprime

from .errors import NotDivisible, ValidationError, ZeroPolynomial

DEFAULT_PRIME = 65521

Monomial = tuple


# ---------------------------------------------------------------------------
# monomials


def mono_one(n: int) -> Monomial:
    return (0,) * n


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Return a / b, raising NotDivisible unless b divides a."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise NotDivisible(f"{b} does not divide {a}")
    return q


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True iff a divides b."""
    return all(x <= y for x, y in zip(a, b))


_MONO_OPS = {"mul": mono_mul, "quotient": mono_div, "gcd": mono_gcd, "lcm": mono_lcm}


def mono_arith(kind: str, m1: Monomial, m2: Monomial) -> Monomial:
    try:
        op = _MONO_OPS[kind]
    except KeyError:
        raise ValueError(f"unknown monomial operation {kind!r}") from None
    return op(m1, m2)


def mono_str(m: Monomial, names: Sequence[str] | None = None) -> str:
    parts = []
    for j, e in enumerate(m):
        if e:
            name = names[j] if names else f"X{j + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class GrevlexOrder:
    """Standard graded reverse lexicographic order."""

    def key(self, m: Monomial) -> tuple:
        return (sum(m),) + tuple(-e for e in reversed(m))

    def degree(self, m: Monomial) -> int:
        return sum(m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class PolyRing:
    """GF(p)[X1..Xn] with a fixed monomial order.

    ``order`` is any hashable object with ``key(m)`` (a sort key, increasing
    with the order) and ``degree(m)`` (the grading used for truncation).
    """

    nvars: int
    p: int = DEFAULT_PRIME
    order: object = GrevlexOrder()

    def __post_init__(self):
        if self.nvars < 0:
            raise ValidationError(f"nvars must be non-negative, got {self.nvars}")
        if not (2 < self.p < 2**31 and self.p % 2 and isprime(self.p)):
            raise ValidationError(f"p = {self.p} is not an odd prime below 2^31")

    def one(self) -> Polynomial:
        return Polynomial(self, [(mono_one(self.nvars), 1)])

    def zero(self) -> Polynomial:
        return Polynomial(self, ())

    def monomial(self, m: Monomial, c: int = 1) -> Polynomial:
        return Polynomial(self, [(tuple(m), c)])

    def variable(self, j: int) -> Polynomial:
        e = [0] * self.nvars
        e[j] = 1
        return self.monomial(tuple(e))

    def poly(self, terms) -> Polynomial:
        """Build a polynomial from ``{mono: coeff}`` or ``[(mono, coeff), ...]``."""
        if isinstance(terms, Mapping):
            terms = terms.items()
        return Polynomial(self, terms)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` is sorted by decreasing monomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Iterable = (), *, _sorted: bool = False):
        self.ring = ring
        if _sorted:
            self.terms = tuple(terms)
        else:
            self.terms = _normalize(ring, terms)
        self._hash = None

    # -- accessors
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def lm(self) -> Monomial:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def monomials(self) -> list:
        return [m for m, _ in self.terms]

    def to_dict(self) -> dict:
        return dict(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # -- arithmetic
    def __add__(self, other: Polynomial) -> Polynomial:
        _check_ring(self, other)
        acc = dict(self.terms)
        p = self.ring.p
        for m, c in other.terms:
            acc[m] = (acc.get(m, 0) + c) % p
        return Polynomial(self.ring, acc.items())

    def __neg__(self) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, [(m, p - c) for m, c in self.terms], _sorted=True)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, [(m, a * c % p) for m, a in self.terms], _sorted=True)

    def mul_monomial(self, mu: Monomial, c: int = 1) -> Polynomial:
        """Multiply by the term c*mu; term order is preserved."""
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            [(mono_mul(m, mu), a * c % p) for m, a in self.terms],
            _sorted=True,
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        _check_ring(self, other)
        acc: dict = {}
        p = self.ring.p
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                acc[m] = (acc.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, acc.items())

    __rmul__ = __mul__

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(pow(self.lc, -1, self.ring.p))

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.terms:
            ms = mono_str(m)
            if ms == "1":
                out.append(str(c))
            elif c == 1:
                out.append(ms)
            else:
                out.append(f"{c}*{ms}")
        return " + ".join(out)


def _check_ring(f: Polynomial, g: Polynomial):
    if f.ring != g.ring:
        raise ValueError("polynomials belong to different rings")


def _normalize(ring: PolyRing, terms) -> tuple:
    p = ring.p
    acc: dict = {}
    for m, c in terms:
        m = tuple(m)
        acc[m] = (acc.get(m, 0) + c) % p
    key = ring.order.key
    items = [(m, c) for m, c in acc.items() if c]
    items.sort(key=lambda t: key(t[0]), reverse=True)
    return tuple(items)


def poly_arith(kind: str, f: Polynomial, arg) -> Polynomial:
    if kind == "add":
        return f + arg
    if kind == "scale":
        return f.scale(arg)
    if kind == "mono_mul":
        return f.mul_monomial(tuple(arg))
    raise ValueError(f"unknown polynomial operation {kind!r}")


# ---------------------------------------------------------------------------
# S-polynomials and reduction


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if not f or not g:
        raise ZeroPolynomial("S-polynomial of a zero polynomial")
    _check_ring(f, g)
    p = f.ring.p
    lcm = mono_lcm(f.lm, g.lm)
    a = f.mul_monomial(mono_div(lcm, f.lm), pow(f.lc, -1, p))
    b = g.mul_monomial(mono_div(lcm, g.lm), pow(g.lc, -1, p))
    return a - b


class _Reducer:
    """Divisor list prepared once for repeated normal-form calls."""

    def __init__(self, G: Sequence[Polynomial]):
        self.items = []
        for g in G:
            if not g:
                raise ZeroPolynomial("cannot reduce by the zero polynomial")
            g = g.monic()
            self.items.append((g.lm, g.terms[1:]))

    def find(self, m):
        for lm, tail in self.items:
            if divides(lm, m):
                return lm, tail
        return None


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Fully reduce f modulo G (every term, not only the leading one)."""
    if not f or not G:
        return f
    return _normal_form(f, _Reducer(G))


def _normal_form(f: Polynomial, red: _Reducer) -> Polynomial:
    ring = f.ring
    p = ring.p
    key = ring.order.key
    work = dict(f.terms)
    heap = [(_neg(key(m)), m) for m in work]
    heapq.heapify(heap)
    rem = []
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        hit = red.find(m)
        if hit is None:
            rem.append((m, c))
            continue
        lm, tail = hit
        q = mono_div(m, lm)
        for t, a in tail:
            nm = mono_mul(t, q)
            old = work.get(nm)
            new = ((old or 0) - c * a) % p
            if new:
                work[nm] = new
                if old is None:
                    heapq.heappush(heap, (_neg(key(nm)), nm))
            elif old is not None:
                del work[nm]
    return Polynomial(ring, rem, _sorted=True)


def _neg(k: tuple) -> tuple:
    return tuple(-x for x in k)


def minimalize(G: Sequence[Polynomial]) -> list:
    """Drop elements whose leading monomial is divisible by another's."""
    if not G:
        return []
    key = G[0].ring.order.key
    out: list = []
    for g in sorted((g for g in G if g), key=lambda h: key(h.lm)):
        if not any(divides(h.lm, g.lm) for h in out):
            out.append(g)
    return out


def interreduce(G: Sequence[Polynomial]) -> list:
    """Reduced (minimal, monic, tail-reduced) basis, sorted by increasing LM."""
    mins = [g.monic() for g in minimalize(G)]
    out = []
    for i, g in enumerate(mins):
        others = mins[:i] + mins[i + 1:]
        tail = Polynomial(g.ring, g.terms[1:], _sorted=True)
        tail = normal_form(tail, others)
        out.append(Polynomial(g.ring, (g.terms[0],) + tail.terms, _sorted=True))
    return out


def leading_monomials(G: Iterable[Polynomial]) -> set:
    """Minimal generators of the monomial ideal spanned by the LMs of G."""
    return {g.lm for g in minimalize([g for g in G if g])}


# ---------------------------------------------------------------------------
# Buchberger (test oracle)


def buchberger_oracle(
    F: Sequence[Polynomial],
    *,
    degree_bound: int | None = None,
) -> list:
    """Reduced Gröbner basis of <F> by textbook Buchberger.

    With ``degree_bound`` the computation is truncated: critical pairs whose
    lcm has ``ring.order.degree`` above the bound are never formed, and the
    result keeps only elements of degree <= bound. This is exact for inputs
    homogeneous with respect to that grading.
    """
    F = [f for f in F if f]
    if not F:
        return []
    ring = F[0].ring
    order = ring.order
    deg = order.degree
    key = order.key

    if degree_bound is not None:
        F = [f for f in F if deg(f.lm) <= degree_bound]
    G: list = []
    pairs: list = []

    def add(h):
        h = h.monic()
        lh = h.lm
        t = len(G)
        # Buchberger's chain criterion on the queued pairs
        kept = []
        for item in pairs:
            _, _, i, j = item
            lij = mono_lcm(G[i].lm, G[j].lm)
            if (
                divides(lh, lij)
                and mono_lcm(G[i].lm, lh) != lij
                and mono_lcm(G[j].lm, lh) != lij
            ):
                continue
            kept.append(item)
        pairs[:] = kept
        G.append(h)
        for i in range(t):
            li = G[i].lm
            lcm = mono_lcm(li, lh)
            if lcm == mono_mul(li, lh):
                continue  # coprime leading monomials
            if degree_bound is not None and deg(lcm) > degree_bound:
                continue
            pairs.append((deg(lcm), key(lcm), i, t))
        heapq.heapify(pairs)

    for f in F:
        r = normal_form(f, G)
        if r:
            add(r)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        r = normal_form(s_polynomial(G[i], G[j]), G)
        if r:
            add(r)
    out = interreduce(G)
    if degree_bound is not None:
        out = [g for g in out if deg(g.lm) <= degree_bound]
    return out


def is_groebner(G: Sequence[Polynomial]) -> bool:
    G = [g for g in G if g]
    red = _Reducer(G)
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if _normal_form(s_polynomial(G[a], G[b]), red):
                return False
    return True
