"""Plain-text system files.

::

    # comment
    p 65521
    vars 3
    weights 2
    1 1 1
    1 2 3
    gen 1 2 2 0; 1 3 0 1
    gen 1 2 2 0; -1 3 0 1
    dmax 20

A term is ``c e1 .. en``; ``c * (e1, .., en)`` is accepted as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from sympy import isprime

from .algebra import PolyRing, Polynomial
from .errors import MwgbError, ParseError, ValidationError
from .grading import MgrevlexOrder, WeightMatrix
from .modlinalg import MAX_PRIME

_STAR = re.compile(r"^\s*(\S+)\s*\*\s*\((.*)\)\s*$")


@dataclass(frozen=True)
class SystemFile:
    p: int
    n: int
    weights: WeightMatrix
    generators: tuple  # each a tuple of (coefficient, exponents)
    dmax: int | None = None

    @property
    def k(self) -> int:
        return self.weights.k

    def ring(self) -> PolyRing:
        return PolyRing(self.n, self.p, MgrevlexOrder(self.weights))

    def polynomials(self) -> list:
        R = self.ring()
        return [Polynomial(R, [(e, c) for c, e in g]) for g in self.generators]

    @classmethod
    def from_polynomials(cls, W: WeightMatrix, F: Sequence[Polynomial], p: int, dmax=None):
        gens = tuple(tuple((c, m) for m, c in f.terms) for f in F)
        return cls(p, W.n, W, gens, dmax)


def _int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line, col) from None


def _tokens(s: str, offset: int) -> list:
    """Whitespace-separated tokens with their 1-based columns."""
    return [(m.group(), m.start() + offset + 1) for m in re.finditer(r"\S+", s)]


def _parse_term(text: str, start: int, n: int, p: int, lineno: int) -> tuple:
    m = _STAR.match(text)
    if m:
        c = _int(m.group(1), lineno, start + m.start(1) + 1)
        inner = m.group(2)
        exps = [
            _int(t.strip(), lineno, start + m.start(2) + 1)
            for t in re.split(r"[,\s]+", inner.strip())
            if t.strip()
        ]
    else:
        toks = _tokens(text, start)
        if not toks:
            raise ParseError("empty term", lineno, start + 1)
        c = _int(toks[0][0], lineno, toks[0][1])
        exps = [_int(t, lineno, col) for t, col in toks[1:]]
    if len(exps) != n:
        raise ParseError(f"term has {len(exps)} exponents, expected {n}", lineno, start + 1)
    if any(e < 0 for e in exps):
        raise ParseError("negative exponent", lineno, start + 1)
    return c % p, tuple(exps)


def parse_system(text: str) -> SystemFile:
    lines = []
    for i, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            lines.append((i, body))

    pos = 0

    def header(word):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"missing '{word}' line", len(text.splitlines()) or 1)
        i, body = lines[pos]
        toks = _tokens(body, 0)
        if toks[0][0] != word or len(toks) != 2:
            raise ParseError(f"expected '{word} <integer>'", i, toks[0][1])
        pos += 1
        return _int(toks[1][0], i, toks[1][1]), i

    p, pline = header("p")
    n, nline = header("vars")
    k, kline = header("weights")
    if n < 1:
        raise ValidationError(f"vars must be positive (line {nline})")
    if k < 1:
        raise ValidationError(f"weights must be positive (line {kline})")
    if p >= MAX_PRIME:
        raise ValidationError(f"p = {p} is not below 2^31 (line {pline})")
    if not isprime(p):
        raise ValidationError(f"p = {p} is not prime (line {pline})")

    rows = []
    for _ in range(k):
        if pos >= len(lines):
            raise ParseError(f"expected {k} weight rows", kline)
        i, body = lines[pos]
        toks = _tokens(body, 0)
        if len(toks) != n:
            raise ParseError(f"weight row has {len(toks)} entries, expected {n}", i, 1)
        rows.append([_int(t, i, c) for t, c in toks])
        pos += 1
    try:
        W = WeightMatrix(rows)
    except MwgbError as exc:
        raise ValidationError(f"weight matrix: {exc}") from exc

    ring = PolyRing(n, p, MgrevlexOrder(W))
    gens, dmax = [], None
    for i, body in lines[pos:]:
        stripped = body.lstrip()
        indent = len(body) - len(stripped)
        word = stripped.split(None, 1)[0]
        if word == "gen":
            rest_start = indent + 3
            rest = body[rest_start:]
            terms, start = [], rest_start
            for piece in rest.split(";"):
                if piece.strip():
                    terms.append(_parse_term(piece, start, n, p, i))
                start += len(piece) + 1
            f = Polynomial(ring, [(e, c) for c, e in terms])
            if not f:
                raise ValidationError(f"generator on line {i} is zero modulo {p}")
            gens.append(tuple((c, m) for m, c in f.terms))
        elif word == "dmax":
            toks = _tokens(body, 0)
            if len(toks) != 2:
                raise ParseError("expected 'dmax <integer>'", i, toks[0][1])
            dmax = _int(toks[1][0], i, toks[1][1])
            if dmax < 0:
                raise ValidationError(f"dmax must be non-negative (line {i})")
        else:
            raise ParseError(f"unknown directive {word!r}", i, indent + 1)
    return SystemFile(p, n, W, tuple(gens), dmax)


def emit_system(sf: SystemFile) -> str:
    out = [f"p {sf.p}", f"vars {sf.n}", f"weights {sf.k}"]
    out += [" ".join(map(str, r)) for r in sf.weights.rows]
    for g in sf.generators:
        out.append(format_generator(g))
    if sf.dmax is not None:
        out.append(f"dmax {sf.dmax}")
    return "\n".join(out) + "\n"


def format_generator(terms) -> str:
    return "gen " + "; ".join(" ".join(map(str, (c,) + tuple(e))) for c, e in terms)


def format_polynomial(f: Polynomial) -> str:
    return format_generator([(c, m) for m, c in f.terms])
