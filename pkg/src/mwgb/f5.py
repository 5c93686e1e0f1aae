"""Structured Matrix-F5: run a precomputed list of steps, each a Macaulay
matrix labelled by signatures, and collect a truncated Gröbner basis.

The engine never decides which degrees to visit; that is the job of the
step generators in :mod:`mwgb.steps`. Steps sharing a first degree
coordinate form a batch. Inside a batch steps are independent and may run
on a thread pool; the shared basis and criterion data are only written at
batch boundaries, in step order, so results do not depend on the thread
count.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import (
    Monomial,
    PolyRing,
    Polynomial,
    divides,
    interreduce,
    leading_monomials,
    mono_div,
    mono_gcd,
    mono_str,
)
from .errors import InhomogeneousInput, MalformedStep
from .grading import MgrevlexOrder, WeightMatrix, poly_mdeg
from .modlinalg import PivotSpace, check_prime_size, dot_mod, rref


@dataclass(frozen=True)
class Signature:
    monomial: Monomial
    index: int  # 1-based generator index

    def __repr__(self):
        return f"({mono_str(self.monomial)}, {self.index})"


def signature_key(sig: Signature, order: MgrevlexOrder, degrees: Sequence[tuple]) -> tuple:
    """Sort key for degree-over-position-over-term."""
    d = tuple(a + b for a, b in zip(order.weights.mdeg(sig.monomial), degrees[sig.index - 1]))
    return (d, sig.index, order.key(sig.monomial))


def signature_cmp(s1: Signature, s2: Signature, W: WeightMatrix, degrees: Sequence[tuple]) -> int:
    order = MgrevlexOrder(W)
    k1, k2 = signature_key(s1, order, degrees), signature_key(s2, order, degrees)
    return (k1 > k2) - (k1 < k2)


@dataclass(frozen=True)
class Step:
    """One unit of work: a degree, its monomials, and the signatures to try.

    ``degree`` is a full W-degree, or a 1-tuple holding only the W_1-degree
    for the baseline strategy.
    """

    degree: tuple
    monomials: tuple
    signatures: tuple


@dataclass
class MacaulayMatrix:
    ring: PolyRing
    columns: tuple
    rows: np.ndarray
    signatures: list
    pivots: dict = field(default_factory=dict)  # column -> row

    @classmethod
    def build(cls, ring: PolyRing, columns: Sequence[Monomial], labelled: Iterable):
        """Dense matrix from ``(polynomial, signature)`` pairs, in the given row order."""
        columns = tuple(columns)
        index = {m: j for j, m in enumerate(columns)}
        rows, sigs = [], []
        for poly, sig in labelled:
            rows.append(_dense(poly, index, len(columns)))
            sigs.append(sig)
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), len(columns))
        return cls(ring, columns, arr, sigs)

    @property
    def shape(self):
        return self.rows.shape

    def polynomial(self, vec: np.ndarray) -> Polynomial:
        nz = np.flatnonzero(vec)
        return Polynomial(
            self.ring, [(self.columns[j], int(vec[j])) for j in nz], _sorted=True
        )


def _dense(poly: Polynomial, index: Mapping, ncols: int) -> np.ndarray:
    vec = np.zeros(ncols, dtype=np.int64)
    for m, c in poly.terms:
        j = index.get(m)
        if j is None:
            raise MalformedStep(f"row monomial {m} is not a column of the step")
        vec[j] = c
    return vec


@dataclass
class GBasis:
    ring: PolyRing
    elements: list  # (Polynomial, Signature | None)
    d_max: int | None = None

    def polynomials(self) -> list:
        return [g for g, _ in self.elements]

    def _truncated(self) -> list:
        deg = self.ring.order.degree
        return [g for g in self.polynomials() if self.d_max is None or deg(g.lm) <= self.d_max]

    def leading_monomials(self) -> set:
        """Minimal leading monomials of the truncated basis."""
        return leading_monomials(self._truncated())

    def reduced(self) -> list:
        return interreduce(self._truncated())


@dataclass
class RunStats:
    steps_total: int = 0
    steps_empty: int = 0
    steps_skipped_gcd: int = 0
    steps_processed: int = 0
    batches: int = 0
    matrices_total: int = 0
    max_matrices_per_batch: int = 0
    max_matrix_rows: int = 0
    max_matrix_cols: int = 0
    max_matrix_size: int = 0
    rows_total: int = 0
    reductions_to_zero_total: int = 0
    rank_defects: int = 0
    criteria_hits: dict = field(default_factory=lambda: {"f5": 0, "syzygy": 0, "gcd": 0})
    max_w1_degree_reached: int = 0

    def as_dict(self) -> dict:
        d = asdict(self)
        hits = d.pop("criteria_hits")
        for name, v in hits.items():
            d[f"criteria_hits_{name}"] = v
        return d


@dataclass(frozen=True)
class F5Config:
    use_f5: bool = True
    use_syzygy: bool = True
    use_gcd_filter: bool = True
    signature_tracking: bool = True


# ---------------------------------------------------------------------------
# criteria and row construction


def build_row(sig: Signature, elements: Iterable, order) -> tuple:
    """Return ((m/m') g, sig) for the element (g, (m', i)) with the largest
    admissible m' under ``order``."""
    best = None
    for g, s in elements:
        if s is None or s.index != sig.index or not divides(s.monomial, sig.monomial):
            continue
        if best is None or order.key(s.monomial) > order.key(best[1].monomial):
            best = (g, s)
    if best is None:
        raise MalformedStep(f"no basis element available for signature {sig}")
    g, s = best
    return g.mul_monomial(mono_div(sig.monomial, s.monomial)), sig


def f5_criterion(sig: Signature, prior_lms: Mapping) -> bool:
    """True iff sig.monomial is divisible by a known leading monomial of an
    earlier generator prefix (``prior_lms[j]`` for j < sig.index)."""
    m = sig.monomial
    for j, lms in prior_lms.items():
        if j < sig.index and any(divides(u, m) for u in lms):
            return True
    return False


def syzygy_criterion(sig: Signature, zero_signatures: Iterable[Signature]) -> bool:
    m = sig.monomial
    return any(z.index == sig.index and divides(z.monomial, m) for z in zero_signatures)


def gcd_step_filter(step: Step) -> bool:
    """True when every signature monomial of the step shares a common factor."""
    if not step.signatures:
        raise MalformedStep("gcd filter needs a non-empty signature set")
    g = step.signatures[0].monomial
    for s in step.signatures[1:]:
        g = mono_gcd(g, s.monomial)
        if not any(g):
            return False
    return any(g)


def echelonize_signature_preserving(M: MacaulayMatrix) -> tuple:
    """Row echelon form top to bottom without permutations.

    Every row is reduced only by rows above it. Rows that survive are made
    monic and become pivots. Returns (pivots as (Polynomial, Signature),
    signatures of rows reduced to zero); ``M.rows`` is overwritten with the
    reduced rows.
    """
    space = PivotSpace(len(M.columns), M.ring.p)
    pivots, zeros = [], []
    for i, sig in enumerate(M.signatures):
        r = space.insert(M.rows[i])
        if r is None:
            M.rows[i] = 0
            zeros.append(sig)
        else:
            M.rows[i] = r
            M.pivots[space.pivots[-1]] = i
            pivots.append((M.polynomial(r), sig))
    return pivots, zeros


def batch_by_d1(steps: Sequence[Step]) -> list:
    """Group consecutive-in-d_1 steps; batches come out by increasing d_1."""
    groups = defaultdict(list)
    for s in steps:
        groups[s.degree[0]].append(s)
    return [groups[d] for d in sorted(groups)]


# ---------------------------------------------------------------------------
# engine


@dataclass
class _Outcome:
    step: Step
    pivots: list = field(default_factory=list)  # (poly, sig | None, index)
    zero_sigs: list = field(default_factory=list)
    zero_count: int = 0
    nrows: int = 0
    ncols: int = 0
    rank: int = 0
    f5_hits: int = 0
    syz_hits: int = 0
    skipped: bool = False
    empty: bool = False
    trace: list = field(default_factory=list)


class _Engine:
    def __init__(self, F, W, config, d_max):
        self.W = W
        self.order = MgrevlexOrder(W)
        self.ring = F[0].ring
        if self.ring.order != self.order:
            raise ValueError("input ring must use the W-Mgrevlex order of W")
        check_prime_size(self.ring.p)
        self.config = config
        self.degrees = []
        for i, f in enumerate(F, 1):
            d = poly_mdeg(W, f) if f else None
            if d is None:
                raise InhomogeneousInput(f"generator {i} is zero or not W-homogeneous")
            self.degrees.append(d)
        self.F = [f.monic() for f in F]
        self.basis = [(f, Signature((0,) * W.n, i)) for i, f in enumerate(self.F, 1)]
        self.basis_lms = [f.lm for f in self.F]
        self.by_index = defaultdict(list)
        for g, s in self.basis:
            self.by_index[s.index].append((g, s))
        self.prior_lms = defaultdict(list)
        self.zero_sigs = defaultdict(list)
        self.stats = RunStats()
        self.d_max = d_max

    # -- validation
    def _project(self, d, target):
        return d if len(target) == self.W.k else d[: len(target)]

    def check_step(self, step: Step):
        if len(step.degree) not in (1, self.W.k):
            raise MalformedStep(f"step degree {step.degree} has wrong length")
        for m in step.monomials:
            if self._project(self.W.mdeg(m), step.degree) != tuple(step.degree):
                raise MalformedStep(f"monomial {m} does not have degree {step.degree}")
        for s in step.signatures:
            if not 1 <= s.index <= len(self.F):
                raise MalformedStep(f"signature index {s.index} out of range")
            d = tuple(a + b for a, b in zip(self.W.mdeg(s.monomial), self.degrees[s.index - 1]))
            if self._project(d, step.degree) != tuple(step.degree):
                raise MalformedStep(f"signature {s} does not have degree {step.degree}")

    # -- one step, reading shared state only
    def process(self, step: Step, trace: bool) -> _Outcome:
        out = _Outcome(step)
        cfg = self.config
        if not step.signatures:
            out.empty = True
            return out
        if cfg.use_gcd_filter and gcd_step_filter(step):
            out.skipped = True
            return out
        key = self.order.key
        sigs = sorted(step.signatures, key=lambda s: (s.index, key(s.monomial)))
        kept = []
        for sig in sigs:
            if cfg.use_f5 and f5_criterion(sig, self.prior_lms):
                out.f5_hits += 1
            elif cfg.signature_tracking and cfg.use_syzygy and syzygy_criterion(
                sig, self.zero_sigs.get(sig.index, ())
            ):
                out.syz_hits += 1
            else:
                kept.append(sig)
        if cfg.signature_tracking:
            labelled = [build_row(s, self.by_index[s.index], self.order) for s in kept]
        else:
            labelled = [
                (self.F[s.index - 1].mul_monomial(s.monomial), s) for s in kept
            ]
        if trace:
            out.trace = [(s, poly) for poly, s in labelled]
        M = MacaulayMatrix.build(self.ring, step.monomials, labelled)
        out.nrows, out.ncols = M.shape
        if cfg.signature_tracking:
            pivots, zeros = echelonize_signature_preserving(M)
            out.pivots = [(g, s, s.index) for g, s in pivots]
            out.zero_sigs = zeros
            out.zero_count = len(zeros)
        else:
            out.pivots, out.zero_count = _echelonize_by_index(M)
        out.rank = len(out.pivots)
        return out

    # -- merge at the batch barrier
    def merge(self, out: _Outcome):
        st = self.stats
        if out.empty:
            st.steps_empty += 1
            return
        if out.skipped:
            st.steps_skipped_gcd += 1
            st.criteria_hits["gcd"] += 1
            return
        st.steps_processed += 1
        st.criteria_hits["f5"] += out.f5_hits
        st.criteria_hits["syzygy"] += out.syz_hits
        if out.nrows:
            st.matrices_total += 1
            st.rows_total += out.nrows
            st.max_matrix_rows = max(st.max_matrix_rows, out.nrows)
            st.max_matrix_cols = max(st.max_matrix_cols, out.ncols)
            st.max_matrix_size = max(st.max_matrix_size, out.nrows * out.ncols)
            st.max_w1_degree_reached = max(st.max_w1_degree_reached, out.step.degree[0])
        st.reductions_to_zero_total += out.zero_count
        st.rank_defects += min(out.nrows, out.ncols) - out.rank

        for g, sig, idx in out.pivots:
            lm = g.lm
            if not any(divides(u, lm) for j in range(1, idx + 1) for u in self.prior_lms.get(j, ())):
                self.prior_lms[idx].append(lm)
            if any(divides(u, lm) for u in self.basis_lms):
                continue
            self.basis.append((g, sig))
            self.basis_lms.append(lm)
            if sig is not None:
                self.by_index[idx].append((g, sig))
        if self.config.signature_tracking:
            for z in out.zero_sigs:
                self.zero_sigs[z.index].append(z)


def _echelonize_by_index(M: MacaulayMatrix) -> tuple:
    """Unrestricted elimination, block by generator index.

    Pivots are attributed to the first index whose block raises the rank,
    which is what the F5 criterion needs; signatures are dropped.
    """
    p = M.ring.p
    basis = np.zeros((0, M.rows.shape[1]), dtype=np.int64)
    piv: list = []
    pivots, zero_count = [], 0
    order_idx = [s.index for s in M.signatures]
    for idx, grp in itertools.groupby(range(len(order_idx)), key=lambda r: order_idx[r]):
        B = M.rows[list(grp)]
        if piv:
            B = (B - dot_mod(B[:, piv], basis, p)) % p
        Rb, pcb = rref(B, p)
        zero_count += len(B) - len(pcb)
        if pcb:
            if piv:
                basis = (basis - dot_mod(basis[:, pcb], Rb, p)) % p
            basis = np.vstack([basis, Rb])
            piv.extend(pcb)
            pivots.extend((M.polynomial(r), None, idx) for r in Rb)
    return pivots, zero_count


def run_matrix_f5(
    F: Sequence[Polynomial],
    steps: Sequence[Step],
    W: WeightMatrix,
    config: F5Config = F5Config(),
    *,
    threads: int = 1,
    d_max: int | None = None,
    trace: list | None = None,
    batch_order=None,
) -> tuple:
    """Run the steps and return (GBasis, RunStats).

    ``trace``, when given, receives ``(signature, row polynomial)`` for every
    row put into a matrix, in processing order. ``batch_order`` lets tests
    permute the steps inside each batch; it is called with the batch list and
    must return a permutation of it.
    """
    if not F:
        raise InhomogeneousInput("empty input system")
    if d_max is None:
        d_max = max((s.degree[0] for s in steps), default=0)
    eng = _Engine(list(F), W, config, d_max)
    for s in steps:
        eng.check_step(s)
    eng.stats.steps_total = len(steps)
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for batch in batch_by_d1(steps):
            todo = list(batch_order(list(batch))) if batch_order else batch
            want_trace = trace is not None
            if pool is not None and len(todo) > 1:
                outcomes = list(pool.map(lambda s: eng.process(s, want_trace), todo))
            else:
                outcomes = [eng.process(s, want_trace) for s in todo]
            # deterministic merge: by step degree, whatever the execution order
            outcomes.sort(key=lambda o: o.step.degree)
            built = sum(1 for o in outcomes if o.nrows)
            if built:
                eng.stats.batches += 1
                eng.stats.max_matrices_per_batch = max(eng.stats.max_matrices_per_batch, built)
            for o in outcomes:
                eng.merge(o)
                if trace is not None:
                    trace.extend(o.trace)
    finally:
        if pool is not None:
            pool.shutdown()
    return GBasis(eng.ring, eng.basis, d_max), eng.stats


def signature_span_oracle(
    F: Sequence[Polynomial], sig: Signature, W: WeightMatrix, strict: bool = False
) -> list:
    """Brute-force basis of span{mu f_j : (mu, j) <= sig} (``<`` if strict).

    Enumerates every admissible mu directly; independent of the engine.
    """
    from .grading import enumerate_monomials

    W.require_positive_w1()
    order = MgrevlexOrder(W)
    degrees = [poly_mdeg(W, f) for f in F]
    target = signature_key(sig, order, degrees)
    top = target[0][0]
    polys = []
    for j, f in enumerate(F, 1):
        for e in range(0, top - degrees[j - 1][0] + 1):
            for mu in enumerate_monomials(W, w1_degree=e):
                k = signature_key(Signature(mu, j), order, degrees)
                if k < target or (not strict and k == target):
                    polys.append(f.mul_monomial(mu))
    return span_basis(polys)


def span_basis(polys: Sequence[Polynomial]) -> list:
    """Echelon basis (monic, distinct leading monomials) of the span of polys."""
    polys = [f for f in polys if f]
    if not polys:
        return []
    ring = polys[0].ring
    cols = sorted({m for f in polys for m, _ in f.terms}, key=ring.order.key, reverse=True)
    M = MacaulayMatrix.build(ring, cols, ((f, None) for f in polys))
    R, _ = rref(M.rows, ring.p)
    return [M.polynomial(r) for r in R]
