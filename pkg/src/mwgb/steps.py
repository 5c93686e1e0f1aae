"""Step-list generators and the multihomogeneous embedding F_W."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import PolyRing, Polynomial
from .errors import InhomogeneousInput, NegativeWeight, NotInImage
from .f5 import F5Config, Signature, Step, run_matrix_f5
from .grading import (
    MgrevlexOrder,
    WeightMatrix,
    enumerate_monomials,
    monomials_by_mdeg,
    monomials_of_w1_degree,
    poly_mdeg,
)

STRATEGIES = ("mwh-gcd", "mwh-nofilter", "default-w1")


@dataclass(frozen=True)
class StepPlan:
    steps: tuple
    d_max: int

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, i):
        return self.steps[i]


def _sorted_sigs(order, sigs):
    return tuple(sorted(sigs, key=lambda s: (s.index, order.key(s.monomial))))


def algosteps_mwh(W: WeightMatrix, input_degrees: Sequence[tuple], d_max: int) -> StepPlan:
    """One step per W-degree d with 1 <= d_1 <= d_max, in lex order."""
    W.require_positive_w1()
    order = MgrevlexOrder(W)
    input_degrees = [tuple(d) for d in input_degrees]
    steps = []
    for d in range(1, d_max + 1):
        for deg, mons in monomials_by_mdeg(W, d).items():
            sigs = []
            for i, di in enumerate(input_degrees, 1):
                shift = tuple(a - b for a, b in zip(deg, di))
                for m in enumerate_monomials(W, mdeg=shift):
                    sigs.append(Signature(m, i))
            steps.append(Step(deg, mons, _sorted_sigs(order, sigs)))
    return StepPlan(tuple(steps), d_max)


def algosteps_w1_default(W: WeightMatrix, input_degrees: Sequence[tuple], d_max: int) -> StepPlan:
    """Baseline: one step per W_1-degree holding every monomial of that degree."""
    W.require_positive_w1()
    order = MgrevlexOrder(W)
    steps = []
    for d in range(1, d_max + 1):
        mons = tuple(sorted(monomials_of_w1_degree(W, d), key=order.key, reverse=True))
        sigs = []
        for i, di in enumerate(input_degrees, 1):
            for m in monomials_of_w1_degree(W, d - di[0]) if d >= di[0] else ():
                sigs.append(Signature(m, i))
        steps.append(Step((d,), mons, _sorted_sigs(order, sigs)))
    return StepPlan(tuple(steps), d_max)


def plan_for(strategy: str, W: WeightMatrix, input_degrees, d_max: int) -> tuple:
    """(StepPlan, F5Config) for a named strategy."""
    if strategy == "mwh-gcd":
        return algosteps_mwh(W, input_degrees, d_max), F5Config(use_gcd_filter=True)
    if strategy == "mwh-nofilter":
        return algosteps_mwh(W, input_degrees, d_max), F5Config(use_gcd_filter=False)
    if strategy == "default-w1":
        return algosteps_w1_default(W, input_degrees, d_max), F5Config(use_gcd_filter=False)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def truncated_groebner(
    F: Sequence[Polynomial],
    W: WeightMatrix,
    d_max: int,
    strategy: str = "mwh-gcd",
    *,
    threads: int = 1,
    config: F5Config | None = None,
) -> tuple:
    """Convenience wrapper: plan the steps for ``strategy`` and run the engine."""
    degrees = [poly_mdeg(W, f) for f in F]
    if None in degrees:
        raise InhomogeneousInput("every generator must be non-zero and W-homogeneous")
    plan, default_config = plan_for(strategy, W, degrees, d_max)
    return run_matrix_f5(F, plan.steps, W, config or default_config, threads=threads, d_max=d_max)


# ---------------------------------------------------------------------------
# F_W : A -> B


def y_index(j: int, i: int, k: int) -> int:
    """Position of Y_{j,i} (1-based j, i) in B: the k copies of X_j are adjacent."""
    return (j - 1) * k + (i - 1)


def _y(j: int, i: int, k: int) -> int:
    return y_index(j + 1, i + 1, k)


def block_weight_matrix(k: int, n: int) -> WeightMatrix:
    """Weights of the k-block multigrading on B (block i = Y_{1,i} .. Y_{n,i})."""
    return WeightMatrix(
        tuple(tuple(1 if t % k == i else 0 for t in range(k * n)) for i in range(k))
    )


def embedding_ring(W: WeightMatrix, p: int) -> PolyRing:
    return PolyRing(W.k * W.n, p, MgrevlexOrder(block_weight_matrix(W.k, W.n)))


def _check_embeddable(W: WeightMatrix):
    if any(x < 0 for r in W.rows for x in r):
        raise NegativeWeight(f"embedding needs a non-negative weight matrix, got {W.rows}")
    for j in range(W.n):
        if not any(W.column(j)):
            raise NegativeWeight(f"column {j + 1} of W is zero; the embedding is not injective")


def embed_fw(W: WeightMatrix, f: Polynomial) -> Polynomial:
    """Substitute X_j -> prod_i Y_{j,i}^{w_{i,j}}.

    Y_{j,i} sits at position (j-1)*k + (i-1) of the target ring. With the
    copies of each X_j adjacent, revlex on B agrees with revlex on A for
    image monomials of equal degree even when W has zero entries.
    """
    _check_embeddable(W)
    k, n = W.k, W.n
    ring = embedding_ring(W, f.ring.p)
    terms = []
    for m, c in f.terms:
        e = [0] * (k * n)
        for i in range(k):
            row = W.rows[i]
            for j in range(n):
                e[_y(j, i, k)] = row[j] * m[j]
        terms.append((tuple(e), c))
    return Polynomial(ring, terms)


def section_fw(W: WeightMatrix, g: Polynomial, target: PolyRing) -> Polynomial:
    """Inverse of :func:`embed_fw` on its image."""
    _check_embeddable(W)
    k, n = W.k, W.n
    terms = []
    for e, c in g.terms:
        alpha = []
        for j in range(n):
            col = W.column(j)
            block = [e[_y(j, i, k)] for i in range(k)]
            i0 = next(i for i in range(k) if col[i])
            a, rem = divmod(block[i0], col[i0])
            if rem or any(block[i] != a * col[i] for i in range(k)):
                raise NotInImage(f"monomial {e} is not in the image of F_W")
            alpha.append(a)
        terms.append((tuple(alpha), c))
    return Polynomial(target, terms)
