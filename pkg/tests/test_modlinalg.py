import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mwgb.modlinalg import PivotSpace, check_prime_size, dot_mod, nullspace, rank, rref

from conftest import gf_rank

matrices = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 100), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
@settings(max_examples=150)
def test_rank_matches_python_oracle(rows):
    assert rank(np.array(rows), 101) == gf_rank(rows, 101)


@given(matrices)
@settings(max_examples=100)
def test_rref_shape(rows):
    R, piv = rref(np.array(rows), 101)
    assert piv == sorted(piv)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert all(R[j, c] == 0 for j in range(len(piv)) if j != i)
        assert not R[i, :c].any()


@given(matrices)
@settings(max_examples=100)
def test_nullspace(rows):
    M = np.array(rows)
    N = nullspace(M, 101)
    assert len(N) == M.shape[1] - gf_rank(rows, 101)
    assert not (dot_mod(M, N.T, 101)).any()


@given(matrices)
@settings(max_examples=100)
def test_pivot_space_rank_and_combination(rows):
    p = 101
    M = np.array(rows)
    space = PivotSpace(M.shape[1], p)
    kept = [space.insert(r.copy()) for r in M]
    assert sum(k is not None for k in kept) == gf_rank(rows, p)
    # each stored row is the incoming row plus a combination of earlier rows only
    for i, k in enumerate(kept):
        if k is not None:
            assert gf_rank(rows[: i + 1], p) == gf_rank(rows[:i] + [list(k)], p)
    assert len(set(space.pivots)) == len(space.pivots)


def test_dot_mod_large_prime_no_overflow():
    p = 2147483647
    rng = np.random.default_rng(0)
    A = rng.integers(0, p, size=(3, 50))
    B = rng.integers(0, p, size=(50, 4))
    got = dot_mod(A, B, p)
    want = [[sum(int(A[i, t]) * int(B[t, j]) for t in range(50)) % p for j in range(4)] for i in range(3)]
    assert got.tolist() == want


def test_prime_size_guard():
    with pytest.raises(ValueError):
        check_prime_size(2**31 + 11)
