"""Dense linear algebra over GF(p) on int64 numpy arrays.

Entries are kept in ``range(p)``. Dot products are accumulated without
intermediate reduction in chunks of at most 2**62 // (p-1)**2 terms, which
is a single reduction per row for the default prime and any realistic size.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 2**31


def check_prime_size(p: int):
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} too large for int64 delayed reduction")


def dot_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """(A @ B) mod p without int64 overflow; A may be a vector or a matrix."""
    inner = B.shape[0]
    chunk = max(1, 2**62 // ((p - 1) ** 2))
    if inner <= chunk:
        return (A @ B) % p
    acc = None
    for s in range(0, inner, chunk):
        part = A[..., s:s + chunk] @ B[s:s + chunk]
        acc = part % p if acc is None else (acc + part) % p
    return acc


class PivotSpace:
    """Row space kept in reduced echelon form, for reducing incoming rows.

    Only the incoming row is ever modified, using rows inserted before it,
    so the row returned by :meth:`insert` equals the original row plus a
    combination of strictly earlier rows.
    """

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: np.ndarray) -> np.ndarray:
        if not self.pivots:
            return row % self.p
        coeffs = row[self.pivots]
        return (row - dot_mod(coeffs, self.basis, self.p)) % self.p

    def insert(self, row: np.ndarray):
        """Reduce ``row``; if nonzero make it monic, store it, and return it.

        Returns ``None`` when the row reduces to zero.
        """
        p = self.p
        r = self.reduce(row)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return None
        c = int(nz[0])
        r = r * pow(int(r[c]), -1, p) % p
        if self.pivots:
            col = self.basis[:, c].copy()
            if col.any():
                self.basis = (self.basis - np.outer(col, r)) % p
        self.basis = np.vstack([self.basis, r[None, :]])
        self.pivots.append(c)
        return r


def rref(M: np.ndarray, p: int) -> tuple:
    """Unrestricted reduced row echelon form (row swaps allowed).

    Returns (R, pivot_columns) with R holding only the nonzero rows.
    """
    A = np.array(M, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        if col.any():
            A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0} over GF(p)."""
    nrows, ncols = M.shape
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(M, p)
    free = [j for j in range(ncols) if j not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(pivots):
            out[t, pc] = (-R[i, f]) % p
    return out
