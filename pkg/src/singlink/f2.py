"""Small GF(2) linear-algebra helpers used for invariant classes and quotients."""

from __future__ import annotations

import numpy as np


def rref_pivots(H: np.ndarray):
    """Return (RREF matrix, pivot column list) of H over GF(2)."""
    A = (np.asarray(H, dtype=np.uint8) & 1).astype(np.uint8, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-d bit matrix")
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.where(A[r:, c] == 1)[0]
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            A[[r, p], :] = A[[p, r], :]
        ones = np.where(A[:, c] == 1)[0]
        ones = ones[ones != r]
        if ones.size:
            A[ones, :] ^= A[r, :]
        pivots.append(c)
        r += 1
    return A[:r], pivots


class F2Subspace:
    """Subspace of F2^n given by spanning rows; kept in RREF for canonical ops."""

    def __init__(self, rows, dim_ambient: int):
        self.n = int(dim_ambient)
        rows = np.asarray(rows, dtype=np.uint8).reshape(-1, self.n) if len(rows) else np.zeros((0, self.n), np.uint8)
        self.basis, self.pivots = rref_pivots(rows) if rows.size else (np.zeros((0, self.n), np.uint8), [])

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def reduce(self, v) -> np.ndarray:
        """Canonical coset representative of v modulo this subspace.

        Eliminates pivot coordinates; two vectors reduce equal iff congruent.
        """
        w = (np.asarray(v, dtype=np.uint8).reshape(-1) & 1).copy()
        if w.shape[0] != self.n:
            raise ValueError(f"vector length {w.shape[0]} != ambient dim {self.n}")
        for row, c in zip(self.basis, self.pivots):
            if w[c]:
                w ^= row
        return w


def zeros(n: int) -> np.ndarray:
    return np.zeros(n, dtype=np.uint8)
