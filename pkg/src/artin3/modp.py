"""Dense linear algebra over a small prime field.

Matrices are ``numpy`` integer arrays with entries in ``0 .. p-1``.  Products
are formed in float64 when the accumulated sums stay below 2**53 (exact, and
BLAS-backed), otherwise in int64.
"""

from __future__ import annotations

import numpy as np


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1] if a.ndim == 2 else 1
    if (p - 1) ** 2 * max(inner, 1) < 2**52:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    return np.mod(a.astype(np.int64) @ b.astype(np.int64), p)


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over F_p.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    m = np.mod(np.array(a, dtype=np.int64), p)
    if m.ndim != 2:
        raise ValueError("rref_mod expects a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r, c:] = (m[r, c:] * inv_mod(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[np.ix_(hit, np.arange(c, cols))] = (
                m[np.ix_(hit, np.arange(c, cols))] - np.outer(col[hit], m[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_mod(a: np.ndarray, p: int) -> int:
    return len(rref_mod(a, p)[1])


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of the right nullspace ``{v : a v = 0}`` over F_p.

    The basis is the canonical one read off the RREF: one vector per free
    column, with a 1 in that column.
    """
    a = np.asarray(a)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref_mod(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, pc in enumerate(piv):
            basis[i, pc] = (-r[j, f]) % p
    return basis


class RowReducer:
    """Incrementally maintained row space in RREF.

    Blocks of rows are first reduced against the current basis with one
    matrix product, then only the residual is eliminated.  This keeps the
    cost proportional to the rank rather than to the number of rows fed in.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, rows: np.ndarray) -> np.ndarray:
        rows = np.mod(np.asarray(rows, dtype=np.int64), self.p)
        if self.rank == 0 or rows.shape[0] == 0:
            return rows
        return np.mod(rows - _matmul_mod(rows[:, self.pivots], self.basis, self.p), self.p)

    def add(self, rows: np.ndarray) -> int:
        """Add rows to the span; returns the rank increase."""
        res = self.reduce(rows)
        res = res[np.any(res != 0, axis=1)]
        if res.shape[0] == 0:
            return 0
        new, new_piv = rref_mod(res, self.p)
        if self.rank:
            self.basis = np.mod(
                self.basis - _matmul_mod(self.basis[:, new_piv], new, self.p), self.p
            )
        basis = np.vstack([self.basis, new])
        piv = self.pivots + new_piv
        order = np.argsort(piv, kind="stable")
        self.basis = basis[order]
        self.pivots = [piv[i] for i in order]
        return len(new_piv)

    def contains(self, vec: np.ndarray) -> bool:
        return not np.any(self.reduce(np.atleast_2d(vec)))

    def nullspace(self) -> np.ndarray:
        return nullspace_mod(self.basis, self.p) if self.rank else np.eye(self.ncols, dtype=np.int64)
