"""Row reduction over F_p."""

from __future__ import annotations

import numpy as np


def row_reduce(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        s = r + nz[0]
        if s != r:
            a[[r, s]] = a[[s, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return len(row_reduce(mat, p)[1])


def in_row_space(basis: np.ndarray, vectors: np.ndarray, p: int) -> bool:
    """True when every row of ``vectors`` lies in the F_p row space of ``basis``."""
    r = rank_mod_p(basis, p)
    return rank_mod_p(np.vstack([basis, vectors]), p) == r
