"""Pure numpy version of the weight-histogram kernel (same signature as the compiled one)."""

from __future__ import annotations

import numpy as np

BLOCK_ELEMENTS = 1 << 21


def _multiples(row: np.ndarray, add: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros((p, row.size), dtype=np.int64)
    for d in range(1, p):
        out[d] = add[out[d - 1], row]
    return out


def weight_histogram(gen, add, weight, p, start, stop, hist):
    if stop <= start:
        return
    gen = np.asarray(gen, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    weight = np.asarray(weight, dtype=np.int64)
    K, n = gen.shape

    low = 0
    while low < K and p ** (low + 1) * n <= BLOCK_ELEMENTS:
        low += 1
    high = K - low
    span = p**low

    # all combinations of the last `low` rows, last row least significant
    table = np.zeros((1, n), dtype=np.int64)
    for r in range(high, K):
        mult = _multiples(gen[r], add, p)
        table = add[table[:, None, :], mult[None, :, :]].reshape(-1, n)
    high_mult = [_multiples(gen[r], add, p) for r in range(high)]

    for prefix in range(start // span, (stop - 1) // span + 1):
        base = np.zeros(n, dtype=np.int64)
        rem = prefix
        for r in range(high - 1, -1, -1):
            rem, d = divmod(rem, p)
            if d:
                base = add[base, high_mult[r][d]]
        lo = max(start - prefix * span, 0)
        hi = min(stop - prefix * span, span)
        block = add[base[None, :], table[lo:hi]]
        w = weight[block].sum(axis=1)
        counts = np.bincount(w, minlength=len(hist))
        hist += counts[: len(hist)]
