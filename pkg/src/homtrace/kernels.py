"""Backend selection for the weight-histogram kernel and the parallel range driver.

The compiled extension is used when it imports and ``HOMTRACE_PURE`` is unset;
otherwise the numpy fallback runs. Both fill a caller-owned int64 histogram.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

import numpy as np

from homtrace import _fallback

try:
    from homtrace import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"numpy": _fallback.weight_histogram}
if _compiled is not None:
    BACKENDS["cython"] = _compiled.weight_histogram

DEFAULT_BACKEND = "cython" if "cython" in BACKENDS and not os.environ.get("HOMTRACE_PURE") else "numpy"


def get_kernel(backend: str | None = None):
    name = backend or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def split_ranges(ranges: Iterable[tuple[int, int]], parts: int) -> list[tuple[int, int]]:
    """Cut a list of half-open index ranges into about ``parts`` contiguous pieces."""
    ranges = [(a, b) for a, b in ranges if b > a]
    total = sum(b - a for a, b in ranges)
    if parts <= 1 or total == 0:
        return ranges
    step = -(-total // parts)
    out = []
    for a, b in ranges:
        while a < b:
            c = min(b, a + step)
            out.append((a, c))
            a = c
    return out


def histogram(
    gen: np.ndarray,
    add: np.ndarray,
    weight: np.ndarray,
    p: int,
    ranges: Iterable[tuple[int, int]],
    size: int,
    *,
    workers: int = 1,
    backend: str | None = None,
) -> np.ndarray:
    """Sum of per-range histograms. Each worker owns its histogram; the merge is
    an integer sum, so the result does not depend on scheduling."""
    kernel = get_kernel(backend)
    gen = np.ascontiguousarray(gen, dtype=np.uint16)
    add = np.ascontiguousarray(add, dtype=np.uint16)
    weight = np.ascontiguousarray(weight, dtype=np.int64)
    pieces = split_ranges(ranges, max(1, workers) * 4 if workers > 1 else 1)

    def run(piece):
        h = np.zeros(size, dtype=np.int64)
        kernel(gen, add, weight, p, piece[0], piece[1], h)
        return h

    if workers <= 1:
        parts = [run(piece) for piece in pieces]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, pieces))
    total = np.zeros(size, dtype=np.int64)
    for h in parts:
        total += h
    return total
