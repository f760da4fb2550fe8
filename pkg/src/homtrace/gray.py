"""Gray map R -> F_p^{p^{k-1}} and the homogeneous weight on R = F_p[u]/(u^k).

Elements of R are tuples ``(a_0, ..., a_{k-1})`` of ints mod p. For bulk work
they are also handled as *symbol codes* ``sum(a_j * p**(k-1-j))`` in
``range(p**k)``; :func:`symbol_tables` precomputes everything the enumerator
needs on that alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from homtrace.errors import LengthMismatch, WrongRing


def base_digit(z: int, l: int, p: int) -> int:
    """Coefficient of p^l in the base-p expansion of ``z``."""
    return (z // p**l) % p


@lru_cache(maxsize=None)
def gray_matrix(p: int, k: int) -> np.ndarray:
    """Row ``i*p + eps`` holds the coefficients of ``(a_0, ..., a_{k-1})`` in b_{i*p+eps}.

    Entry 0 is ``eps``, entry ``l`` (1 <= l <= k-2) is p_{l-1}(i) and entry
    k-1 is 1. For k = 2 the middle block is empty.
    """
    n = p ** (k - 1)
    out = np.zeros((n, k), dtype=np.int64)
    for i in range(p ** (k - 2)):
        for eps in range(p):
            row = out[i * p + eps]
            row[0] = eps
            for l in range(1, k - 1):
                row[l] = base_digit(i, l - 1, p)
            row[k - 1] = 1
    out.setflags(write=False)
    return out


def _check_elem(a: Sequence[int], p: int, k: int) -> None:
    if len(a) != k:
        raise WrongRing(f"expected an element of R with {k} coefficients, got {len(a)}")
    if any(not 0 <= int(x) < p for x in a):
        raise WrongRing(f"coefficients of {tuple(a)} are not in F_{p}")


def gray_map(a: Sequence[int], p: int, k: int) -> tuple[int, ...]:
    _check_elem(a, p, k)
    return tuple(int(x) for x in (gray_matrix(p, k) @ np.asarray(a, dtype=np.int64)) % p)


def gray_map_vector(c: Sequence[Sequence[int]], p: int, k: int) -> np.ndarray:
    """Componentwise extension to R^n; output length p^{k-1} * n."""
    arr = np.asarray(c, dtype=np.int64).reshape(-1, k)
    return ((arr @ gray_matrix(p, k).T) % p).reshape(-1)


def hom_weight(a: Sequence[int], p: int, k: int) -> int:
    if not any(a):
        return 0
    if not any(a[:-1]):
        return p ** (k - 1)
    return (p - 1) * p ** (k - 2)


def hom_weight_vector(c: Sequence[Sequence[int]], p: int, k: int) -> int:
    return sum(hom_weight(a, p, k) for a in c)


def hom_distance(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]], p: int, k: int) -> int:
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)} differ")
    diff = [tuple((ai - bi) % p for ai, bi in zip(a, b)) for a, b in zip(x, y)]
    return hom_weight_vector(diff, p, k)


def format_gray(v: Sequence[int]) -> str:
    return ",".join(str(int(x)) for x in v)


# ---------------------------------------------------------------------------
# symbol-code tables


@dataclass(frozen=True)
class SymbolTables:
    p: int
    k: int
    digits: np.ndarray  # (Q, k) coefficient tuples
    gray: np.ndarray  # (Q, p^{k-1}) Gray images
    weight: np.ndarray  # (Q,) Hamming weight of the Gray image
    hom: np.ndarray  # (Q,) homogeneous weight from the three-case definition
    add: np.ndarray  # (Q, Q)
    neg: np.ndarray  # (Q,)
    mul: np.ndarray  # (Q, Q) ring product in R

    @property
    def size(self) -> int:
        return self.p**self.k

    def encode(self, digits: np.ndarray) -> np.ndarray:
        w = self.p ** np.arange(self.k - 1, -1, -1, dtype=np.int64)
        return (np.asarray(digits, dtype=np.int64) % self.p) @ w


@lru_cache(maxsize=None)
def symbol_tables(p: int, k: int) -> SymbolTables:
    Q = p**k
    w = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    codes = np.arange(Q, dtype=np.int64)
    digits = (codes[:, None] // w[None, :]) % p
    gray = (digits @ gray_matrix(p, k).T) % p
    weight = np.count_nonzero(gray, axis=1).astype(np.int64)
    hom = np.array([hom_weight(tuple(d), p, k) for d in digits], dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ w
    neg = ((-digits) % p) @ w
    prod = np.zeros((Q, Q, k), dtype=np.int64)
    for t in range(k):
        for i in range(t + 1):
            prod[:, :, t] += digits[:, None, i] * digits[None, :, t - i]
    mul = (prod % p) @ w
    for arr in (digits, gray, weight, hom, add, neg, mul):
        arr.setflags(write=False)
    return SymbolTables(p, k, digits, gray, weight, hom, add, neg, mul)
