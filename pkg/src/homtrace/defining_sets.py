"""Defining sets inside the extension ring.

D1 takes units with a square leading coefficient and D2 takes every unit. D3
uses coset representatives in the leading slot with free higher coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from homtrace.errors import EvenCharacteristic, NotADivisor, ParameterError, RepresentativeCheckFailed
from homtrace.ring import RingCtx, RingElem

VARIANTS = ("d1", "d2", "d3")


@dataclass(frozen=True)
class D3Params:
    nprime: int
    nprime1: int  # lcm(N', (q-1)/(p-1))
    nprime2: int  # gcd(N', (q-1)/(p-1))
    n1: int  # nprime1 / nprime


def d3_params(p: int, m: int, nprime: int) -> D3Params:
    q = p**m
    if nprime < 1 or (q - 1) % nprime:
        raise NotADivisor(f"N'={nprime} does not divide p^m - 1 = {q - 1}")
    big = (q - 1) // (p - 1)
    g = math.gcd(nprime, big)
    lcm = nprime * big // g
    return D3Params(nprime, lcm, g, lcm // nprime)


@dataclass(frozen=True, eq=False)
class DefiningSet:
    variant: str
    ring: RingCtx
    elements: np.ndarray = field(repr=False)  # (size, k) field ints
    params: D3Params | None = None

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def gray_length(self) -> int:
        return self.ring.p ** (self.ring.k - 1) * self.size

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, i: int) -> RingElem:
        return tuple(int(x) for x in self.elements[i])

    def __iter__(self):
        return (self[i] for i in range(self.size))

    @cached_property
    def position(self) -> dict[int, int]:
        """Ring index -> coordinate position."""
        idx = self.ring.index_vec(self.elements)
        return {int(v): i for i, v in enumerate(idx)}

    def dump(self) -> str:
        return "\n".join(self.ring.format(x) for x in self) + "\n"


def _with_free_tail(ring: RingCtx, heads: np.ndarray) -> np.ndarray:
    """Rows (h, x_1, ..., x_{k-1}): outer loop over ``heads``, inner lex loop over the tail."""
    q, k = ring.q, ring.k
    tail = np.indices((q,) * (k - 1)).reshape(k - 1, -1).T
    out = np.empty((len(heads) * len(tail), k), dtype=np.int64)
    out[:, 0] = np.repeat(np.asarray(heads, dtype=np.int64), len(tail))
    out[:, 1:] = np.tile(tail, (len(heads), 1))
    return out


def build_d1(ring: RingCtx) -> DefiningSet:
    F = ring.field
    if ring.p == 2:
        raise EvenCharacteristic("D1 needs odd p")
    squares = [x for x in range(1, F.q) if F.is_square(x)]
    return DefiningSet("d1", ring, _with_free_tail(ring, squares))


def build_d2(ring: RingCtx) -> DefiningSet:
    return DefiningSet("d2", ring, _with_free_tail(ring, list(range(1, ring.q))))


def coset_representatives(ring: RingCtx, nprime: int) -> tuple[list[int], D3Params]:
    """D' = {alpha^{N'(j-1)} : j = 1..n1}, checked to represent C_0^{N'_2} / F_p^*."""
    F = ring.field
    prm = d3_params(F.p, F.m, nprime)
    reps = [F.alpha_pow(nprime * j) for j in range(prm.n1)]
    big = (F.q - 1) // (F.p - 1)
    logs = [F.discrete_log(d) for d in reps]
    if any(t % prm.nprime2 for t in logs):
        raise RepresentativeCheckFailed("a representative lies outside C_0^{N'_2}")
    classes = {t % big for t in logs}
    if len(classes) != prm.n1:
        raise RepresentativeCheckFailed("two representatives share an F_p^* coset")
    n_cosets = (F.q - 1) // prm.nprime2 // (F.p - 1)
    if n_cosets != prm.n1:
        raise RepresentativeCheckFailed(f"{prm.n1} representatives for {n_cosets} cosets")
    return reps, prm


def build_d3(ring: RingCtx, nprime: int) -> DefiningSet:
    reps, prm = coset_representatives(ring, nprime)
    return DefiningSet("d3", ring, _with_free_tail(ring, reps), prm)


def build_defining_set(ring: RingCtx, variant: str, nprime: int | None = None) -> DefiningSet:
    variant = variant.lower()
    if variant == "d1":
        return build_d1(ring)
    if variant == "d2":
        return build_d2(ring)
    if variant == "d3":
        if nprime is None:
            raise ParameterError("D3 requires N'")
        return build_d3(ring, nprime)
    raise ParameterError(f"unknown variant {variant!r}")
