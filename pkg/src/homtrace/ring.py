"""The chain ring F_q[u]/(u^k) as dense coefficient tuples.

An element ``a_0 + a_1 u + ... + a_{k-1} u^{k-1}`` is the tuple
``(a_0, ..., a_{k-1})`` of field ints (see :mod:`homtrace.field`). Its index
``sum(a_j * q**(k-1-j))`` orders elements lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from homtrace.errors import ContextMismatch, DivisionByZero, ParameterError, WrongRing
from homtrace.field import FieldCtx, build_field, format_coeffs, parse_coeffs

RingElem = tuple[int, ...]

SUBSETS = ("all", "units", "maximal_ideal", "socle_units")


@dataclass(frozen=True, eq=False)
class RingCtx:
    field: FieldCtx
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ParameterError("nilpotency index k must be >= 2")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.q**self.k

    @property
    def is_base(self) -> bool:
        return self.m == 1

    def __repr__(self) -> str:
        return f"RingCtx(p={self.p}, m={self.m}, k={self.k})"

    # construction helpers -------------------------------------------------

    def zero(self) -> RingElem:
        return (0,) * self.k

    def one(self) -> RingElem:
        return (self.field.scalar(1),) + (0,) * (self.k - 1)

    def u_power(self, j: int, coeff: int | None = None) -> RingElem:
        """``coeff * u^j`` (``coeff`` a field int, default 1)."""
        c = self.field.scalar(1) if coeff is None else coeff
        return tuple(c if i == j else 0 for i in range(self.k))

    def from_scalars(self, coeffs: Sequence[int]) -> RingElem:
        """Element whose u-coefficients are the F_p scalars ``coeffs``."""
        return tuple(self.field.scalar(c) for c in coeffs)

    def _check(self, a: RingElem) -> None:
        if len(a) != self.k:
            raise ContextMismatch(f"expected {self.k} coefficients, got {len(a)}")

    # arithmetic -----------------------------------------------------------

    def add(self, a: RingElem, b: RingElem) -> RingElem:
        self._check(a), self._check(b)
        return tuple(self.field.add(x, y) for x, y in zip(a, b))

    def sub(self, a: RingElem, b: RingElem) -> RingElem:
        self._check(a), self._check(b)
        return tuple(self.field.sub(x, y) for x, y in zip(a, b))

    def neg(self, a: RingElem) -> RingElem:
        return tuple(self.field.neg(x) for x in a)

    def mul(self, a: RingElem, b: RingElem) -> RingElem:
        self._check(a), self._check(b)
        F = self.field
        out = []
        for t in range(self.k):
            acc = 0
            for i in range(t + 1):
                acc = F.add(acc, F.mul(a[i], b[t - i]))
            out.append(acc)
        return tuple(out)

    def arith(self, op: str, a: RingElem, b: RingElem) -> RingElem:
        if op not in ("add", "sub", "mul"):
            raise ParameterError(f"unknown ring operation {op!r}")
        return getattr(self, op)(a, b)

    def scale(self, s: int, a: RingElem) -> RingElem:
        """Multiply by the F_p scalar ``s``."""
        return self.mul(self.from_scalars([s] + [0] * (self.k - 1)), a)

    def is_unit(self, a: RingElem) -> bool:
        return a[0] != 0

    def in_maximal_ideal(self, a: RingElem) -> bool:
        return a[0] == 0

    def in_socle(self, a: RingElem) -> bool:
        """True for elements of (u^{k-1}), zero included."""
        return not any(a[:-1])

    def inv(self, a: RingElem) -> RingElem:
        """Inverse of a unit via a = a0 (1 + n), n nilpotent."""
        if not self.is_unit(a):
            raise DivisionByZero("non-unit has no inverse")
        F = self.field
        a0inv = F.inv(a[0])
        n = tuple(F.mul(a0inv, x) for x in (0,) + tuple(a[1:]))
        neg_n = self.neg(n)
        term = self.one()
        acc = self.one()
        for _ in range(self.k - 1):
            term = self.mul(term, neg_n)
            acc = self.add(acc, term)
        return tuple(F.mul(a0inv, x) for x in acc)

    # vectorized forms on arrays of shape (..., k) ----------------------------

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        F = self.field
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out_digits = np.zeros(a.shape[:-1] + (self.k, self.m), dtype=np.int64)
        for t in range(self.k):
            for i in range(t + 1):
                out_digits[..., t, :] += F.digits[F.mul_vec(a[..., i], b[..., t - i])]
        return F.encode(out_digits % self.p)

    def index_vec(self, a: np.ndarray) -> np.ndarray:
        w = self.q ** np.arange(self.k - 1, -1, -1, dtype=np.int64)
        return np.asarray(a, dtype=np.int64) @ w

    # enumeration ----------------------------------------------------------

    def index(self, a: RingElem) -> int:
        idx = 0
        for x in a:
            idx = idx * self.q + int(x)
        return idx

    def element(self, idx: int) -> RingElem:
        if not 0 <= idx < self.size:
            raise ParameterError(f"index {idx} out of range")
        out = []
        for _ in range(self.k):
            idx, r = divmod(idx, self.q)
            out.append(r)
        return tuple(reversed(out))

    def count(self, subset: str = "all") -> int:
        q, k = self.q, self.k
        return {
            "all": q**k,
            "units": q ** (k - 1) * (q - 1),
            "maximal_ideal": q ** (k - 1),
            "socle_units": q - 1,
        }[subset]

    def enumerate(self, subset: str = "all") -> Iterator[RingElem]:
        """Lexicographic stream of the chosen subset."""
        q, k = self.q, self.k
        if subset == "all":
            return itertools.product(range(q), repeat=k)
        if subset == "units":
            return ((a0,) + rest for a0 in range(1, q) for rest in itertools.product(range(q), repeat=k - 1))
        if subset == "maximal_ideal":
            return ((0,) + rest for rest in itertools.product(range(q), repeat=k - 1))
        if subset == "socle_units":
            return ((0,) * (k - 1) + (a,) for a in range(1, q))
        raise ParameterError(f"unknown subset {subset!r}; expected one of {SUBSETS}")

    # text format ----------------------------------------------------------

    def format(self, a: RingElem) -> str:
        return ";".join(format_coeffs(self.field.coeffs(x)) for x in a)

    def parse(self, text: str) -> RingElem:
        parts = text.strip().split(";")
        if len(parts) != self.k:
            raise ParameterError(f"expected {self.k} ';'-separated parts in {text!r}")
        return tuple(self.field.from_coeffs(parse_coeffs(s)) for s in parts)


def build_ring(p: int, m: int, k: int, modulus=None, *, alpha=None, allow_even=False) -> RingCtx:
    return RingCtx(build_field(p, m, modulus, alpha=alpha, allow_even=allow_even), k)


def base_ring(ring: RingCtx) -> RingCtx:
    """R = F_p[u]/(u^k) below ``ring``."""
    if ring.is_base:
        return ring
    return RingCtx(build_field(ring.p, 1, allow_even=ring.p == 2), ring.k)


def generalized_trace(ring: RingCtx, a: RingElem) -> RingElem:
    """Tr(sum a_i u^i) = sum tr(a_i) u^i, landing in the base ring (F_p ints)."""
    ring._check(a)
    return tuple(ring.field.trace(x) for x in a)


def require_base(ring: RingCtx) -> None:
    if not ring.is_base:
        raise WrongRing("operation is defined on R = F_p[u]/(u^k) only")
