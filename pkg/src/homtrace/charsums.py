"""Character sums over F_p and F_q, including Gauss sums and the zero-trace count of D'."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from homtrace.defining_sets import coset_representatives
from homtrace.errors import EvenCharacteristic, Mismatch, ParameterError, ZeroArgument
from homtrace.field import FieldCtx
from homtrace.ring import RingCtx

INT_TOL = 1e-6
UNIT_TOL = 1e-9


def omega(p: int) -> complex:
    return cmath.exp(2j * math.pi / p)


def theta(y: Sequence[int], p: int) -> complex:
    """Theta(y) = sum_j omega^{y_j}."""
    counts = np.bincount(np.asarray(y, dtype=np.int64) % p, minlength=p)
    powers = np.exp(2j * np.pi * np.arange(p) / p)
    return complex(counts @ powers)


def scaled_theta_sum(y: Sequence[int], p: int) -> complex:
    """sum_{s=1}^{p-1} Theta(s y)."""
    y = np.asarray(y, dtype=np.int64)
    return sum(theta(s * y, p) for s in range(1, p))


def lemma1_holds(y: Sequence[int], p: int) -> bool:
    """sum_s Theta(s y) == (p-1) N - p w_H(y), compared after rounding."""
    y = np.asarray(y, dtype=np.int64) % p
    lhs = scaled_theta_sum(y, p)
    rhs = (p - 1) * len(y) - p * int(np.count_nonzero(y))
    return abs(lhs - round(lhs.real)) <= INT_TOL and round(lhs.real) == rhs


def additive_character(F: FieldCtx, x: int) -> complex:
    return omega(F.p) ** F.trace(x)


@dataclass(frozen=True)
class MultChar:
    """x -> exp(2 pi i c log_alpha(x) / d) on F_q^*, zero at 0."""

    field: FieldCtx
    d: int
    c: int = 1

    def __post_init__(self):
        if self.d < 1 or (self.field.q - 1) % self.d:
            raise ParameterError(f"character order {self.d} must divide q - 1 = {self.field.q - 1}")

    @property
    def order(self) -> int:
        return self.d // math.gcd(self.c % self.d, self.d) if self.c % self.d else 1

    @property
    def is_trivial(self) -> bool:
        return self.c % self.d == 0

    def __call__(self, x: int) -> complex:
        if x == 0:
            return 0j
        return cmath.exp(2j * math.pi * self.c * int(self.field.log[x]) / self.d)

    def values(self) -> np.ndarray:
        """Values on 1..q-1 in element order."""
        logs = self.field.log[1:]
        return np.exp(2j * np.pi * self.c * logs / self.d)

    def power(self, j: int) -> "MultChar":
        return MultChar(self.field, self.d, self.c * j)

    def conj(self) -> "MultChar":
        return MultChar(self.field, self.d, -self.c)


def quadratic_char(F: FieldCtx) -> MultChar:
    if F.p == 2:
        raise EvenCharacteristic("no quadratic character in characteristic 2")
    return MultChar(F, 2, 1)


def gauss_sum_numeric(psi: MultChar, F: FieldCtx | None = None) -> complex:
    """G(psi, chi) = sum_{x != 0} psi(x) chi(x) by direct summation."""
    F = F or psi.field
    tr = F.trace_table[1:]
    return complex(psi.values() @ np.exp(2j * np.pi * tr / F.p))


@dataclass(frozen=True)
class QuadraticGauss:
    """sign * p^{m/2}, times i when ``imaginary``."""

    p: int
    m: int
    sign: int
    imaginary: bool

    @property
    def value(self) -> complex:
        mag = math.sqrt(self.p) ** self.m
        return complex(0, self.sign * mag) if self.imaginary else complex(self.sign * mag, 0)

    def as_int(self) -> int:
        if self.imaginary or self.m % 2:
            raise ValueError("value is not an integer")
        return self.sign * self.p ** (self.m // 2)

    def __str__(self) -> str:
        mag = f"{self.p}^({self.m}/2)"
        return f"{'-' if self.sign < 0 else ''}{'i*' if self.imaginary else ''}{mag}"


def quadratic_gauss_exact(p: int, m: int) -> QuadraticGauss:
    """(-1)^{m-1} (sqrt(p*))^m, with sqrt(p*) = i sqrt(p) for p = 3 mod 4."""
    if p % 2 == 0:
        raise EvenCharacteristic("quadratic Gauss sum needs odd p")
    sign = -1 if (m - 1) % 2 else 1
    imaginary = False
    if p % 4 == 3:
        # i^m
        sign *= (1, 1, -1, -1)[m % 4]
        imaginary = m % 2 == 1
    return QuadraticGauss(p, m, sign, imaginary)


def square_sums(F: FieldCtx) -> tuple[complex, complex]:
    """(Q-bar, N-bar): additive character summed over squares and over nonsquares."""
    chi = np.exp(2j * np.pi * F.trace_table[1:] / F.p)
    sq = F.log[1:] % 2 == 0
    return complex(chi[sq].sum()), complex(chi[~sq].sum())


@dataclass(frozen=True)
class ZeroTraceCount:
    b: int
    direct: int
    via_formula: complex

    @property
    def agree(self) -> bool:
        return abs(self.via_formula - self.direct) <= INT_TOL


def zero_trace_count(F: FieldCtx, b: int, nprime: int, *, check: bool = True) -> ZeroTraceCount:
    """N(b) = #{j : tr(b d_j) = 0} counted directly and through the Gauss-sum formula
    p N(b) = n1 + (1/N'_2) sum_{j<N'_2} G(conj(phi^j)) phi^j(b)."""
    if b == 0:
        raise ZeroArgument("b must be nonzero")
    reps, prm = coset_representatives(RingCtx(F, 2), nprime)
    direct = sum(1 for d in reps if F.trace(F.mul(b, d)) == 0)
    phi = MultChar(F, prm.nprime2, 1)
    acc = 0j
    for j in range(prm.nprime2):
        acc += gauss_sum_numeric(phi.power(j).conj(), F) * phi.power(j)(b)
    formula = (prm.n1 + acc / prm.nprime2) / F.p
    out = ZeroTraceCount(b, direct, formula)
    if check and not out.agree:
        raise Mismatch(f"N({b}): direct {direct} vs formula {formula}")
    return out
