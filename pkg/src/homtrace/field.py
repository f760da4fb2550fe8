"""Finite fields F_{p^m} backed by precomputed lookup tables.

Field elements are plain ints. The int ``x`` encodes the coefficient vector
``(c_0, ..., c_{m-1})`` (power basis of a root of the modulus) as
``sum(c_i * p**(m-1-i))``, so integer order coincides with lexicographic order
on coefficient vectors and ``range(q)`` enumerates the field deterministically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from homtrace.errors import (
    ConsistencyError,
    DivisionByZero,
    EvenCharacteristic,
    NoPrimitiveElement,
    NonPrime,
    ParameterError,
    ReducibleModulus,
    ZeroArgument,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient lists low degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    f = _trim([c % p for c in f])
    inv_lead = pow(f[-1], p - 2, p)
    df = len(f) - 1
    while len(a) - 1 >= df:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_mod(out, f, p)


def poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, f, p)
    return poly_mod(result, f, p)


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` over F_p."""
    f = _trim([c % p for c in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _poly_sub(poly_powmod(x, p**m, f, p), x, p):
        return False
    for r in prime_factors(m):
        h = _poly_sub(poly_powmod(x, p ** (m // r), f, p), x, p)
        if len(poly_gcd(h, f, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``m`` (low degree first)."""
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if m > 1 and low[0] == 0:
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over F_{p}")


def parse_coeffs(text: str) -> tuple[int, ...]:
    """Parse ``"1,0,1"`` into ``(1, 0, 1)``."""
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError as exc:
        raise ParameterError(f"bad coefficient list {text!r}") from exc


def format_coeffs(coeffs: Sequence[int]) -> str:
    return ",".join(str(int(c)) for c in coeffs)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """The field F_{p^m} realized as F_p[x]/(modulus) with a fixed primitive element."""

    p: int
    m: int
    modulus: tuple[int, ...]
    alpha: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    digits: np.ndarray = field(repr=False)
    trace_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.m

    @cached_property
    def place(self) -> np.ndarray:
        return self.p ** np.arange(self.m - 1, -1, -1, dtype=np.int64)

    def __repr__(self) -> str:
        return (
            f"FieldCtx(p={self.p}, m={self.m}, modulus={format_coeffs(self.modulus)}, "
            f"alpha={self.coeffs(self.alpha)})"
        )

    # encoding ---------------------------------------------------------------

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise ParameterError(f"expected at most {self.m} coefficients, got {len(coeffs)}")
        c = list(coeffs) + [0] * (self.m - len(coeffs))
        return int(sum((ci % self.p) * int(w) for ci, w in zip(c, self.place)))

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[x])

    def scalar(self, s: int) -> int:
        """Embed ``s`` in F_p into the field."""
        return (s % self.p) * self.p ** (self.m - 1)

    def elements(self) -> range:
        return range(self.q)

    def encode(self, digits: np.ndarray) -> np.ndarray:
        """Vectorized inverse of ``digits``: last axis holds coefficient vectors."""
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self.place

    # arithmetic -------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.encode((self.digits[a] + self.digits[b]) % self.p))

    def sub(self, a: int, b: int) -> int:
        return int(self.encode((self.digits[a] - self.digits[b]) % self.p))

    def neg(self, a: int) -> int:
        return int(self.encode((-self.digits[a]) % self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ParameterError("negative exponent")
        if e == 0:
            return self.scalar(1)
        if a == 0:
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def arith(self, op: str, a: int, b: int | None = None) -> int:
        """Dispatch on ``op`` in {add, sub, mul, inv, pow}; ``b`` is the exponent for pow."""
        if op == "inv":
            return self.inv(a)
        if op == "pow":
            return self.pow(a, int(b))
        return getattr(self, op)(a, b)

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def alpha_pow(self, t: int) -> int:
        return int(self.exp[t % (self.q - 1)])

    # trace and characters ---------------------------------------------------

    def trace(self, x: int) -> int:
        return int(self.trace_table[x])

    def trace_by_frobenius(self, x: int) -> int:
        """tr(x) = x + x^p + ... + x^{p^{m-1}}, summed in the field."""
        acc = 0
        y = x
        for _ in range(self.m):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        c = self.coeffs(acc)
        if any(c[1:]):
            raise ConsistencyError(f"trace of {x} left the prime field")
        return c[0]

    def discrete_log(self, x: int) -> int:
        if x == 0:
            raise ZeroArgument("log of zero")
        return int(self.log[x])

    def quadratic_character(self, x: int) -> int:
        if self.p == 2:
            raise EvenCharacteristic("quadratic character needs odd characteristic")
        if x == 0:
            raise ZeroArgument("quadratic character of zero")
        return 1 if self.log[x] % 2 == 0 else -1

    eta = quadratic_character

    def is_square(self, x: int) -> bool:
        return x != 0 and self.log[x] % 2 == 0

    def in_prime_field(self, x: int) -> bool:
        return not self.digits[x][1:].any()


def _find_primitive(p: int, m: int, f: Sequence[int]) -> tuple[int, ...]:
    q = p**m
    ps = prime_factors(q - 1)
    for c in itertools.product(range(p), repeat=m):
        poly = _trim(list(c))
        if not poly:
            continue
        if all(poly_powmod(poly, (q - 1) // r, f, p) != [1] for r in ps):
            return c
    raise NoPrimitiveElement(f"no generator found for F_{p}^{m} mod {f}")


def build_field(
    p: int,
    m: int,
    modulus: Sequence[int] | None = None,
    *,
    alpha: Sequence[int] | None = None,
    allow_even: bool = False,
) -> FieldCtx:
    """Construct F_{p^m}.

    Parameters
    ----------
    p, m
        Characteristic and extension degree.
    modulus
        Monic degree-``m`` polynomial, low degree first. Defaults to the
        lexicographically smallest monic irreducible.
    alpha
        Coefficient vector of the primitive element. Defaults to the
        lexicographically smallest generator of the multiplicative group.
    allow_even
        Permit ``p == 2``; only characteristic-free computations make sense then.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if p == 2 and not allow_even:
        raise EvenCharacteristic("p = 2 requires allow_even=True")
    if m < 1:
        raise ParameterError("m must be >= 1")
    if modulus is None:
        f = smallest_irreducible(p, m)
    else:
        f = tuple(int(c) % p for c in modulus)
        if len(f) != m + 1 or f[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {m}, got {f}")
        if not is_irreducible(f, p):
            raise ReducibleModulus(f"{format_coeffs(f)} is reducible over F_{p}")

    q = p**m
    if alpha is None:
        a = _find_primitive(p, m, f)
    else:
        a = tuple(int(c) % p for c in alpha) + (0,) * (m - len(alpha))
        poly = _trim(list(a))
        if not poly or any(poly_powmod(poly, (q - 1) // r, f, p) == [1] for r in prime_factors(q - 1)):
            raise NoPrimitiveElement(f"{a} does not generate F_{q}^*")

    place = [p ** (m - 1 - i) for i in range(m)]

    def enc(poly: list[int]) -> int:
        c = poly + [0] * (m - len(poly))
        return sum(ci * w for ci, w in zip(c, place))

    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur = [1]
    apoly = _trim(list(a))
    for t in range(q - 1):
        x = enc(cur)
        if log[x] != -1:
            raise NoPrimitiveElement(f"alpha has order {t} < {q - 1}")
        exp[t] = x
        log[x] = t
        cur = poly_mulmod(cur, apoly, f, p)
    if cur != [1]:
        raise NoPrimitiveElement("alpha^(q-1) != 1")

    digits = np.zeros((q, m), dtype=np.int64)
    idx = np.arange(q, dtype=np.int64)
    for i in range(m):
        digits[:, i] = (idx // place[i]) % p

    # tr is F_p-linear: tabulate it on the power basis, then extend
    ctx = FieldCtx(p, m, f, enc(list(a)), exp, log, digits, np.zeros(q, dtype=np.int64))
    basis_tr = np.array(
        [ctx.trace_by_frobenius(enc([0] * i + [1])) for i in range(m)], dtype=np.int64
    )
    object.__setattr__(ctx, "trace_table", (digits @ basis_tr) % p)
    return ctx
