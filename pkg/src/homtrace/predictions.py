"""Closed-form homogeneous weight distributions of the trace codes.

Every arm returns exact integers. The Theorem 5 arm only bounds the weights of
the socle codewords, so it yields a :class:`WeightInterval` instead of a point
distribution.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from homtrace.codes import WeightDistribution
from homtrace.defining_sets import d3_params
from homtrace.errors import ConsistencyError, EvenCharacteristic, NoSemiprimitiveK, OutsideTheorems, ParameterError


def _int(x: Fraction | int) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ConsistencyError(f"predicted weight {x} is not an integer")
    return int(x)


def socle_scale(p: int, m: int, k: int) -> int:
    """p^{(k-1)(m+1)}: the Gray-length multiplier per field-level coordinate."""
    return p ** ((k - 1) * (m + 1))


def code_lengths(p: int, m: int, k: int, nprime: int | None = None) -> dict[str, int]:
    """Gray lengths N_1 and N_2, plus N_3 when N' is given."""
    q, P = p**m, socle_scale(p, m, k)
    out = {"N1": (q - 1) * P // 2 if p > 2 else None, "N2": (q - 1) * P}
    if nprime is not None:
        out["N3"] = d3_params(p, m, nprime).n1 * P
    return out


def quadratic_hypothesis(p: int, m: int) -> bool:
    """True when m is even or p = 3 (mod 4)."""
    return m % 2 == 0 or p % 4 == 3


def semiprimitive_k(p: int, n: int, m: int) -> int:
    """Smallest k' in 1..m with p^{k'} = -1 (mod n)."""
    for kk in range(1, m + 1):
        if pow(p, kk, n) == n - 1:
            return kk
    raise NoSemiprimitiveK(f"no k' <= {m} with {p}^k' = -1 mod {n}")


def _sqrt_compare(lhs: int, coeff: int, q: int) -> bool:
    """lhs <= coeff * sqrt(q) for coeff >= 0, exactly."""
    if lhs <= 0:
        return True
    return lhs * lhs <= coeff * coeff * q


@dataclass(frozen=True)
class WeightInterval:
    """Theorem 5: the p^m - 1 socle codewords take at most N'_2 weights in
    [A (q - (N'_2-1) sqrt q) / N'_2, A (q + (N'_2-1) sqrt q) / N'_2] with
    A = p^{(k-1)(m+1)-1}; every other nonzero codeword has weight A (q-1)/N'_2."""

    p: int
    m: int
    k: int
    nprime2: int
    fixed_weight: int
    fixed_freq: int
    socle_freq: int

    @property
    def scale(self) -> int:
        return socle_scale(self.p, self.m, self.k) // self.p

    @property
    def low(self) -> float:
        q, n2 = self.p**self.m, self.nprime2
        return self.scale * (q - (n2 - 1) * math.sqrt(q)) / n2

    @property
    def high(self) -> float:
        q, n2 = self.p**self.m, self.nprime2
        return self.scale * (q + (n2 - 1) * math.sqrt(q)) / n2

    @property
    def max_distinct_nonzero(self) -> int:
        return self.nprime2 + 1

    def contains(self, w: int) -> bool:
        """Exact test of low <= w <= high."""
        q, n2, A = self.p**self.m, self.nprime2, self.scale
        c = A * (n2 - 1)
        return _sqrt_compare(A * q - n2 * w, c, q) and _sqrt_compare(n2 * w - A * q, c, q)

    def check(self, dist: WeightDistribution) -> list[str]:
        """Reasons ``dist`` violates the theorem; empty when consistent."""
        problems = []
        nz = dist.nonzero_weights
        if len(nz) > self.max_distinct_nonzero:
            problems.append(f"{len(nz)} nonzero weights > {self.max_distinct_nonzero}")
        out = [w for w in nz if w != self.fixed_weight and not self.contains(w)]
        if out:
            problems.append(f"weights {out} outside [{self.low:.6g}, {self.high:.6g}]")
        fixed = dist.entries.get(self.fixed_weight, 0)
        if fixed < self.fixed_freq:
            problems.append(f"weight {self.fixed_weight} has frequency {fixed} < {self.fixed_freq}")
        if dist.total != self.fixed_freq + self.socle_freq + 1:
            problems.append("total count differs from p^{km}")
        return problems

    def to_json(self) -> dict:
        return {
            "low": self.low,
            "high": self.high,
            "fixed_weight": self.fixed_weight,
            "fixed_freq": self.fixed_freq,
            "socle_freq": self.socle_freq,
            "max_distinct_nonzero": self.max_distinct_nonzero,
        }


@dataclass(frozen=True)
class PredictedDistribution:
    p: int
    m: int
    k: int
    variant: str
    nprime: int | None
    provenance: str
    case: str
    distribution: WeightDistribution | None = None
    interval: WeightInterval | None = None
    details: dict = field(default_factory=dict)

    @property
    def is_point(self) -> bool:
        return self.distribution is not None

    @property
    def length(self) -> int:
        lengths = code_lengths(self.p, self.m, self.k, self.nprime)
        return lengths[{"d1": "N1", "d2": "N2", "d3": "N3"}[self.variant]]

    @property
    def dimension(self) -> int:
        return self.k * self.m

    def matches(self, dist: WeightDistribution) -> bool:
        if self.is_point:
            return self.distribution == dist
        return not self.interval.check(dist)


def _point(weights: list[tuple[Fraction | int, int]]) -> WeightDistribution:
    c = Counter({0: 1})
    for w, f in weights:
        c[_int(w)] += f
    return WeightDistribution(dict(c))


def predict_wdist(p: int, m: int, k: int, variant: str, nprime: int | None = None) -> PredictedDistribution:
    """Dispatch to the theorem covering (p, m, k, variant, N')."""
    variant = variant.lower()
    if k < 2 or m < 1:
        raise ParameterError("need k >= 2 and m >= 1")
    q = p**m
    P = socle_scale(p, m, k)
    total = p ** (k * m)
    r = Fraction(p - 1, p)
    base = dict(p=p, m=m, k=k, variant=variant, nprime=nprime)

    if variant == "d1":
        if p == 2:
            raise EvenCharacteristic("D1 needs odd p")
        N1 = Fraction((q - 1) * P, 2)
        if m % 2 == 0:
            s = p ** (m // 2)
            dist = _point(
                [
                    (r * (N1 - P * Fraction(s - 1, 2)), (q - 1) // 2),
                    (r * N1, total - q),
                    (r * (N1 + P * Fraction(s + 1, 2)), (q - 1) // 2),
                ]
            )
            prov = "theorem1" if p % 4 == 1 else "remark1"
            return PredictedDistribution(**base, provenance=prov, case="m even", distribution=dist)
        if p % 4 == 3:
            dist = _point([(r * N1, total - q), (r * (N1 + Fraction(P, 2)), q - 1)])
            return PredictedDistribution(**base, provenance="theorem2", case="m odd, p = 3 mod 4", distribution=dist)
        raise OutsideTheorems("D1 with m odd and p = 1 mod 4 is not covered")

    if variant == "d2":
        N2 = (q - 1) * P
        dist = _point([(r * N2, total - q), (r * (N2 + P), q - 1)])
        return PredictedDistribution(**base, provenance="theorem3", case="any p", distribution=dist)

    if variant != "d3":
        raise ParameterError(f"unknown variant {variant!r}")
    if nprime is None:
        raise ParameterError("D3 requires N'")
    prm = d3_params(p, m, nprime)
    n2 = prm.nprime2
    A = P // p
    details = {"nprime1": prm.nprime1, "nprime2": n2, "n1": prm.n1}

    if n2 == 1:
        if not quadratic_hypothesis(p, m):
            raise OutsideTheorems("N'_2 = 1 needs m even, or m odd with p = 3 mod 4")
        dist = _point([((q - 1) * A, total - q), (p ** (k * (m + 1) - 2), q - 1)])
        return PredictedDistribution(**base, provenance="theorem4", case="N'_2 = 1", distribution=dist, details=details)

    s = p ** (m // 2) if m % 2 == 0 else None
    if m % 2 == 0 and n2 > 2:
        try:
            kk = semiprimitive_k(p, n2, m)
        except NoSemiprimitiveK:
            kk = None
        if kk is not None:
            if m % (2 * kk):
                raise ConsistencyError(f"k'={kk} does not divide m/2")
            t = m // (2 * kk)
            details.update({"k_prime": kk, "t": t})
            table_iv = n2 % 2 == 0 and p % 2 == 1 and t % 2 == 1 and ((p**kk + 1) // n2) % 2 == 1
            sgn = (-1) ** t
            if table_iv:
                if not n2 < s + 1:
                    raise OutsideTheorems("Table IV needs N'_2 < p^{m/2} + 1")
                rows = [
                    (Fraction(A * (q - (n2 - 1) * s), n2), (q - 1) // n2),
                    (Fraction(A * (q - 1), n2), total - q),
                    (Fraction(A * (q + s), n2), (n2 - 1) * (q - 1) // n2),
                ]
                prov = "theorem6-table4"
            else:
                if not s + sgn * (n2 - 1) > 0:
                    raise OutsideTheorems("Table V needs p^{m/2} + (-1)^t (N'_2 - 1) > 0")
                rows = [
                    (Fraction(A * (q + sgn * (n2 - 1) * s), n2), (q - 1) // n2),
                    (Fraction(A * (q - 1), n2), total - q),
                    (Fraction(A * (q - sgn * s), n2), (n2 - 1) * (q - 1) // n2),
                ]
                prov = "theorem6-table5"
            return PredictedDistribution(
                **base, provenance=prov, case=f"semiprimitive, k'={kk}, t={t}", distribution=_point(rows), details=details
            )

    # Theorem 5: 1 < N'_2 < p^{m/2} + 1
    if quadratic_hypothesis(p, m) and (n2 - 1) ** 2 < q:
        interval = WeightInterval(p, m, k, n2, _int(Fraction(A * (q - 1), n2)), total - q, q - 1)
        return PredictedDistribution(
            **base, provenance="theorem5", case="1 < N'_2 < p^{m/2} + 1", interval=interval, details=details
        )
    if m % 2 == 0 and n2 > 2:
        raise NoSemiprimitiveK(f"no semiprimitive k' for N'_2={n2}, and Theorem 5 does not apply")
    raise OutsideTheorems(f"D3 with N'_2={n2} at (p, m)=({p}, {m}) is not covered")


# ---------------------------------------------------------------------------
# ratio relations between families


def _weights(pred: PredictedDistribution) -> list[int]:
    return pred.distribution.nonzero_weights


def remark3_ratios(p: int, m: int, k: int) -> dict[str, Fraction]:
    """Two-weight D1 (Theorem 2) against D2 (Theorem 3): w'_i / w''_i and N1 / N2."""
    a = predict_wdist(p, m, k, "d1")
    b = predict_wdist(p, m, k, "d2")
    wa, wb = _weights(a), _weights(b)
    return {
        "w1": Fraction(wa[0], wb[0]),
        "w2": Fraction(wa[1], wb[1]),
        "length": Fraction(a.length, b.length),
        "freq_equal": [a.distribution.entries[w] for w in wa] == [b.distribution.entries[w] for w in wb],
    }


def remark4_ratios(p: int, m: int, k: int, nprime: int) -> dict[str, Fraction]:
    """D2 (Theorem 3) against D3 with N'_2 = 1 (Theorem 4)."""
    a = predict_wdist(p, m, k, "d2")
    b = predict_wdist(p, m, k, "d3", nprime)
    if b.provenance != "theorem4":
        raise OutsideTheorems("needs the Theorem 4 arm")
    wa, wb = _weights(a), _weights(b)
    return {
        "w1": Fraction(wa[0], wb[0]),
        "w2": Fraction(wa[1], wb[1]),
        "length": Fraction(a.length, b.length),
        "freq_equal": [a.distribution.entries[w] for w in wa] == [b.distribution.entries[w] for w in wb],
    }


def remark5_ratios(p: int, m: int, k: int, nprime: int) -> dict[str, Fraction]:
    """Three-weight D1 (Theorem 1) against Theorem 6 with t odd.

    ``w2`` and ``w3`` compare the middle and top weights, ``w1`` compares the
    smallest Theorem 1 weight with the Table weight A (q - (N'_2-1) p^{m/2}) / N'_2.
    """
    a = predict_wdist(p, m, k, "d1")
    b = predict_wdist(p, m, k, "d3", nprime)
    if not b.provenance.startswith("theorem6") or b.details["t"] % 2 == 0:
        raise OutsideTheorems("needs the Theorem 6 arm with t odd")
    wa, wb = _weights(a), _weights(b)
    n2 = b.details["nprime2"]
    return {
        "w1": Fraction(wa[0], wb[0]),
        "w2": Fraction(wa[1], wb[1]),
        "w3": Fraction(wa[2], wb[2]),
        "length": Fraction(a.length, b.length),
        "expected": Fraction((p - 1) * n2, 2),
    }


def comparison_weights(p: int, m: int) -> dict[str, list[int] | int]:
    """k = 2 weights and length of the comparison codes in Tables I/II, whose
    Gray map sends each symbol of F_p + uF_p to two coordinates."""
    s = p ** (m // 2)
    base = p**m - p ** (m - 1)
    if m % 2 == 0:
        three = [base * (p**m - s), base * (p**m - 1), base * (p**m + s)]
    else:
        three = []
    two = [base * (p**m - 1), p ** (m - 1) * (p ** (m + 1) - p**m)]
    return {"three": three, "two": two, "length": p**m * (p**m - 1)}


def remark2_ratios(p: int, m: int) -> dict[str, Fraction]:
    """k = 2 weights and length over the comparison column; all equal p/2."""
    pred = predict_wdist(p, m, 2, "d1")
    other = comparison_weights(p, m)
    ref = other["three"] if m % 2 == 0 else other["two"]
    out = {f"w{i + 1}": Fraction(a, b) for i, (a, b) in enumerate(zip(_weights(pred), ref))}
    out["length"] = Fraction(pred.length, other["length"])
    out["expected"] = Fraction(p, 2)
    return out
