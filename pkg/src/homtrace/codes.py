"""Trace codes C_D = {(Tr(a d))_{d in D} : a in the extension ring} and their
exhaustive homogeneous weight distributions.

Codewords are addressed by an index in ``range(p**(k*m))``: the base-p digits
of the index, most significant first, are the F_p coordinates of ``a`` in the
basis ``x^i u^j`` ordered by ``(j, i)``. Index order therefore agrees with the
lexicographic ring order of ``a``.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from homtrace import kernels
from homtrace.defining_sets import DefiningSet, build_defining_set
from homtrace.errors import BudgetExceeded, ContextMismatch, RankDeficient, Unsupported
from homtrace.field import build_field
from homtrace.gray import gray_matrix, symbol_tables
from homtrace.linalg import in_row_space, rank_mod_p
from homtrace.ring import RingCtx, RingElem

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    env = os.environ.get("HOMTRACE_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class WeightDistribution:
    """Exact map weight -> frequency, weights ascending."""

    entries: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "entries", {int(w): int(f) for w, f in sorted(self.entries.items()) if f})

    @classmethod
    def from_histogram(cls, hist: np.ndarray) -> "WeightDistribution":
        nz = np.nonzero(hist)[0]
        return cls({int(w): int(hist[w]) for w in nz})

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    @property
    def nonzero_weights(self) -> list[int]:
        return [w for w in self.entries if w]

    @property
    def min_nonzero(self) -> int:
        return min(self.nonzero_weights)

    @property
    def max_weight(self) -> int:
        return max(self.entries)

    def items(self):
        return self.entries.items()

    def records(self) -> list[dict[str, int]]:
        return [{"w": w, "f": f} for w, f in self.entries.items()]

    def __eq__(self, other):
        if isinstance(other, WeightDistribution):
            return dict(self.entries) == dict(other.entries)
        if isinstance(other, Mapping):
            return dict(self.entries) == {int(w): int(f) for w, f in other.items() if f}
        return NotImplemented

    def __repr__(self) -> str:
        return f"WeightDistribution({dict(self.entries)})"


class TraceCode:
    """C_D for a defining set D inside the extension ring."""

    def __init__(self, defining_set: DefiningSet):
        self.defining_set = defining_set
        self.ring: RingCtx = defining_set.ring
        self.tables = symbol_tables(self.p, self.k)

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def k(self) -> int:
        return self.ring.k

    @property
    def dimension(self) -> int:
        """F_p-dimension km of the extension ring."""
        return self.k * self.m

    @property
    def n(self) -> int:
        return self.defining_set.size

    @property
    def length(self) -> int:
        return self.defining_set.gray_length

    @property
    def codeword_count(self) -> int:
        return self.p**self.dimension

    def __repr__(self) -> str:
        ds = self.defining_set
        extra = f", N'={ds.params.nprime}" if ds.params else ""
        return f"TraceCode({ds.variant.upper()}, p={self.p}, m={self.m}, k={self.k}{extra})"

    # construction ----------------------------------------------------------

    def basis_element(self, row: int) -> RingElem:
        """x^i u^j for generator row ``j*m + i``."""
        j, i = divmod(row, self.m)
        F = self.ring.field
        coeffs = [0] * self.m
        coeffs[i] = 1
        return self.ring.u_power(j, F.from_coeffs(coeffs))

    @cached_property
    def generator(self) -> np.ndarray:
        """(km, n) symbol codes of Ev(x^i u^j)."""
        rows = [self.evaluate_symbols(self.basis_element(r)) for r in range(self.dimension)]
        out = np.array(rows, dtype=np.int64)
        out.setflags(write=False)
        return out

    def evaluate(self, a: RingElem) -> np.ndarray:
        """Ev(a) = (Tr(a d))_{d in D} as an (n, k) array over F_p."""
        if len(a) != self.k:
            raise ContextMismatch(f"expected an element with {self.k} coefficients")
        prod = self.ring.mul_vec(np.asarray(a, dtype=np.int64)[None, :], self.defining_set.elements)
        return self.ring.field.trace_table[prod]

    def evaluate_symbols(self, a: RingElem) -> np.ndarray:
        return self.tables.encode(self.evaluate(a))

    def index_digits(self, idx: int) -> list[int]:
        K = self.dimension
        return [(idx // self.p ** (K - 1 - r)) % self.p for r in range(K)]

    def element_of_index(self, idx: int) -> RingElem:
        digits = self.index_digits(idx)
        F = self.ring.field
        return tuple(F.from_coeffs(digits[j * self.m : (j + 1) * self.m]) for j in range(self.k))

    def symbols_of_index(self, idx: int) -> np.ndarray:
        """Codeword symbols as an F_p-combination of generator rows."""
        t = self.tables
        cur = np.zeros(self.n, dtype=np.int64)
        for r, d in enumerate(self.index_digits(idx)):
            for _ in range(d):
                cur = t.add[cur, self.generator[r]]
        return cur

    def gray_image(self, symbols: np.ndarray) -> np.ndarray:
        return self.tables.gray[np.asarray(symbols, dtype=np.int64)].reshape(-1)

    @cached_property
    def generator_gray(self) -> np.ndarray:
        """(km, p^{k-1} n) generator matrix of the Gray image over F_p."""
        return self.tables.gray[self.generator].reshape(self.dimension, -1)

    def hom_weight_of(self, symbols: np.ndarray) -> int:
        return int(self.tables.hom[np.asarray(symbols, dtype=np.int64)].sum())


def build_code(
    p: int,
    m: int,
    k: int,
    variant: str,
    nprime: int | None = None,
    modulus: Sequence[int] | None = None,
    *,
    alpha: Sequence[int] | None = None,
    allow_even: bool = False,
) -> TraceCode:
    field_ = build_field(p, m, modulus, alpha=alpha, allow_even=allow_even)
    ring = RingCtx(field_, k)
    return TraceCode(build_defining_set(ring, variant, nprime))


def evaluate_codeword(a: RingElem, D: DefiningSet) -> np.ndarray:
    return TraceCode(D).evaluate(a)


# ---------------------------------------------------------------------------
# enumeration


def enumeration_ranges(code: TraceCode, projective: bool = True) -> list[tuple[int, int]]:
    """Index ranges to enumerate. The projective ranges [p^s, 2 p^s) hold exactly
    the nonzero indices whose leading base-p digit is 1."""
    K, p = code.dimension, code.p
    if not projective:
        return [(0, p**K)]
    return [(p**s, 2 * p**s) for s in range(K)]


def enumeration_work(code: TraceCode, projective: bool = True) -> int:
    """Codeword-symbol operations the enumeration will perform."""
    count = sum(b - a for a, b in enumeration_ranges(code, projective))
    return count * code.n


def hom_weight_distribution(
    code: TraceCode,
    *,
    budget: int | None = None,
    workers: int = 1,
    projective: bool = True,
    backend: str | None = None,
) -> WeightDistribution:
    """Exact homogeneous weight distribution of ``code``.

    Weights are Hamming weights of Gray images, read from a per-symbol table.
    With ``projective`` only one codeword per F_p^* line is visited and its
    count is multiplied by p - 1; scaling by s in F_p^* preserves every
    symbol's homogeneous weight.
    """
    budget = default_budget() if budget is None else budget
    work = enumeration_work(code, projective)
    if work > budget:
        raise BudgetExceeded(
            f"{code!r} needs {work:.3g} codeword-symbol operations, budget is {budget:.3g} "
            "(raise it with --budget or HOMTRACE_BUDGET)"
        )
    t = code.tables
    size = int(t.weight.max()) * code.n + 1
    hist = kernels.histogram(
        code.generator,
        t.add,
        t.weight,
        code.p,
        enumeration_ranges(code, projective),
        size,
        workers=workers,
        backend=backend,
    )
    if projective:
        hist *= code.p - 1
        hist[0] += 1
    if hist[0] != 1:
        raise RankDeficient(f"{int(hist[0]) - 1} nonzero elements give the zero codeword in {code!r}")
    dist = WeightDistribution.from_histogram(hist)
    if dist.total != code.codeword_count:
        raise RankDeficient(f"distribution total {dist.total} != {code.codeword_count}")
    return dist


def gray_image_rank(code: TraceCode) -> int:
    return rank_mod_p(code.generator_gray, code.p)


def gray_image_params(code: TraceCode, dist: WeightDistribution | None = None) -> tuple[int, int, int]:
    """(length, dimension, minimum distance) of the Gray image."""
    rank = gray_image_rank(code)
    if rank != code.dimension:
        raise RankDeficient(f"Gray image of {code!r} has rank {rank}, expected {code.dimension}")
    if dist is None:
        dist = hom_weight_distribution(code)
    return code.length, rank, dist.min_nonzero


# ---------------------------------------------------------------------------
# group actions


@dataclass
class ActionVerdict:
    passed: bool
    trials: int
    regular: bool  # unit action on D is a permutation sending v' to u'
    code_invariant: bool  # permuted generators stay in the code
    gray_transitive: bool  # the D x U action reaches every Gray coordinate
    gray_invariant: bool
    group_order: int
    failures: list[str] = field(default_factory=list)


def _coordinate_permutation(code: TraceCode, r: RingElem) -> np.ndarray | None:
    """perm[x] = position of r*d_x, or None when r*D leaves D."""
    ds = code.defining_set
    prod = code.ring.mul_vec(np.asarray(r, dtype=np.int64)[None, :], ds.elements)
    idx = code.ring.index_vec(prod)
    pos = ds.position
    perm = np.array([pos.get(int(v), -1) for v in idx], dtype=np.int64)
    if (perm < 0).any() or len(set(perm.tolist())) != len(perm):
        return None
    return perm


def unipotent_gray_permutation(p: int, k: int, r: Sequence[int]) -> np.ndarray:
    """Permutation pi of Gray positions with Phi(r a)[j] = Phi(a)[pi[j]] for every a in R,
    where r = 1 + r_1 u + ... has F_p coefficients."""
    gm = gray_matrix(p, k)
    mult = np.zeros((k, k), dtype=np.int64)  # (r a)_t = sum_i r_{t-i} a_i
    for t in range(k):
        for i in range(t + 1):
            mult[t, i] = r[t - i]
    rows = (gm @ mult) % p
    lookup = {tuple(row): j for j, row in enumerate(gm.tolist())}
    return np.array([lookup[tuple(row)] for row in rows.tolist()], dtype=np.int64)


def group_action_check(code: TraceCode, trials: int = 20, seed: int = 0, pairs=None) -> ActionVerdict:
    """Check the coordinate actions on C_{D1} / C_{D2} and their Gray images.

    For unit pairs (u', v') in D the substitution x -> (u'/v') x must permute D,
    send v' to u', and map the code onto itself. Combined with the
    multiplications by 1 + d_1 u + ... (d_i in F_p), which permute each block
    of Gray coordinates, it gives a group of order p^{k-1}|D| acting
    transitively on the Gray coordinates and preserving the Gray image.
    """
    ds = code.defining_set
    if ds.variant not in ("d1", "d2"):
        raise Unsupported("group actions are only claimed for D1 and D2")
    ring, p, k, n = code.ring, code.p, code.k, code.n
    rng = random.Random(seed)
    if pairs is None:
        pairs = [(ds[rng.randrange(n)], ds[rng.randrange(n)]) for _ in range(trials)]
    G = code.generator
    Ggray = code.generator_gray
    blk = p ** (k - 1)
    verdict = ActionVerdict(True, len(pairs), True, True, True, True, n * blk)

    for u1, v1 in pairs:
        r = ring.mul(u1, ring.inv(v1))
        perm = _coordinate_permutation(code, r)
        if perm is None or perm[ds.position[ring.index(v1)]] != ds.position[ring.index(u1)]:
            verdict.regular = False
            verdict.failures.append(f"{ring.format(u1)} / {ring.format(v1)} does not act regularly")
            continue
        permuted = code.tables.gray[G[:, perm]].reshape(code.dimension, -1)
        if not in_row_space(Ggray, permuted, p):
            verdict.code_invariant = False
            verdict.failures.append(f"permutation by {ring.format(r)} leaves the code")
        shift = [1] + [rng.randrange(p) for _ in range(k - 1)]
        pi = unipotent_gray_permutation(p, k, shift)
        both = Ggray.reshape(code.dimension, n, blk)[:, perm][:, :, pi].reshape(code.dimension, -1)
        if not in_row_space(Ggray, both, p):
            verdict.gray_invariant = False
            verdict.failures.append(f"Gray permutation ({ring.format(r)}, {shift}) leaves the image")

    # transitivity: D reaches every position from position 0, U every block index from 0
    orbit = ring.index_vec(ring.mul_vec(ds.elements, np.asarray(ds[0], dtype=np.int64)[None, :]))
    reach = {ds.position.get(int(v), -1) for v in orbit}
    blocks = set()
    for tail in np.ndindex(*(p,) * (k - 1)):
        blocks.add(int(unipotent_gray_permutation(p, k, (1,) + tail)[0]))
    if len(reach) != n or -1 in reach or len(blocks) != blk:
        verdict.gray_transitive = False
        verdict.failures.append("action is not transitive on Gray coordinates")

    verdict.passed = verdict.regular and verdict.code_invariant and verdict.gray_transitive and verdict.gray_invariant
    return verdict


# ---------------------------------------------------------------------------
# cross-realization comparisons


def primitive_elements(p: int, m: int, modulus=None) -> list[tuple[int, ...]]:
    """Coefficient vectors of all generators of F_{p^m}^*, in lex order."""
    F = build_field(p, m, modulus)
    return [F.coeffs(x) for x in range(1, F.q) if math.gcd(int(F.log[x]), F.q - 1) == 1]


@dataclass
class RealizationComparison:
    labels: list[str]
    distributions: list[WeightDistribution]

    @property
    def equal(self) -> bool:
        return all(d == self.distributions[0] for d in self.distributions[1:])


def compare_realizations(
    p: int,
    m: int,
    k: int,
    variant: str,
    nprime: int | None = None,
    *,
    moduli: Iterable[Sequence[int] | None] = (None,),
    alphas: Iterable[Sequence[int] | None] = (None,),
    **kwargs,
) -> RealizationComparison:
    """Enumerate the same construction under several (modulus, alpha) choices."""
    labels, dists = [], []
    for f in moduli:
        for a in alphas:
            code = build_code(p, m, k, variant, nprime, f, alpha=a)
            F = code.ring.field
            labels.append(f"modulus={F.modulus} alpha={F.coeffs(F.alpha)}")
            dists.append(hom_weight_distribution(code, **kwargs))
    return RealizationComparison(labels, dists)
