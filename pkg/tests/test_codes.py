import itertools
import random
from collections import Counter

import numpy as np
import pytest

from homtrace import kernels
from homtrace.charsums import lemma1_holds
from homtrace.codes import (
    build_code,
    compare_realizations,
    enumeration_work,
    gray_image_params,
    gray_image_rank,
    group_action_check,
    hom_weight_distribution,
    primitive_elements,
    unipotent_gray_permutation,
)
from homtrace.errors import BudgetExceeded, ContextMismatch, Unsupported
from homtrace.gray import hom_weight_vector

CASES = [
    (3, 2, 2, "d1", None),
    (3, 2, 2, "d2", None),
    (3, 2, 2, "d3", 2),
    (3, 1, 3, "d2", None),
    (2, 2, 2, "d2", None),
    (3, 3, 2, "d3", 2),
    (5, 2, 2, "d3", 3),
]


def code_of(p, m, k, v, n):
    return build_code(p, m, k, v, n, allow_even=p == 2)


def direct_distribution(code):
    """Evaluate every a in the extension ring and weigh it symbol by symbol."""
    c = Counter()
    R = code.ring
    for a in R.enumerate("all"):
        c[hom_weight_vector(code.evaluate(a), code.p, code.k)] += 1
    return dict(c)


@pytest.mark.parametrize("p,m,k,v,n", [(3, 2, 2, "d2", None), (3, 2, 2, "d1", None), (2, 2, 2, "d2", None)])
def test_kernel_matches_direct_evaluation(p, m, k, v, n):
    code = code_of(p, m, k, v, n)
    assert hom_weight_distribution(code) == direct_distribution(code)


def test_d2_worked_case():
    code = build_code(3, 2, 2, "d2")
    assert hom_weight_distribution(code) == {0: 1, 144: 72, 162: 8}
    assert gray_image_params(code) == (216, 4, 144)
    R = code.ring
    assert not code.evaluate(R.zero()).any()
    assert code.hom_weight_of(code.evaluate_symbols(R.one())) == 144
    # for k = 2, u spans the socle: 6 of 8 heads have nonzero trace, 9 tails each, weight 3
    assert code.hom_weight_of(code.evaluate_symbols(R.u_power(1))) == 6 * 9 * 3
    with pytest.raises(ContextMismatch):
        code.evaluate((1, 0, 0))


def test_maximal_ideal_vs_socle_weights_k3():
    code = build_code(3, 2, 3, "d2")
    R = code.ring
    N2, P = code.length, 3 ** (2 * 3)
    assert N2 == 8 * P
    # u is in M but outside the socle, u^2 spans the socle
    assert code.hom_weight_of(code.evaluate_symbols(R.u_power(1))) == 2 * N2 // 3
    assert code.hom_weight_of(code.evaluate_symbols(R.u_power(2))) == 2 * (N2 + P) // 3


def test_d1_params():
    code = build_code(5, 2, 2, "d1")
    assert gray_image_params(code) == (1500, 4, 1000)


@pytest.mark.parametrize("case", CASES)
@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
def test_backends_projective_and_parallel_agree(case, backend):
    code = code_of(*case)
    ref = hom_weight_distribution(code, projective=False, backend="numpy")
    assert hom_weight_distribution(code, backend=backend) == ref
    assert hom_weight_distribution(code, backend=backend, workers=4) == ref
    assert hom_weight_distribution(code, backend=backend, projective=False, workers=3) == ref


def test_parallel_histogram_is_exactly_serial():
    code = build_code(3, 3, 2, "d2")
    t = code.tables
    size = int(t.weight.max()) * code.n + 1
    ranges = [(0, code.codeword_count)]
    a = kernels.histogram(code.generator, t.add, t.weight, 3, ranges, size)
    b = kernels.histogram(code.generator, t.add, t.weight, 3, ranges, size, workers=4)
    assert a.tobytes() == b.tobytes()


def test_split_ranges_cover_exactly():
    pieces = kernels.split_ranges([(0, 10), (20, 23), (5, 5)], 4)
    covered = [i for a, b in pieces for i in range(a, b)]
    assert covered == list(range(10)) + [20, 21, 22]


@pytest.mark.parametrize("case", CASES)
def test_gray_rank_full(case):
    code = code_of(*case)
    assert gray_image_rank(code) == code.dimension


def test_codeword_index_order():
    code = build_code(3, 2, 2, "d2")
    rng = random.Random(1)
    for idx in rng.sample(range(81), 10):
        a = code.element_of_index(idx)
        assert np.array_equal(code.symbols_of_index(idx), code.evaluate_symbols(a))
        assert code.ring.index(a) == idx


def test_budget():
    code = build_code(3, 2, 2, "d2")
    assert enumeration_work(code, projective=False) == 81 * 72
    with pytest.raises(BudgetExceeded):
        hom_weight_distribution(code, budget=10)


def test_budget_env(monkeypatch):
    code = build_code(3, 2, 2, "d2")
    monkeypatch.setenv("HOMTRACE_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        hom_weight_distribution(code)


@pytest.mark.parametrize("case", CASES[:4])
def test_lemma1_on_random_codewords(case):
    code = code_of(*case)
    rng = random.Random(11)
    for _ in range(100):
        idx = rng.randrange(code.codeword_count)
        y = code.gray_image(code.symbols_of_index(idx))
        assert lemma1_holds(y, code.p)


@pytest.mark.parametrize("variant", ["d1", "d2"])
def test_group_action(variant):
    v = group_action_check(build_code(3, 2, 2, variant), trials=20, seed=3)
    assert v.passed, v.failures
    assert v.group_order == build_code(3, 2, 2, variant).length


def test_group_action_identity_and_d3():
    code = build_code(3, 2, 2, "d1")
    x = code.defining_set[5]
    assert group_action_check(code, pairs=[(x, x)]).passed
    with pytest.raises(Unsupported):
        group_action_check(build_code(3, 2, 2, "d3", 2))


def test_unipotent_permutation_is_gray_symmetry():
    from homtrace.gray import gray_map

    p, k = 3, 3
    for shift in itertools.product(range(p), repeat=k - 1):
        r = (1,) + shift
        pi = unipotent_gray_permutation(p, k, r)
        assert sorted(pi) == list(range(p ** (k - 1)))
        for a in itertools.product(range(p), repeat=k):
            ra = tuple(sum(r[i] * a[t - i] for i in range(t + 1)) % p for t in range(k))
            assert tuple(np.asarray(gray_map(a, p, k))[pi]) == gray_map(ra, p, k)


def test_realizations_agree():
    alphas = primitive_elements(3, 2)[:3]
    cmp = compare_realizations(3, 2, 2, "d2", moduli=[(1, 0, 1), (2, 1, 1)], alphas=[None])
    assert cmp.equal
    cmp = compare_realizations(3, 2, 2, "d3", 2, moduli=[(1, 0, 1)], alphas=alphas)
    assert cmp.equal and len(cmp.distributions) == 3


def test_benchmark_script_runs(tmp_path):
    import importlib.util
    import json
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    loader = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(loader)
    loader.loader.exec_module(mod)
    out = tmp_path / "b.json"
    assert mod.main(["--case", "3,2,2,d2", "--repeat", "1", "--json", str(out)]) == 0
    rows = json.loads(out.read_text())["rows"]
    assert {r["backend"] for r in rows} == set(kernels.BACKENDS)
    assert all(r["distribution"] == {"0": 1, "144": 72, "162": 8} for r in rows)
