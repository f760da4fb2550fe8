import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from homtrace.charsums import (
    MultChar,
    gauss_sum_numeric,
    lemma1_holds,
    quadratic_char,
    quadratic_gauss_exact,
    scaled_theta_sum,
    square_sums,
    theta,
    zero_trace_count,
)
from homtrace.errors import EvenCharacteristic, ParameterError, ZeroArgument
from homtrace.field import build_field


def test_theta_examples():
    assert abs(theta([0, 0], 3) - 2) < 1e-12
    assert abs(theta([1, 2, 0], 3)) < 1e-12
    assert abs(scaled_theta_sum([1, 2, 0], 3)) < 1e-12
    assert lemma1_holds([1, 2, 0], 3)


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 50), max_size=40))
def test_lemma1_identity(p, y):
    assert lemma1_holds(y, p)


GAUSS = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (3, 4), (11, 1), (13, 1)]


@pytest.mark.parametrize("p,m", GAUSS)
def test_quadratic_gauss(p, m):
    F = build_field(p, m)
    g = gauss_sum_numeric(quadratic_char(F))
    exact = quadratic_gauss_exact(p, m)
    assert abs(g - exact.value) <= 1e-9
    assert abs(abs(g) - math.sqrt(p) ** m) <= 1e-9


def test_gauss_examples():
    assert abs(quadratic_gauss_exact(3, 1).value - 1j * math.sqrt(3)) < 1e-12
    assert quadratic_gauss_exact(3, 2).as_int() == 3
    assert abs(quadratic_gauss_exact(5, 1).value - math.sqrt(5)) < 1e-12
    # direct summation over F_3: omega - omega^2
    w = cmath.exp(2j * math.pi / 3)
    assert abs(gauss_sum_numeric(quadratic_char(build_field(3, 1))) - (w - w * w)) < 1e-12
    with pytest.raises(EvenCharacteristic):
        quadratic_gauss_exact(2, 2)


def test_gauss_trivial_and_order4(f9):
    assert abs(gauss_sum_numeric(MultChar(f9, 1)) + 1) < 1e-9
    assert abs(gauss_sum_numeric(MultChar(f9, 8, 0)) + 1) < 1e-9
    assert abs(abs(gauss_sum_numeric(MultChar(f9, 4))) - 3) < 1e-9
    with pytest.raises(ParameterError):
        MultChar(f9, 3)


def test_mult_char_is_multiplicative(f9):
    psi = MultChar(f9, 4, 1)
    for a in range(1, 9):
        for b in range(1, 9):
            assert abs(psi(f9.mul(a, b)) - psi(a) * psi(b)) < 1e-12
    assert psi.order == 4 and psi.power(2).order == 2 and psi.power(4).is_trivial
    assert psi(0) == 0


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (7, 1)])
def test_square_sums(p, m):
    F = build_field(p, m)
    Q, N = square_sums(F)
    G = quadratic_gauss_exact(p, m).value
    assert abs(Q + N + 1) < 1e-9
    assert abs(Q - (G - 1) / 2) < 1e-9


def test_zero_trace_count_examples(f9):
    one = f9.scalar(1)
    assert zero_trace_count(f9, one, 2).direct == 1
    assert zero_trace_count(f9, f9.alpha, 2).direct == 0
    assert zero_trace_count(f9, f9.alpha_pow(2), 2).direct == 1
    with pytest.raises(ZeroArgument):
        zero_trace_count(f9, 0, 2)


@pytest.mark.parametrize("p,m,nprimes", [(3, 2, [1, 2, 4, 8]), (3, 3, [1, 2, 13, 26]), (5, 2, [3, 4, 6])])
def test_zero_trace_formula(p, m, nprimes):
    F = build_field(p, m)
    for n in nprimes:
        for b in range(1, F.q):
            r = zero_trace_count(F, b, n)
            assert r.agree
            assert round(r.via_formula.real) == r.direct
