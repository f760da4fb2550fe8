import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homtrace.errors import DivisionByZero, EvenCharacteristic, NonPrime, ParameterError, ReducibleModulus, ZeroArgument
from homtrace.field import build_field, is_irreducible, parse_coeffs, smallest_irreducible


def brute_irreducible(f, p):
    """No monic factor of degree 1..deg/2 by trial multiplication."""
    m = len(f) - 1
    products = set()
    for d in range(1, m // 2 + 1):
        for a in itertools.product(range(p), repeat=d):
            for b in itertools.product(range(p), repeat=m - d):
                g, h = list(a) + [1], list(b) + [1]
                prod = [0] * (m + 1)
                for i, x in enumerate(g):
                    for j, y in enumerate(h):
                        prod[i + j] = (prod[i + j] + x * y) % p
                products.add(tuple(prod))
    return tuple(f) not in products


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2), (3, 4)])
def test_irreducibility_matches_trial_factoring(p, m):
    for tail in itertools.product(range(p), repeat=m):
        f = tail + (1,)
        assert is_irreducible(f, p) == brute_irreducible(f, p), f


def test_f9_defaults(f9):
    assert f9.modulus == (1, 0, 1)
    assert f9.coeffs(f9.alpha) == (1, 1)
    x = f9.from_coeffs([0, 1])
    assert f9.mul(x, x) == f9.scalar(2)
    assert f9.pow(f9.alpha, 8) == f9.scalar(1)
    assert all(f9.pow(f9.alpha, e) != f9.scalar(1) for e in range(1, 8))


def test_f3():
    F = build_field(3, 1)
    assert F.coeffs(F.alpha) == (2,)
    assert F.inv(F.scalar(2)) == F.scalar(2)


def test_explicit_modulus_accepted_and_rejected():
    F = build_field(5, 2, (2, 0, 1))
    assert F.modulus == (2, 0, 1)
    # -1 is a square mod 5, so x^2 + 1 factors
    with pytest.raises(ReducibleModulus):
        build_field(5, 2, (1, 0, 1))


def test_parameter_errors():
    with pytest.raises(NonPrime):
        build_field(4, 2)
    with pytest.raises(EvenCharacteristic):
        build_field(2, 2)
    assert build_field(2, 3, allow_even=True).q == 8
    with pytest.raises(ParameterError):
        parse_coeffs("1,a")


def test_traces(f9):
    x = f9.from_coeffs([0, 1])
    assert f9.trace(f9.scalar(1)) == 2
    assert f9.trace(x) == 0
    assert f9.trace(0) == 0


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (7, 2), (2, 4)])
def test_trace_table_matches_frobenius(p, m):
    F = build_field(p, m, allow_even=p == 2)
    for x in F.elements():
        assert F.trace(x) == F.trace_by_frobenius(x)


def test_quadratic_character(f9):
    x = f9.from_coeffs([0, 1])
    assert f9.quadratic_character(f9.scalar(1)) == 1
    assert f9.quadratic_character(f9.alpha) == -1
    assert f9.discrete_log(x) == 6
    assert f9.quadratic_character(x) == 1
    with pytest.raises(ZeroArgument):
        f9.quadratic_character(0)
    with pytest.raises(DivisionByZero):
        f9.inv(0)


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (7, 3)])
def test_smallest_irreducible_is_lex_first(p, m):
    f = smallest_irreducible(p, m)
    assert brute_irreducible(f, p)
    for low in itertools.product(range(p), repeat=m):
        if low == f[:-1]:
            break
        assert not brute_irreducible(low + (1,), p)


F27 = build_field(3, 3)
elem = st.integers(0, F27.q - 1)


@settings(max_examples=200, deadline=None)
@given(elem, elem, elem)
def test_field_axioms(a, b, c):
    F = F27
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == F.scalar(1)
    assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % 3


def test_mul_vec_matches_scalar_mul(f9):
    a = np.arange(9)
    prod = f9.mul_vec(a[:, None], a[None, :])
    for i in range(9):
        for j in range(9):
            assert prod[i, j] == f9.mul(i, j)
