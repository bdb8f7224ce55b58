import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from specasym.jets import (
    jet_derivative, jet_index, jet_inv, jet_mul, jet_truncate, monomial_jet, power_of_norm_jet,
)


def taylor_coefficients(expr, syms, point, order):
    """Coefficients f_a = d^a f / a! at ``point``, in graded jet order."""
    idx = jet_index(len(syms), order)
    out = []
    for a in idx.alphas:
        d = expr
        for s, k in zip(syms, a):
            if k:
                d = sp.diff(d, s, int(k))
        val = complex(d.subs(dict(zip(syms, point))).evalf(30))
        out.append(val / math.prod(math.factorial(int(k)) for k in a))
    return np.array(out)


def test_graded_layout():
    idx = jet_index(2, 3)
    assert idx.size == math.comb(5, 2)
    assert list(idx.degrees) == sorted(idx.degrees)
    assert idx.count_upto == [1, 3, 6, 10]


@pytest.mark.parametrize("s", [-2.0, -1.0, 0.5, 1.0, 3.0])
def test_norm_power_matches_sympy(s):
    x, y = sp.symbols("x y", real=True)
    point = (0.6, -0.8)
    ref = taylor_coefficients(sp.sqrt(x**2 + y**2) ** sp.Rational(s).limit_denominator(8), (x, y), point, 4)
    got = power_of_norm_jet(np.array([point]), s, 4)[:, 0]
    assert np.max(np.abs(got - ref)) < 1e-13


def test_monomial_jet():
    x, y, z = sp.symbols("x y z", real=True)
    point = (0.3, -0.5, 0.81)
    ref = taylor_coefficients(x**2 * y * z**3, (x, y, z), point, 5)
    got = monomial_jet(np.array([point]), (2, 1, 3), 5)[:, 0]
    assert np.max(np.abs(got - ref)) < 1e-14


def test_inverse_of_matrix_jet_matches_sympy():
    x, y = sp.symbols("x y", real=True)
    M = sp.Matrix([[x**2 + 2, x * y], [y, 1 + y**2]])
    Minv = M.inv()
    point = (0.4, -0.7)
    order = 3
    idx = jet_index(2, order)
    jet = np.zeros((idx.size, 2, 2), dtype=complex)
    ref = np.zeros_like(jet)
    for i in range(2):
        for j in range(2):
            jet[:, i, j] = taylor_coefficients(M[i, j], (x, y), point, order)
            ref[:, i, j] = taylor_coefficients(Minv[i, j], (x, y), point, order)
    assert np.max(np.abs(jet_inv(jet, 2, order) - ref)) < 1e-13


def test_derivative_shifts_coefficients():
    x, y = sp.symbols("x y", real=True)
    f = sp.sin(x) * sp.exp(2 * y)
    point = (0.2, 0.1)
    jet = taylor_coefficients(f, (x, y), point, 5)[:, None, None]
    d = jet_derivative(jet, 2, 5, (1, 2))
    ref = taylor_coefficients(sp.diff(f, x, 1, y, 2), (x, y), point, 2)
    assert np.max(np.abs(d[:, 0, 0] - ref)) < 1e-12
    assert jet_truncate(jet, 2, 2).shape[0] == 6


matrices = st.integers(min_value=0, max_value=2**31 - 1)


@settings(max_examples=25, deadline=None)
@given(seed=matrices, order=st.integers(1, 4))
def test_jet_times_inverse_is_identity(seed, order):
    rng = np.random.default_rng(seed)
    idx = jet_index(2, order)
    a = rng.normal(size=(idx.size, 3, 3, 3)) + 1j * rng.normal(size=(idx.size, 3, 3, 3))
    a[0] += 4 * np.eye(3)
    prod = jet_mul(a, jet_inv(a, 2, order), 2, order)
    expect = np.zeros_like(prod)
    expect[0] = np.eye(3)
    assert np.max(np.abs(prod - expect)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(seed=matrices)
def test_jet_product_is_associative(seed):
    rng = np.random.default_rng(seed)
    idx = jet_index(3, 3)
    a, b, c = (rng.normal(size=(idx.size, 2, 2)) for _ in range(3))
    left = jet_mul(jet_mul(a, b, 3, 3), c, 3, 3)
    right = jet_mul(a, jet_mul(b, c, 3, 3), 3, 3)
    assert np.max(np.abs(left - right)) < 1e-11
