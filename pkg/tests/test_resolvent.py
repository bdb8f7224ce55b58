import numpy as np
import pytest

from specasym.battery import SIGMA, laplacian_potential, nonselfadjoint_t3
from specasym.dirac import CliffordData, dirac_symbol
from specasym.errors import LambdaOnSpectrum, NotElliptic
from specasym.quadrature import Torus
from specasym.resolvent import (
    ellipticity_certificate, parametrix, power_expansion, resolvent_expansion,
)
from specasym.symbols import SymbolExpansion, compose, from_terms, identity_expansion, sample_points

T2 = Torus.standard(2)
ONE = np.eye(1)


def flat_laplacian():
    return from_terms(T2, (1, 1), 2, [[((0, 0), (2, 0), 0.0, ONE), ((0, 0), (0, 2), 0.0, ONE)]])


def free_dirac():
    return dirac_symbol(CliffordData(T2, 1, [{}, {}]))


def test_flat_laplacian_resolvent():
    res = resolvent_expansion(flat_laplacian(), 3)
    x, xi = sample_points(T2, 5, 1, 1)
    lam = 0.4 + 1.1j
    q0 = res.components[0].eval(x, xi, lam)[..., 0, 0]
    norm2 = np.sum(xi**2, axis=1)
    np.testing.assert_allclose(q0, np.broadcast_to(1.0 / (norm2 - lam), q0.shape), atol=1e-14)
    for q in res.components[1:]:
        assert np.max(np.abs(q.eval(x, xi, lam))) < 1e-15


def test_dirac_resolvent_closed_form():
    q0 = resolvent_expansion(free_dirac(), 0).components[0]
    xi = np.array([0.6, -1.7])
    lam = 0.3 - 0.8j
    sx = xi[0] * SIGMA[0] + xi[1] * SIGMA[1]
    ref = (sx + lam * np.eye(2)) / (xi @ xi - lam**2)
    np.testing.assert_allclose(q0.eval([0.0, 0.0], xi, lam), ref, atol=1e-14)
    np.testing.assert_allclose(q0.eval([0.0, 0.0], [1.0, 0.0], 3.0), np.linalg.inv(SIGMA[0] - 3 * np.eye(2)), atol=1e-14)


def test_resolvent_inverts_shifted_symbol():
    p = laplacian_potential(2)
    depth = 4
    res = resolvent_expansion(p, depth)
    q = SymbolExpansion(p.torus, -2, list(res.components), complete=False)
    pq = compose(p, q, depth)
    x, xi = sample_points(p.torus, 5, 3, p.max_frequency())
    lam = -0.7 + 0.9j
    for j in range(depth + 1):
        # lam has weight m, so lam * q_j sits in the same component as p_m q_j
        val = pq.component(j).eval(x, xi, lam) - lam * q.component(j).eval(x, xi, lam)
        want = np.eye(1) if j == 0 else 0.0
        assert np.max(np.abs(val - want)) < 1e-12, j


def test_power_examples():
    x, xi = sample_points(T2, 5, 2, 1)
    lap_inv = power_expansion(flat_laplacian(), 1, 3)
    np.testing.assert_allclose(lap_inv.component(0).eval(x, xi)[..., 0, 0],
                               np.broadcast_to(1.0 / np.sum(xi**2, axis=1), (x.shape[0], xi.shape[0])), atol=1e-14)
    for j in range(1, 4):
        assert np.max(np.abs(lap_inv.component(j).eval(x, xi))) < 1e-15
    d2 = power_expansion(free_dirac(), 2, 2)
    got = d2.component(0).eval(x, xi)
    want = np.eye(2) / np.sum(xi**2, axis=1)[None, :, None, None]
    np.testing.assert_allclose(got, np.broadcast_to(want, got.shape), atol=1e-14)


@pytest.mark.parametrize("make", [lambda: laplacian_potential(2), nonselfadjoint_t3])
def test_parametrix_residual(make):
    p = make()
    depth = 3
    b = parametrix(p, depth)
    x, xi = sample_points(p.torus, 4, 5, p.max_frequency())
    ident = identity_expansion(p.torus, p.shape[0])
    for left in (compose(p, b, depth), compose(b, p, depth)):
        for j in range(depth + 1):
            diff = left.component(j).eval(x, xi) - ident.component(j).eval(x, xi)
            assert np.max(np.abs(diff)) < 1e-9


def test_negative_power_is_product():
    p = laplacian_potential(2)
    x, xi = sample_points(p.torus, 4, 0, 2)
    sq = power_expansion(p, -2, 2)
    ref = compose(p, p, 2)
    for j in range(3):
        np.testing.assert_allclose(sq.component(j).eval(x, xi), ref.component(j).eval(x, xi), atol=1e-13)


def test_errors():
    degenerate = from_terms(T2, (2, 2), 1, [[((0, 0), (1, 0), 0.0, np.diag([1.0, 0.0])),
                                            ((0, 0), (0, 1), 0.0, np.diag([1.0, 0.0]))]])
    assert not ellipticity_certificate(degenerate).ok
    with pytest.raises(NotElliptic):
        parametrix(degenerate, 1)
    q0 = resolvent_expansion(flat_laplacian(), 0).components[0]
    with pytest.raises(LambdaOnSpectrum):
        q0.eval([0.0, 0.0], [1.0, 0.0], 1.0)
