import itertools
import math

import numpy as np
import pytest

from specasym.battery import dirac_twisted_t2, dirac_twisted_t4
from specasym.dirac import (CliffordData, clifford_curvature, clifford_generators, closed_form_gap,
                            dirac_asymmetry, dirac_symbol, heat_coefficients, lichnerowicz_square,
                            sphere_constant, untraced_a1, untraced_residue_density)
from specasym.errors import UnsupportedDimension
from specasym.quadrature import Torus
from specasym.resolvent import power_expansion


@pytest.mark.parametrize("n", [2, 4])
def test_clifford_relations(n):
    gammas, chi = clifford_generators(n)
    eye = np.eye(gammas[0].shape[0])
    for i, j in itertools.product(range(n), repeat=2):
        anti = gammas[i] @ gammas[j] + gammas[j] @ gammas[i]
        np.testing.assert_allclose(anti, 2.0 * eye * (i == j), atol=1e-15)
        if i != j:
            assert abs(np.trace(gammas[i] @ gammas[j])) < 1e-15
    np.testing.assert_allclose(chi @ chi, eye, atol=1e-15)
    for g in gammas:
        np.testing.assert_allclose(chi @ g + g @ chi, 0.0, atol=1e-15)


def test_two_dimensional_generators_are_pauli():
    gammas, _ = clifford_generators(2)
    np.testing.assert_array_equal(gammas[0], [[0, 1], [1, 0]])
    np.testing.assert_array_equal(gammas[1], [[0, -1j], [1j, 0]])


def test_odd_dimension_unsupported():
    with pytest.raises(UnsupportedDimension):
        clifford_generators(3)


def test_free_symbol_eigenvalues():
    D = dirac_symbol(CliffordData(Torus.standard(2)))
    vals = np.linalg.eigvalsh(D.component(0).eval([0.0, 0.0], [3.0, 4.0]))
    np.testing.assert_allclose(vals, [-5.0, 5.0], atol=1e-13)


@pytest.mark.parametrize("data", [dirac_twisted_t2(), dirac_twisted_t4()])
def test_lichnerowicz(data):
    assert lichnerowicz_square(data).residual < 1e-10


def test_curvature_convention():
    # A_1 = cos x_2 gives F_12 = sin x_2 and c(F) = -i gamma^1 gamma^2 sin x_2
    data = CliffordData(Torus.standard(2), 1, [{(0, 1): [[0.5]], (0, -1): [[0.5]]}, {}])
    g1, g2 = data.gammas
    x = np.array([[0.2, 0.7], [1.3, -2.1]])
    cf = np.zeros((2, 2, 2), dtype=complex)
    for k, c in clifford_curvature(data).items():
        cf += data.torus.phase(x, k)[:, None, None] * c
    expected = np.array([-1j * g1 @ g2 * math.sin(p[1]) for p in x])
    np.testing.assert_allclose(cf, expected, atol=1e-14)
    np.testing.assert_allclose(untraced_a1(data, x), -expected / (4 * math.pi), atol=1e-14)


def test_heat_coefficients():
    a0, a1 = heat_coefficients(dirac_twisted_t2())
    assert a0([[0.1, 0.2]])[0] == pytest.approx(2 / (4 * math.pi))
    assert a1.max_abs() < 1e-15
    a0, a1 = heat_coefficients(dirac_twisted_t4())
    assert a0([[0.1, 0.2, 0.3, 0.4]])[0] == pytest.approx(8 / (4 * math.pi) ** 2)
    assert a1.max_abs() < 1e-15


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_constant(n):
    a, b = sphere_constant(n)
    assert a == pytest.approx(b, rel=1e-14)


def test_routes_t2():
    data = dirac_twisted_t2()
    rep = dirac_asymmetry(data, 2)
    assert rep.discrepancy < 1e-10
    assert abs(rep.gap - closed_form_gap(data)) < 1e-9
    assert abs(rep.gap - 4j * math.pi ** 2) < 1e-9
    for k in (-1, 0, 1, 3):
        assert dirac_asymmetry(data, k).gap == 0


@pytest.mark.slow
def test_routes_t4():
    data = dirac_twisted_t4()
    for k in (2, 4):
        rep = dirac_asymmetry(data, k)
        assert rep.discrepancy < 1e-8
        assert rep.density_defect < 1e-8
    assert abs(dirac_asymmetry(data, 4).gap - closed_form_gap(data)) < 1e-8


@pytest.mark.slow
def test_untraced_density_is_twice_a1():
    data = dirac_twisted_t4()
    D = dirac_symbol(data)
    x = np.array([[0.3, 1.0, -0.4, 2.2], [1.7, -0.6, 0.9, 0.1]])
    dens = untraced_residue_density(power_expansion(D, 2, 2), x)
    a1 = untraced_a1(data, x)
    assert np.max(np.abs(a1)) > 1e-3
    np.testing.assert_allclose(dens, 2.0 * a1, atol=1e-9)
