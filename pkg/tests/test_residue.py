import math

import numpy as np
import pytest

from specasym.battery import (POSITIVE_AXIS, SIGMA, dirac_plus_constant, dirac_twisted_t2,
                              laplacian_potential, nonselfadjoint_t2)
from specasym.dirac import CliffordData, dirac_symbol
from specasym.errors import DepthInsufficient, NotSelfadjoint, PreconditionError
from specasym.matrix_kernel import CutPair
from specasym.quadrature import Torus
from specasym.residue import (eta_residue, local_gap_density, positivity_check, res_total,
                              residue_density, zeta_gap)
from specasym.resolvent import parametrix, power_expansion
from specasym.symbols import from_terms

T2 = Torus.standard(2)
UP_DOWN = CutPair.up_down()


def flat_laplacian():
    one = np.eye(1)
    return from_terms(T2, (1, 1), 2, [[((0, 0), (2, 0), 0.0, one), ((0, 0), (0, 2), 0.0, one)]])


def free_dirac(scale=1.0):
    return from_terms(T2, (2, 2), 1, [[((0, 0), (1, 0), 0.0, scale * SIGMA[0]),
                                       ((0, 0), (0, 1), 0.0, scale * SIGMA[1])]], label="D")


def test_laplacian_inverse_residue():
    q = parametrix(flat_laplacian(), 0)
    dens = residue_density(q)
    np.testing.assert_allclose(dens([[0.3, 1.1]]), 1.0 / (2 * math.pi), rtol=1e-12)
    assert res_total(q) == pytest.approx(2 * math.pi, rel=1e-12)


def test_free_dirac_square_residue_and_gap():
    D = free_dirac()
    assert res_total(power_expansion(D, 2, 0)) == pytest.approx(4 * math.pi, rel=1e-12)
    rep = zeta_gap(D, UP_DOWN, 2)
    assert abs(rep.gap - 4j * math.pi ** 2) < 1e-9
    assert rep.discrepancy < 1e-9


def test_differential_powers_have_no_residue():
    rep = zeta_gap(laplacian_potential(2), POSITIVE_AXIS, -1)
    assert abs(rep.res_pk) < 1e-12
    assert abs(rep.gap) < 1e-12


def test_odd_class_density_vanishes_in_odd_dimension():
    q = power_expansion(laplacian_potential(3), 1, 1)
    assert residue_density(q, 6).max_abs() < 1e-12


def test_local_density_identity_twisted_dirac():
    D = dirac_symbol(dirac_twisted_t2(), "D_A/T2")
    for k in (1, 2):
        rep = local_gap_density(D, UP_DOWN, k)
        assert rep.violation < 1e-9


def test_local_density_needs_fast_path():
    with pytest.raises(PreconditionError):
        local_gap_density(laplacian_potential(2), POSITIVE_AXIS, 1)


def test_eta_of_norm_symbol():
    p = from_terms(T2, (1, 1), 1, [[((0, 0), (0, 0), 1.0, np.eye(1))]])
    rep = eta_residue(p, 2)
    assert rep.value == pytest.approx(2 * math.pi, abs=1e-10)


@pytest.mark.parametrize("c", [0.3, -1.2])
def test_eta_counterexample(c):
    rep = eta_residue(dirac_plus_constant(c), 1)
    assert abs(rep.value - (-4 * math.pi * c)) < 1e-9
    assert rep.imag_residual < 1e-12


def test_eta_vanishes_for_twisted_dirac():
    D = dirac_symbol(dirac_twisted_t2())
    for k in (-1, 0, 1, 2):
        assert abs(eta_residue(D, k).value) < 1e-9


def test_positivity_scaling():
    base = positivity_check(free_dirac())
    assert base.value == pytest.approx(4 * math.pi ** 2, rel=1e-10)
    assert base.direct == pytest.approx(base.value, rel=1e-10)
    assert base.positive
    scaled = positivity_check(free_dirac(3.0))
    assert scaled.value == pytest.approx(base.value / 9, rel=1e-10)


def test_errors():
    with pytest.raises(NotSelfadjoint):
        eta_residue(nonselfadjoint_t2(), 1)
    with pytest.raises(PreconditionError):
        positivity_check(laplacian_potential(2))
    with pytest.raises(DepthInsufficient):
        zeta_gap(free_dirac(), UP_DOWN, 1, depth=0)
