import math

import numpy as np
import pytest

from specasym.battery import POSITIVE_AXIS, SIGMA, nonselfadjoint_t2
from specasym.dirac import CliffordData, dirac_symbol
from specasym.errors import ClearanceFailure, EigenvalueOnCut
from specasym.matrix_kernel import CutPair
from specasym.projection import certify_cuts, projection_expansion, smoothing_check
from specasym.quadrature import Torus
from specasym.symbols import compose, from_terms, sample_points

T2 = Torus.standard(2)
ONE = np.eye(1)


def flat_laplacian():
    return from_terms(T2, (1, 1), 2, [[((0, 0), (2, 0), 0.0, ONE), ((0, 0), (0, 2), 0.0, ONE)]])


def free_dirac():
    return dirac_symbol(CliffordData(T2, 1, [{}, {}]))


def points():
    return sample_points(T2, 6, 11, 1)


def test_empty_sector_gives_zero():
    pi = projection_expansion(flat_laplacian(), CutPair(0.3, 2.8), 3)
    x, xi = points()
    for j in range(4):
        assert np.max(np.abs(pi.component(j).eval(x, xi))) < 1e-15


def test_full_sector_gives_identity():
    pi = projection_expansion(flat_laplacian(), POSITIVE_AXIS, 3)
    x, xi = points()
    assert np.max(np.abs(pi.component(0).eval(x, xi) - 1.0)) < 1e-13
    for j in range(1, 4):
        assert np.max(np.abs(pi.component(j).eval(x, xi))) < 1e-13


def test_dirac_negative_projection():
    pi = projection_expansion(free_dirac(), CutPair.up_down(), 2)
    xi = np.array([3.0, 4.0])
    ref = 0.5 * (np.eye(2) - (3 * SIGMA[0] + 4 * SIGMA[1]) / 5)
    np.testing.assert_allclose(pi.component(0).eval([0.1, 0.2], xi), ref, atol=1e-14)


def test_lower_half_plane_puts_dirac_spectrum_on_the_cuts():
    with pytest.raises(EigenvalueOnCut):
        projection_expansion(free_dirac(), CutPair(math.pi, 2 * math.pi), 1)


def test_smoothing_examples():
    assert smoothing_check(flat_laplacian(), CutPair(0.3, 2.8))
    assert not smoothing_check(free_dirac(), CutPair.up_down())
    rot = np.diag([np.exp(0.25j * math.pi), np.exp(-0.25j * math.pi)])
    p = from_terms(T2, (2, 2), 1, [[((0, 0), (0, 0), 1.0, rot)]])
    assert smoothing_check(p, CutPair(0.5 * math.pi, 1.5 * math.pi))


def test_certificate_counts_enclosed_eigenvalues():
    cert = certify_cuts(free_dirac(), CutPair.up_down())
    assert cert.enclosed_range == (1, 1)
    assert cert.min_ray_distance > 0.99


def test_near_degenerate_clusters_fail_clearance():
    p = from_terms(T2, (2, 2), 1, [[((0, 0), (0, 0), 1.0, np.diag([1.0, 1.0 + 1e-7]))]])
    pi = projection_expansion(p, POSITIVE_AXIS, 0)
    with pytest.raises(ClearanceFailure):
        pi.component(0).eval([0.0, 0.0], [1.0, 0.0])


def test_idempotent_and_complementary_on_nonselfadjoint():
    p = nonselfadjoint_t2()
    cuts = CutPair(1.0, 4.0)
    pi = projection_expansion(p, cuts, 3)
    other = projection_expansion(p, cuts.complement(), 3)
    sq = compose(pi, pi, 3)
    x, xi = sample_points(T2, 5, 4, p.max_frequency())
    for j in range(4):
        a = pi.component(j).eval(x, xi)
        assert np.max(np.abs(sq.component(j).eval(x, xi) - a)) < 1e-6
        total = a + other.component(j).eval(x, xi)
        assert np.max(np.abs(total - (np.eye(2) if j == 0 else 0.0))) < 1e-8
