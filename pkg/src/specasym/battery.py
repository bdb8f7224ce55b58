"""Fixed test operators used by the verification suite and the tests."""
from __future__ import annotations

import math

import numpy as np

from .dirac import CliffordData, dirac_symbol
from .matrix_kernel import CutPair
from .quadrature import Torus
from .symbols import SymbolExpansion, from_terms

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _unit(n, j, power=1):
    e = [0] * n
    e[j] = power
    return tuple(e)


def _cos_mode(k, c):
    """``c cos(k.x)`` as two Fourier terms (``c`` a matrix)."""
    k = tuple(k)
    neg = tuple(-v for v in k)
    return [(k, 0.5 * np.asarray(c)), (neg, 0.5 * np.asarray(c))]


def laplacian_potential(n: int = 2) -> SymbolExpansion:
    """``|xi|^2 + V(x)`` with a real trigonometric potential; selfadjoint, odd class, order 2."""
    torus = Torus.standard(n)
    zero = (0,) * n
    one = np.eye(1)
    principal = [(zero, _unit(n, j, 2), 0.0, one) for j in range(n)]
    k1 = _unit(n, 0)
    k2 = tuple(1 if i < 2 else 0 for i in range(n)) if n > 1 else (2,)
    pot = [(k, zero, 0.0, c) for k, c in _cos_mode(k1, 0.7 * one) + _cos_mode(k2, -0.4 * one)]
    pot.append((zero, zero, 0.0, 0.25 * one))
    return from_terms(torus, (1, 1), 2, [principal, [], pot], label=f"lap+V/T{n}")


def dirac_twisted_t2() -> CliffordData:
    torus = Torus.standard(2)
    a1 = {(0, 1): [[0.5]], (0, -1): [[0.5]], (0, 0): [[0.2]]}
    a2 = {(1, 0): [[0.3j]], (-1, 0): [[-0.3j]], (1, 1): [[0.15]], (-1, -1): [[0.15]]}
    return CliffordData(torus, 1, [a1, a2])


def dirac_twisted_t4() -> CliffordData:
    torus = Torus.standard(4)
    A = np.array([[0.3, 0.1 - 0.2j], [0.1 + 0.2j, -0.1]])
    B = np.array([[0.2, 0.4j], [-0.4j, 0.1]])
    C = np.array([[0.2, 0.1], [0.1, 0.0]])
    conn = [
        {(0, 1, 0, 0): A, (0, -1, 0, 0): A.conj().T},
        {(0, 0, 1, 0): B, (0, 0, -1, 0): B.conj().T},
        {(1, 0, 0, 1): 0.5 * A, (-1, 0, 0, -1): 0.5 * A.conj().T},
        {(0, 0, 0, 0): C},
    ]
    return CliffordData(torus, 2, conn)


def dirac_plus_constant(c: float = 0.3) -> SymbolExpansion:
    """``sigma.xi + c``: selfadjoint, odd class, order 1, with a nonzero eta residue at 1."""
    torus = Torus.standard(2)
    s1, s2, _ = SIGMA
    principal = [((0, 0), (1, 0), 0.0, s1), ((0, 0), (0, 1), 0.0, s2)]
    return from_terms(torus, (2, 2), 1, [principal, [((0, 0), (0, 0), 0.0, c * np.eye(2))]], label="D+c")


def nonselfadjoint_t2() -> SymbolExpansion:
    """First-order 2x2 operator with principal eigenvalues near ``+-exp(0.3i)|xi|``."""
    torus = Torus.standard(2)
    s1, s2, s3 = SIGMA
    rot = np.exp(0.3j)
    N = np.array([[0.0, 0.15], [0.05j, 0.0]])
    principal = [
        ((0, 0), (1, 0), 0.0, rot * s1 + N),
        ((0, 0), (0, 1), 0.0, rot * s2 + 0.5 * N.T),
    ]
    B = np.array([[0.3, 0.2 - 0.1j], [0.4j, -0.2]])
    lower = [((1, 0), (0, 0), 0.0, B), ((0, -1), (0, 0), 0.0, 0.5 * B.T), ((0, 0), (0, 0), 0.0, 0.1 * s3)]
    return from_terms(torus, (2, 2), 1, [principal, lower], label="nsa/T2")


def nonselfadjoint_t3() -> SymbolExpansion:
    """Second-order odd-class 2x2 operator with principal arguments near 0 and 0.8."""
    torus = Torus.standard(3)
    z = (0, 0, 0)
    E = np.diag([1.0, np.exp(0.8j)])
    N = np.array([[0.0, 0.2], [0.1, 0.0]])
    p2 = [(z, (2, 0, 0), 0.0, E), (z, (0, 2, 0), 0.0, E), (z, (0, 0, 2), 0.0, E), (z, (1, 1, 0), 0.0, N)]
    B = np.array([[0.3, 0.1j], [0.2, -0.1]])
    p1 = [((1, 0, 0), (0, 0, 1), 0.0, B), (z, (1, 0, 0), 0.0, 0.2j * np.eye(2))]
    V = np.array([[0.5, 0.2], [0.1j, 0.3]])
    p0 = [((0, 1, 0), z, 0.0, V), ((0, -1, 1), z, 0.0, V.T)]
    return from_terms(torus, (2, 2), 2, [p2, p1, p0], label="nsa/T3")


T3_CUTS = (CutPair(0.4, 2.0), CutPair(2.0, 6.0), CutPair(4.0, 0.4 + 2 * math.pi))
T2_CUTS = (CutPair.up_down(), CutPair(1.0, 4.0))
POSITIVE_AXIS = CutPair(1.5 * math.pi, 2.5 * math.pi)


def projection_battery():
    """``(symbol, cuts)`` pairs covering every battery operator."""
    return [
        (laplacian_potential(2), POSITIVE_AXIS),
        (dirac_symbol(dirac_twisted_t2(), "D_A/T2"), CutPair.up_down()),
        (nonselfadjoint_t2(), CutPair.up_down()),
        (nonselfadjoint_t3(), T3_CUTS[0]),
    ]
