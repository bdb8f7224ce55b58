"""Twisted Dirac operators on flat even-dimensional tori.

Conventions.  ``D = sum_j gamma^j (x) (D_{x_j} + A_j(x))`` with
``D_{x_j} = -i d/dx_j`` and Hermitian twist potentials ``A_j``, so the
symbol is ``gamma.xi (x) 1 + sum_j gamma^j (x) A_j``.  The curvature is
``F_ij = d_i A_j - d_j A_i + i [A_i, A_j]`` and

    D^2 = sum_j (D_{x_j} + A_j)^2 + c(F),   c(F) = -i sum_{i<j} gamma^i gamma^j (x) F_ij,

which is the flat Lichnerowicz formula in this normalisation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HeatCoefficientUnavailable, UnsupportedDimension
from .matrix_kernel import CutPair
from .quadrature import Torus, sphere_area
from .residue import AsymmetryReport, DensityField, residue_density
from .resolvent import power_expansion
from .symbols import SymbolExpansion, compose, from_terms, sample_points

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def clifford_generators(n: int) -> tuple[list[np.ndarray], np.ndarray]:
    """Hermitian ``gamma^1..gamma^n`` with ``{gamma^i, gamma^j} = 2 delta_ij`` and the chirality."""
    s1, s2, s3 = PAULI
    eye = np.eye(2, dtype=complex)
    if n == 2:
        gammas = [s1, s2]
    elif n == 4:
        gammas = [np.kron(s1, eye), np.kron(s2, eye), np.kron(s3, s1), np.kron(s3, s2)]
    else:
        raise UnsupportedDimension(f"Clifford generators implemented for n in (2, 4), got {n}")
    chirality = (-1j) ** (n // 2) * np.linalg.multi_dot(gammas)
    return gammas, chirality


def _as_modes(field_, rank: int) -> dict:
    out = {}
    for k, c in dict(field_).items():
        c = np.asarray(c, dtype=complex).reshape(rank, rank)
        out[tuple(int(v) for v in k)] = c
    return out


@dataclass
class CliffordData:
    """Clifford module on a flat torus with a unitary twist connection.

    ``connection[j]`` maps Fourier frequencies to ``twist_rank`` square
    matrices; the field ``A_j(x)`` must be Hermitian, i.e. the coefficient
    at ``-k`` is the adjoint of the one at ``k``.
    """

    torus: Torus
    twist_rank: int = 1
    connection: list = field(default_factory=list)

    def __post_init__(self):
        n = self.torus.n
        self.gammas, self.chirality = clifford_generators(n)
        if not self.connection:
            self.connection = [{} for _ in range(n)]
        if len(self.connection) != n:
            raise ValueError(f"need {n} connection components")
        self.connection = [_as_modes(c, self.twist_rank) for c in self.connection]
        for j, modes in enumerate(self.connection):
            for k, c in modes.items():
                partner = modes.get(tuple(-v for v in k), np.zeros_like(c))
                if np.max(np.abs(partner - c.conj().T), initial=0.0) > 1e-14:
                    raise ValueError(f"A_{j + 1} is not Hermitian at frequency {k}")

    @property
    def n(self) -> int:
        return self.torus.n

    @property
    def spinor_rank(self) -> int:
        return 2 ** (self.n // 2)

    @property
    def rank(self) -> int:
        return self.spinor_rank * self.twist_rank

    def potential(self, j: int, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.zeros((x.shape[0], self.twist_rank, self.twist_rank), dtype=complex)
        for k, c in self.connection[j].items():
            out += self.torus.phase(x, k)[:, None, None] * c
        return out


def dirac_symbol(data: CliffordData, label: str = "D") -> SymbolExpansion:
    n = data.n
    eye_t = np.eye(data.twist_rank)
    zero = (0,) * n
    principal = []
    for j, g in enumerate(data.gammas):
        e = [0] * n
        e[j] = 1
        principal.append((zero, tuple(e), 0.0, np.kron(g, eye_t)))
    lower = []
    for j, g in enumerate(data.gammas):
        for k, c in sorted(data.connection[j].items()):
            lower.append((k, zero, 0.0, np.kron(g, c)))
    shape = (data.rank, data.rank)
    return from_terms(data.torus, shape, 1, [principal, lower], label=label)


def _mode_product(a: dict, b: dict) -> dict:
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + ca @ cb
    return out


def _mode_add(*pairs) -> dict:
    out = {}
    for coef, modes in pairs:
        for k, c in modes.items():
            out[k] = out.get(k, 0) + coef * c
    return {k: c for k, c in out.items() if np.any(c != 0)}


def _mode_derivative(modes: dict, i: int, omega) -> dict:
    return {k: 1j * omega[i] * k[i] * c for k, c in modes.items() if k[i] != 0}


def twist_curvature(data: CliffordData) -> dict:
    """``F_ij`` for ``i < j`` as Fourier modes of ``twist_rank`` matrices."""
    A = data.connection
    om = data.torus.omega
    out = {}
    for i in range(data.n):
        for j in range(i + 1, data.n):
            comm = _mode_add((1.0, _mode_product(A[i], A[j])), (-1.0, _mode_product(A[j], A[i])))
            out[(i, j)] = _mode_add(
                (1.0, _mode_derivative(A[j], i, om)), (-1.0, _mode_derivative(A[i], j, om)), (1j, comm)
            )
    return out


def clifford_curvature(data: CliffordData) -> dict:
    """Fourier modes of ``c(F) = -i sum_{i<j} gamma^i gamma^j (x) F_ij``."""
    pairs = []
    for (i, j), modes in twist_curvature(data).items():
        g = data.gammas[i] @ data.gammas[j]
        pairs.append((-1j, {k: np.kron(g, c) for k, c in modes.items()}))
    return _mode_add(*pairs)


def connection_laplacian_symbol(data: CliffordData) -> SymbolExpansion:
    """Symbol of ``sum_j (D_{x_j} + A_j)^2`` acting on spinors (x) twist."""
    n = data.n
    zero = (0,) * n
    eye_s = np.eye(data.spinor_rank)
    eye = np.eye(data.rank)
    om = data.torus.omega
    principal = []
    for j in range(n):
        e = [0] * n
        e[j] = 2
        principal.append((zero, tuple(e), 0.0, eye))
    first = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        for k, c in sorted(data.connection[j].items()):
            first.append((k, tuple(e), 0.0, 2.0 * np.kron(eye_s, c)))
    zeroth = _mode_add(
        *[(1.0, _mode_product(data.connection[j], data.connection[j])) for j in range(n)],
        *[(-1j, _mode_derivative(data.connection[j], j, om)) for j in range(n)],
    )
    zeroth_terms = [(k, zero, 0.0, np.kron(eye_s, c)) for k, c in sorted(zeroth.items())]
    return from_terms(data.torus, (data.rank, data.rank), 2, [principal, first, zeroth_terms], label="conn-laplacian")


@dataclass
class LichnerowiczReport:
    square: SymbolExpansion
    laplacian: SymbolExpansion
    curvature_term: dict
    residual: float


def lichnerowicz_square(data: CliffordData, n_xi: int = 8, seed: int = 3) -> LichnerowiczReport:
    """``D # D`` against the connection Laplacian plus ``c(F)`` on sampled fibers."""
    D = dirac_symbol(data)
    sq = compose(D, D, 2)
    lap = connection_laplacian_symbol(data)
    cf = clifford_curvature(data)
    freq = max([D.max_frequency(), lap.max_frequency()] + [max(abs(v) for v in k) for k in cf] + [0])
    x, xi = sample_points(data.torus, n_xi, seed, freq)
    resid = 0.0
    for j in range(3):
        diff = sq.component(j).eval(x, xi) - lap.component(j).eval(x, xi)
        if j == 2:
            cvals = np.zeros((x.shape[0], data.rank, data.rank), dtype=complex)
            for k, c in cf.items():
                cvals += data.torus.phase(x, k)[:, None, None] * c
            diff = diff - cvals[:, None]
        resid = max(resid, float(np.max(np.abs(diff))))
    return LichnerowiczReport(sq, lap, cf, resid)


def heat_coefficients(data: CliffordData) -> tuple[DensityField, DensityField]:
    """Traced ``a_0`` and ``a_1`` densities of ``D^2`` on a flat torus.

    ``a_0 = (4 pi)^{-n/2} tr(1)``; ``a_1 = -(4 pi)^{-n/2} / 12 * tr(2 c(F))``
    (the scalar curvature term is absent).
    """
    n = data.n
    pref = (4.0 * math.pi) ** (-n / 2)
    zero = (0,) * n
    a0 = DensityField(data.torus, {zero: pref * data.rank}, "a0")
    cf = clifford_curvature(data)
    modes = {k: -pref / 12.0 * 2.0 * complex(np.trace(c)) for k, c in sorted(cf.items())}
    a1 = DensityField(data.torus, {k: v for k, v in modes.items()}, "a1")
    return a0, a1


def sphere_constant(n: int) -> tuple[float, float]:
    """``(2 pi)^-n vol(S^{n-1})`` and ``2 (4 pi)^{-n/2} / Gamma(n/2)``."""
    return (2.0 * math.pi) ** (-n) * sphere_area(n), 2.0 * (4.0 * math.pi) ** (-n / 2) / math.gamma(n / 2)


def closed_form_gap(data: CliffordData) -> complex:
    """``2 i pi (4 pi)^{-n/2} Gamma(n/2)^{-1} rk * vol``: the gap at ``k = n``."""
    n = data.n
    return 2j * math.pi * (4.0 * math.pi) ** (-n / 2) / math.gamma(n / 2) * data.rank * data.torus.volume


@dataclass
class DiracAsymmetry:
    n: int
    k: int
    gap: complex
    residue_route: complex | None
    heat_route: complex | None
    closed_form: complex | None
    mechanism: str
    density_defect: float | None = None

    @property
    def discrepancy(self) -> float | None:
        if self.residue_route is None or self.heat_route is None:
            return None
        return float(abs(self.residue_route - self.heat_route))

    def as_report(self, label: str, tol: float) -> AsymmetryReport:
        res = 0j if self.residue_route is None else self.residue_route / (1j * math.pi)
        rep = AsymmetryReport(label, CutPair.up_down(), self.k, 1, self.gap, res, self.gap / (2j * math.pi),
                              max(self.n - self.k, 0), tol, notes=[self.mechanism])
        return rep

    def to_dict(self) -> dict:
        def cj(z):
            return None if z is None else {"re": float(complex(z).real), "im": float(complex(z).imag)}

        return {
            "n": self.n, "k": self.k, "gap": cj(self.gap), "residueRoute": cj(self.residue_route),
            "heatRoute": cj(self.heat_route), "closedForm": cj(self.closed_form),
            "discrepancy": self.discrepancy, "densityDefect": self.density_defect, "mechanism": self.mechanism,
        }


def dirac_asymmetry(data: CliffordData, k: int, resolution: int | None = None) -> DiracAsymmetry:
    """Up/down zeta gap of the twisted Dirac operator at ``s = k``.

    Even ``2 <= k <= n``: ``i pi Res D^-k`` (residue route) against
    ``i pi int tr 2/(l-1)! a_{n/2-l}`` with ``l = k/2`` (heat route).
    """
    n = data.n
    if k % 2 or k < 2 or k > n:
        if k % 2:
            why = "odd k: chirality anticommutes with the odd-degree symbols, so the traced residue density vanishes"
        elif k <= 0:
            why = "k <= 0: D^-k is a differential operator and its residue vanishes"
        else:
            why = "k > n: D^-k has order below -n, so there is no residue"
        return DiracAsymmetry(n, k, 0j, None, None, None, why)
    D = dirac_symbol(data)
    l = k // 2
    depth = n - k
    pk = power_expansion(D, k, depth)
    c_pk = residue_density(pk, resolution)
    residue_route = 1j * math.pi * c_pk.integral()
    j = n // 2 - l
    if j > 1:
        raise HeatCoefficientUnavailable(f"a_{j} is not available (only a_0 and a_1)")
    a = heat_coefficients(data)[j]
    heat_density = DensityField(data.torus, {kk: 2.0 / math.factorial(l - 1) * v for kk, v in a.modes.items()})
    heat_route = 1j * math.pi * heat_density.integral()
    defect = c_pk.combine(heat_density, 1.0, -1.0).max_abs()
    closed = closed_form_gap(data) if k == n else None
    why = "a_0 term: rank times volume" if j == 0 else "a_1 term: flat metric and traceless c(F)"
    return DiracAsymmetry(n, k, residue_route, residue_route, heat_route, closed, why, defect)


def untraced_residue_density(q: SymbolExpansion, x, resolution: int | None = None) -> np.ndarray:
    """Matrix-valued ``(2 pi)^-n int_{|xi|=1} q_{-n}(x, xi)`` at torus points ``x``."""
    from .quadrature import cosphere_grid
    from .residue import DEFAULT_RESOLUTION

    n = q.n
    comp = q.component(q.order + n)
    grid = cosphere_grid(n, resolution or DEFAULT_RESOLUTION.get(n, 8))
    vals = comp.eval(np.atleast_2d(x), grid.points)
    return (2.0 * math.pi) ** (-n) * np.einsum("b,pbij->pij", grid.weights, vals)


def untraced_a1(data: CliffordData, x) -> np.ndarray:
    """Matrix ``a_1(x) = -(4 pi)^{-n/2} c(F)(x)``; the endomorphism term of ``D^2`` enters with a minus sign."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    out = np.zeros((x.shape[0], data.rank, data.rank), dtype=complex)
    for k, c in clifford_curvature(data).items():
        out += data.torus.phase(x, k)[:, None, None] * c
    return -((4.0 * math.pi) ** (-data.n / 2)) * out
