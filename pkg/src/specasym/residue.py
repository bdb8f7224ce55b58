"""Residue densities, zeta gaps at integers, and eta residues."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DepthInsufficient, NotSelfadjoint, PreconditionError
from .matrix_kernel import CutPair
from .projection import FIBER_NODES, projection_expansion, scan_principal_spectrum
from .quadrature import Torus, cosphere_grid
from .resolvent import power_expansion, principal_values, require_constant_principal
from .symbols import (
    EvalContext,
    HomogeneousComponent,
    SymbolExpansion,
    compose,
    identity_expansion,
    odd_class_check,
)

GAP_TOL = 1e-7
HERMITIAN_TOL = 1e-12
DEFAULT_RESOLUTION = {1: 1, 2: 32, 3: 12, 4: 8}
CHUNK = 32


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SPECASYM_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# densities


@dataclass
class DensityField:
    """Fiber-traced density ``sum_k c_k exp(i omega k.x)`` against ``dx``."""

    torus: Torus
    modes: dict
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape[0], dtype=complex)
        for k, c in sorted(self.modes.items()):
            out += c * self.torus.phase(x, k)
        return out

    @property
    def max_frequency(self) -> int:
        return max((max(abs(v) for v in k) for k in self.modes), default=0)

    def grid(self) -> np.ndarray:
        return self.torus.grid(self.max_frequency)

    def grid_values(self) -> np.ndarray:
        return self(self.grid())

    def integral(self) -> complex:
        """Exact torus integral: only the constant mode contributes."""
        return complex(self.modes.get((0,) * self.torus.n, 0.0)) * self.torus.volume

    def max_abs(self) -> float:
        if not self.modes:
            return 0.0
        return float(np.max(np.abs(self.grid_values())))

    def combine(self, other: "DensityField", a=1.0, b=1.0) -> "DensityField":
        keys = sorted(set(self.modes) | set(other.modes))
        modes = {k: a * self.modes.get(k, 0.0) + b * other.modes.get(k, 0.0) for k in keys}
        return DensityField(self.torus, modes)

    @classmethod
    def zero(cls, torus: Torus, label: str = "") -> "DensityField":
        return cls(torus, {}, label)


def _traced_sphere_integral(node, torus, xi, w, chunk):
    ctx = EvalContext(xi, torus.omega)
    val = ctx.evaluate(node, 0)
    out = {}
    for k, arr in val.items():
        tr = np.trace(arr[0, :, 0], axis1=-2, axis2=-1)
        out[k] = complex(np.sum(w * tr))
    return out


def sphere_integral_modes(comp: HomogeneousComponent, resolution: int | None = None, chunk: int = CHUNK) -> dict:
    """``int_{|xi|=1} tr comp(x, xi)`` as Fourier modes in ``x``."""
    n = comp.n
    grid = cosphere_grid(n, resolution or DEFAULT_RESOLUTION.get(n, 8))
    if comp.is_zero:
        return {}
    starts = range(0, grid.points.shape[0], chunk)
    jobs = [(grid.points[s : s + chunk], grid.weights[s : s + chunk]) for s in starts]

    def run(job):
        return _traced_sphere_integral(comp.node, comp.torus, job[0], job[1], chunk)

    threads = thread_count()
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(job) for job in jobs]
    modes = {}
    for part in parts:
        for k, v in part.items():
            modes[k] = modes.get(k, 0.0) + v
    return modes


def residue_density(q: SymbolExpansion, resolution: int | None = None) -> DensityField:
    """``c_Q(x) = (2 pi)^-n int_{|xi|=1} tr q_{-n}(x, xi)``."""
    n = q.n
    j = q.order + n
    if j < 0:
        return DensityField.zero(q.torus, f"c[{q.label}]")
    if not q.available(j):
        raise DepthInsufficient(
            f"degree -{n} component sits at depth {j} but the expansion stops at {q.depth}"
        )
    comp = q.component(j)
    modes = sphere_integral_modes(comp, resolution)
    scale = (2.0 * math.pi) ** (-n)
    field_ = DensityField(q.torus, {k: scale * v for k, v in sorted(modes.items())}, f"c[{q.label}]")
    field_.meta["depth"] = j
    return field_


def res_total(q: SymbolExpansion, resolution: int | None = None) -> complex:
    return residue_density(q, resolution).integral()


# ---------------------------------------------------------------------------
# zeta gaps


def _complex_json(z) -> dict:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


@dataclass
class AsymmetryReport:
    operator: str
    cuts: CutPair
    k: int
    order: int
    gap: complex
    res_pk: complex
    res_pi_pk: complex
    depth: int
    tol: float
    fast_gap: complex | None = None
    discrepancy: float | None = None
    notes: list = field(default_factory=list)

    CSV_COLUMNS = ("operator", "theta", "thetaPrime", "k", "re(gap)", "im(gap)", "re(resPk)", "im(resPk)", "depth", "tol")

    def csv_row(self) -> list:
        return [
            self.operator, repr(float(self.cuts.theta)), repr(float(self.cuts.theta_prime)), str(self.k),
            repr(float(self.gap.real)), repr(float(self.gap.imag)),
            repr(float(self.res_pk.real)), repr(float(self.res_pk.imag)),
            str(self.depth), repr(float(self.tol)),
        ]

    def to_dict(self) -> dict:
        out = {
            "operator": self.operator,
            "theta": float(self.cuts.theta),
            "thetaPrime": float(self.cuts.theta_prime),
            "k": self.k,
            "order": self.order,
            "gap": _complex_json(self.gap),
            "resPk": _complex_json(self.res_pk),
            "resPiPk": _complex_json(self.res_pi_pk),
            "depth": self.depth,
            "tol": self.tol,
        }
        if self.fast_gap is not None:
            out["fastGap"] = _complex_json(self.fast_gap)
            out["discrepancy"] = self.discrepancy
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def in_split_cone(p: SymbolExpansion, cuts: CutPair) -> bool:
    """All principal eigenvalues lie in the sector or in its reflection through 0."""
    if cuts.aperture > math.pi:
        return False
    eigs = scan_principal_spectrum(p)
    return bool(np.all(cuts.contains(eigs) | cuts.contains(-eigs)))


def fast_path_applies(p: SymbolExpansion, cuts: CutPair) -> bool:
    return (
        p.order % 2 == 1
        and p.n % 2 == 0
        and odd_class_check(p).ok
        and in_split_cone(p, cuts)
    )


def _needed_depth(p: SymbolExpansion, k: int, depth: int | None) -> int:
    j = p.n - k * p.order
    if depth is not None and depth < j:
        raise DepthInsufficient(f"k={k} needs depth {j}, got {depth}")
    return j


def zeta_gap(p: SymbolExpansion, cuts: CutPair, k: int, depth: int | None = None,
             resolution: int | None = None, nodes: int = FIBER_NODES, tol: float = GAP_TOL) -> AsymmetryReport:
    """``lim_{s->k} (zeta_theta - zeta_theta')(P; s) = (2 i pi / m) Res Pi P^-k``.

    When the operator is odd-class of odd order on an even torus with its
    principal spectrum in the split cone, the shortcut ``(i pi / m) Res P^-k``
    is reported alongside, with the discrepancy.
    """
    m = p.order
    j = _needed_depth(p, k, depth)
    notes = []
    if j < 0:
        res_pk = res_pi_pk = 0j
        notes.append("order of P^-k is below -n: no degree -n component")
        projection_expansion(p, cuts, 0, nodes)
    else:
        pi = projection_expansion(p, cuts, j, nodes)
        pk = power_expansion(p, k, j)
        res_pk = res_total(pk, resolution)
        res_pi_pk = res_total(compose(pi, pk, j), resolution)
    gap = 2j * math.pi / m * res_pi_pk
    rep = AsymmetryReport(p.label, cuts, k, m, gap, res_pk, res_pi_pk, max(j, 0), tol, notes=notes)
    if fast_path_applies(p, cuts):
        rep.fast_gap = 1j * math.pi / m * res_pk
        rep.discrepancy = float(abs(rep.fast_gap - gap))
    return rep


@dataclass
class LocalGapReport:
    k: int
    density_r: DensityField
    density_pk: DensityField
    violation: float


def local_gap_density(p: SymbolExpansion, cuts: CutPair, k: int, depth: int | None = None,
                      resolution: int | None = None, nodes: int = FIBER_NODES) -> LocalGapReport:
    """Densities of ``Pi P^-k`` and ``P^-k`` and the pointwise defect ``|2 c_R - c_{P^-k}|``."""
    if not fast_path_applies(p, cuts):
        raise PreconditionError("needs an odd-class operator of odd order on an even torus, spectrum in the split cone")
    j = _needed_depth(p, k, depth)
    if j < 0:
        z = DensityField.zero(p.torus)
        return LocalGapReport(k, z, z, 0.0)
    pi = projection_expansion(p, cuts, j, nodes)
    pk = power_expansion(p, k, j)
    c_r = residue_density(compose(pi, pk, j), resolution)
    c_pk = residue_density(pk, resolution)
    violation = c_r.combine(c_pk, 2.0, -1.0).max_abs()
    return LocalGapReport(k, c_r, c_pk, violation)


# ---------------------------------------------------------------------------
# eta residues


def require_hermitian_principal(p: SymbolExpansion, tol: float = HERMITIAN_TOL) -> None:
    require_constant_principal(p)
    from .resolvent import cosphere_scan

    xi = cosphere_scan(p.n, 32)
    pm = principal_values(p, xi)
    defect = float(np.max(np.abs(pm - np.conj(np.swapaxes(pm, -1, -2)))))
    scale = max(1.0, float(np.max(np.abs(pm))))
    if defect > tol * scale:
        raise NotSelfadjoint(f"principal symbol is not Hermitian (defect {defect:.3g})")


@dataclass
class EtaReport:
    """Residue of ``eta(P; s)`` at ``s = k``.

    ``value`` is ``(1/m) Res F |P|^-k`` with ``F = 1 - 2 Pi_-``; ``rearranged``
    is ``(Res P^-k - 2 Res Pi_- P^-k) / m``.  The two agree for even ``k``;
    for odd ``k`` the first equals ``Res P^-k / m``.
    """

    k: int
    order: int
    value: complex
    rearranged: complex
    res_pk: complex
    res_pi_pk: complex
    depth: int

    @property
    def imag_residual(self) -> float:
        return abs(self.value.imag)

    def to_dict(self) -> dict:
        return {
            "k": self.k, "order": self.order, "value": _complex_json(self.value),
            "rearranged": _complex_json(self.rearranged), "resPk": _complex_json(self.res_pk),
            "resPiPk": _complex_json(self.res_pi_pk), "depth": self.depth,
        }


def eta_residue(p: SymbolExpansion, k: int, depth: int | None = None, resolution: int | None = None,
                nodes: int = FIBER_NODES) -> EtaReport:
    require_hermitian_principal(p)
    m = p.order
    j = _needed_depth(p, k, depth)
    if j < 0:
        return EtaReport(k, m, 0j, 0j, 0j, 0j, 0)
    cuts = CutPair.up_down()
    pi = projection_expansion(p, cuts, j, nodes)
    pk = power_expansion(p, k, j)
    ident = identity_expansion(p.torus, p.shape[0])
    sign = ident.combine(pi, 1.0, -2.0)
    res_pk = res_total(pk, resolution)
    res_pi_pk = res_total(compose(pi, pk, j), resolution)
    abs_pk = pk if k % 2 == 0 else compose(sign, pk, j)
    value = res_total(compose(sign, abs_pk, j), resolution) / m
    rearranged = (res_pk - 2.0 * res_pi_pk) / m
    return EtaReport(k, m, value, rearranged, res_pk, res_pi_pk, j)


@dataclass
class PositivityReport:
    value: float
    direct: float
    floor: float
    gap: complex

    @property
    def positive(self) -> bool:
        return self.value > self.floor


def positivity_check(p: SymbolExpansion, resolution: int | None = None, floor_rel: float = 1e-6) -> PositivityReport:
    """``(1/i)`` times the up/down zeta gap at ``s = n``, and ``pi (2 pi)^-n int tr p_m^-n``."""
    n = p.n
    if p.order != 1 or n % 2 or not odd_class_check(p).ok:
        raise PreconditionError("positivity needs an odd-class first-order operator on an even torus")
    require_hermitian_principal(p)
    rep = zeta_gap(p, CutPair.up_down(), n, resolution=resolution)
    grid = cosphere_grid(n, resolution or DEFAULT_RESOLUTION.get(n, 8))
    pm = principal_values(p, grid.points)
    tr = np.trace(np.linalg.matrix_power(np.linalg.inv(pm), n), axis1=-2, axis2=-1)
    direct = math.pi * (2 * math.pi) ** (-n) * p.torus.volume * float(np.sum(grid.weights * tr).real)
    value = float((rep.gap / 1j).real)
    return PositivityReport(value, direct, floor_rel * abs(direct), rep.gap)
