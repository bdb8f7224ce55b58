"""Symbols of sectorial spectral projections."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ClearanceFailure, EigenvalueOnCut
from .matrix_kernel import CLUSTER_TOL, MIN_CLEARANCE, CutPair, cluster_eigenvalues
from .resolvent import cosphere_scan, principal_values, require_constant_principal, resolvent_expansion
from .symbols import Contour, HomogeneousComponent, SymbolExpansion

FIBER_NODES = 128
CUT_TOL = 1e-8


@dataclass(frozen=True)
class CutCertificate:
    """Result of scanning principal eigenvalues against a cut pair."""

    min_ray_distance: float
    min_modulus: float
    enclosed_range: tuple[int, int]
    points: int


def scan_principal_spectrum(p: SymbolExpansion, xi: np.ndarray | None = None) -> np.ndarray:
    """Eigenvalues of ``p_m`` over the cosphere scan, shape ``(B, r)``."""
    require_constant_principal(p)
    xi = cosphere_scan(p.n) if xi is None else xi
    out = []
    for start in range(0, xi.shape[0], 8192):
        out.append(np.linalg.eigvals(principal_values(p, xi[start : start + 8192])))
    return np.concatenate(out, axis=0)


def certify_cuts(p: SymbolExpansion, cuts: CutPair, tol: float = CUT_TOL) -> CutCertificate:
    """Raise :class:`EigenvalueOnCut` if a principal eigenvalue sits on either ray."""
    eigs = scan_principal_spectrum(p)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    dist = cuts.ray_distance(eigs)
    worst = float(np.min(dist))
    if worst <= tol * scale:
        b, i = np.unravel_index(int(np.argmin(dist)), dist.shape)
        raise EigenvalueOnCut(
            f"principal eigenvalue {eigs[b, i]:.6g} lies within {worst:.3g} of the cuts "
            f"({cuts.theta:.6g}, {cuts.theta_prime:.6g}) at fiber index {b}"
        )
    inside = cuts.contains(eigs).sum(axis=1)
    return CutCertificate(worst, float(np.min(np.abs(eigs))), (int(inside.min()), int(inside.max())), eigs.shape[0])


def smoothing_check(p: SymbolExpansion, cuts: CutPair) -> bool:
    """True when no principal eigenvalue has argument in the closed sector."""
    eigs = scan_principal_spectrum(p)
    phi = cuts.relative_angle(eigs)
    closed = (phi <= cuts.aperture + 1e-12) | (phi >= 2 * math.pi - 1e-12)
    return not bool(np.any(closed))


class FiberContourRule:
    """Circles around the principal eigenvalue clusters inside the sector.

    Each circle is centred on a cluster, with radius half the distance from
    the centre to the cut rays and to the nearest eigenvalue outside the
    cluster.  Every fiber gets ``slots * nodes`` quadrature points; unused
    slots carry zero weight at a point off the spectrum.
    """

    def __init__(self, cuts: CutPair, nodes: int = FIBER_NODES, cluster_tol: float = CLUSTER_TOL,
                 min_clearance: float = MIN_CLEARANCE):
        self.cuts = cuts
        self.nodes = nodes
        self.cluster_tol = cluster_tol
        self.min_clearance = min_clearance
        self.min_radius = math.inf

    def __call__(self, mats: np.ndarray):
        eigs = np.linalg.eigvals(mats)
        B = eigs.shape[0]
        per_fiber = []
        for b in range(B):
            ev = eigs[b]
            scale = max(1.0, float(np.max(np.abs(ev))))
            circles = []
            clusters = cluster_eigenvalues(ev, self.cluster_tol)
            for ci, members in enumerate(clusters):
                centre = complex(np.mean(members))
                if not self.cuts.contains(centre):
                    continue
                outside = np.concatenate([c for cj, c in enumerate(clusters) if cj != ci] or [np.empty(0, complex)])
                d = float(self.cuts.ray_distance(centre))
                if outside.size:
                    d = min(d, float(np.min(np.abs(outside - centre))))
                radius = 0.5 * d
                spread = float(np.max(np.abs(members - centre)))
                if radius - spread < self.min_clearance * scale:
                    raise ClearanceFailure(f"fiber contour around {centre:.6g} has clearance {radius - spread:.3g}")
                self.min_radius = min(self.min_radius, radius - spread)
                circles.append((centre, radius))
            per_fiber.append((circles, scale))
        slots = max(1, max(len(c) for c, _ in per_fiber))
        L = slots * self.nodes
        lam = np.empty((B, L), dtype=complex)
        w = np.zeros((B, L), dtype=complex)
        t = np.exp(2j * math.pi * np.arange(self.nodes) / self.nodes)
        for b, (circles, scale) in enumerate(per_fiber):
            lam[b] = (scale + 1.0) * (1.0 + 1.0j)
            for s, (c, r) in enumerate(circles):
                sl = slice(s * self.nodes, (s + 1) * self.nodes)
                lam[b, sl] = c + r * t
                w[b, sl] = 2j * math.pi * r * t / self.nodes
        return lam, w


def projection_expansion(p: SymbolExpansion, cuts: CutPair, depth: int, nodes: int = FIBER_NODES) -> SymbolExpansion:
    """Symbol ``pi_0, pi_{-1}, ...`` of the projection onto the spectrum in the sector.

    ``pi_{-j}(x, xi) = -(1 / 2 i pi) oint q_{-m-j}(x, xi, lam) dlam`` over
    positively oriented circles enclosing the principal eigenvalues that
    lie in the sector.
    """
    certify_cuts(p, cuts)
    res = resolvent_expansion(p, depth)
    rule = FiberContourRule(cuts, nodes)
    factor = -1.0 / (2j * math.pi)
    comps = []
    for q in res.components:
        node = Contour(q.node, res.lam, p.principal.node, rule, factor)
        comps.append(HomogeneousComponent(node, p.torus))
    out = SymbolExpansion(p.torus, 0, comps, complete=False, label=f"Pi[{p.label}]")
    out.meta["cuts"] = cuts
    out.meta["contour_rule"] = rule
    return out
