"""Holomorphic functional calculus for finite complex matrices.

Riesz projections, sectorial projections and complex powers are computed
by quadrature of the resolvent along closed contours.  An independent
Schur/Sylvester route (:func:`eigen_oracle`) provides the root-space
projectors the contour results are checked against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    BranchViolation,
    ClusterAmbiguity,
    PoleOnContour,
    ZeroSeparationFailure,
)

TWO_PI = 2.0 * math.pi

CLUSTER_TOL = 1e-8
CONTOUR_TOL = 1e-9
DEFAULT_NODES = 1024
PANEL_NODES = 16
MIN_CLEARANCE = 1e-6


@dataclass(frozen=True)
class CutPair:
    """Two spectral cuts ``theta < theta_prime <= theta + 2 pi``.

    The sector ``Lambda_{theta, theta'}`` is the set of ``lambda`` with
    ``theta < arg(lambda) < theta'`` (arguments taken mod 2 pi).
    """

    theta: float
    theta_prime: float

    def __post_init__(self):
        if not (0.0 <= self.theta < TWO_PI):
            raise ValueError(f"theta={self.theta} must lie in [0, 2 pi)")
        if not (self.theta < self.theta_prime <= self.theta + TWO_PI):
            raise ValueError("need theta < theta_prime <= theta + 2 pi")

    @classmethod
    def up_down(cls, up: float = math.pi / 2, down: float = 3 * math.pi / 2) -> "CutPair":
        """Cut in the upper half plane followed by one in the lower half plane.

        The sector between them holds the negative real axis, so for a
        selfadjoint matrix the projection is onto the negative eigenspace.
        """
        return cls(up, down)

    @property
    def aperture(self) -> float:
        return self.theta_prime - self.theta

    def complement(self) -> "CutPair":
        t = self.theta_prime % TWO_PI
        return CutPair(t, t + (TWO_PI - self.aperture))

    def rotated(self, angle: float) -> "CutPair":
        t = (self.theta + angle) % TWO_PI
        return CutPair(t, t + self.aperture)

    def relative_angle(self, z) -> np.ndarray:
        """Argument of ``z`` measured from ``theta``, in ``[0, 2 pi)``."""
        return np.mod(np.angle(z) - self.theta, TWO_PI)

    def contains(self, z) -> np.ndarray:
        phi = self.relative_angle(z)
        return (phi > 0.0) & (phi < self.aperture)

    def angular_distance(self, z) -> np.ndarray:
        """Angle between ``arg z`` and the nearest of the two rays."""
        phi = self.relative_angle(z)
        d1 = np.minimum(phi, TWO_PI - phi)
        psi = np.mod(phi - self.aperture, TWO_PI)
        d2 = np.minimum(psi, TWO_PI - psi)
        return np.minimum(d1, d2)

    def ray_distance(self, z) -> np.ndarray:
        """Euclidean distance from ``z`` to the union of the two closed rays."""
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, np.inf)
        for t in (self.theta, self.theta_prime):
            e = np.exp(1j * t)
            proj = np.real(z * np.conj(e))
            dist = np.where(proj > 0, np.abs(np.imag(z * np.conj(e))), np.abs(z))
            out = np.minimum(out, dist)
        return out


@dataclass
class ContourSpec:
    """Quadrature rule for a closed contour: ``int f dl ~ sum w_j f(l_j)``.

    ``orientation`` is +1 for counter-clockwise (direct) contours.
    ``clearance`` is the certified distance from the contour to the poles
    it was built around, ``nan`` when the contour was built blind.
    """

    nodes: np.ndarray
    weights: np.ndarray
    clearance: float = float("nan")
    orientation: int = 1
    kind: str = "circle"
    segments: list = field(default_factory=list)

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=complex)
        self.weights = np.asarray(self.weights, dtype=complex)
        if self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights must have the same shape")

    def distance_to(self, points) -> float:
        """Distance from ``points`` to the contour polyline (nodes wrap)."""
        points = np.atleast_1d(np.asarray(points, dtype=complex))
        if points.size == 0:
            return math.inf
        if self.segments:
            return float(min(_segment_distance(seg, points) for seg in self.segments))
        a = self.nodes
        b = np.roll(self.nodes, -1)
        return float(np.min(_polyline_distance(a, b, points)))


def _polyline_distance(a, b, p):
    ab = b - a
    denom = np.where(np.abs(ab) > 0, np.abs(ab) ** 2, 1.0)
    t = np.real((p[:, None] - a[None, :]) * np.conj(ab)[None, :]) / denom[None, :]
    t = np.clip(t, 0.0, 1.0)
    closest = a[None, :] + t * ab[None, :]
    return np.min(np.abs(p[:, None] - closest), axis=1)


def _segment_distance(seg, p):
    kind = seg[0]
    if kind == "line":
        _, a, b = seg
        return float(np.min(_polyline_distance(np.array([a]), np.array([b]), p)))
    _, center, radius, t0, t1 = seg
    lo, hi = min(t0, t1), max(t0, t1)
    rel = p - center
    ang = np.angle(rel)
    # angle of each point brought into [lo, lo + 2 pi)
    ang = lo + np.mod(ang - lo, TWO_PI)
    on_arc = ang <= hi
    d_arc = np.abs(np.abs(rel) - radius)
    e0 = center + radius * np.exp(1j * t0)
    e1 = center + radius * np.exp(1j * t1)
    d_end = np.minimum(np.abs(p - e0), np.abs(p - e1))
    return float(np.min(np.where(on_arc, d_arc, d_end)))


def kahan_sum(terms: np.ndarray, axis: int = 0) -> np.ndarray:
    """Neumaier-compensated sum, accumulated in index order along ``axis``."""
    terms = np.moveaxis(np.asarray(terms), axis, 0)
    total = np.zeros(terms.shape[1:], dtype=terms.dtype)
    comp = np.zeros_like(total)
    for term in terms:
        t = total + term
        big = np.abs(total) >= np.abs(term)
        # complex parts are compensated together; abs picks the dominant one
        comp += np.where(big, (total - t) + term, (term - t) + total)
        total = t
    return total + comp


def circle_contour(center: complex, radius: float, nodes: int = DEFAULT_NODES) -> ContourSpec:
    """Trapezoid rule on a counter-clockwise circle."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    phi = TWO_PI * np.arange(nodes) / nodes
    z = np.exp(1j * phi)
    lam = center + radius * z
    w = 1j * radius * z * (TWO_PI / nodes)
    return ContourSpec(lam, w, kind="circle", segments=[("arc", complex(center), radius, 0.0, TWO_PI)])


def _gl_panels(param, dparam, length: float, h: float, panel_nodes: int = PANEL_NODES):
    """Composite Gauss-Legendre rule for ``t in [0, 1]`` mapped by ``param``."""
    npanel = max(1, int(math.ceil(length / h)))
    x, w = np.polynomial.legendre.leggauss(panel_nodes)
    edges = np.linspace(0.0, 1.0, npanel + 1)
    t = (0.5 * (edges[:-1, None] + edges[1:, None]) + 0.5 * (edges[1:, None] - edges[:-1, None]) * x).ravel()
    wt = (0.5 * (edges[1:, None] - edges[:-1, None]) * w).ravel()
    return param(t), dparam(t) * wt


def _line(a: complex, b: complex, h: float):
    nodes, weights = _gl_panels(lambda t: a + (b - a) * t, lambda t: np.full(t.shape, b - a), abs(b - a), h)
    return nodes, weights, ("line", a, b)


def _arc(radius: float, t0: float, t1: float, h: float):
    span = t1 - t0
    nodes, weights = _gl_panels(
        lambda t: radius * np.exp(1j * (t0 + span * t)),
        lambda t: 1j * span * radius * np.exp(1j * (t0 + span * t)),
        abs(span) * radius,
        h,
    )
    return nodes, weights, ("arc", 0j, radius, t0, t1)


def stadium_contour(cuts: CutPair, r: float, R: float, h: float) -> ContourSpec:
    """Positively oriented boundary of ``{r < |l| < R, theta < arg l < theta'}``.

    Sides are the two cut rays joined by arcs of radius ``r`` and ``R``;
    each side carries a composite Gauss-Legendre rule with panel length at
    most ``h``.
    """
    t0, t1 = cuts.theta, cuts.theta_prime
    e0, e1 = np.exp(1j * t0), np.exp(1j * t1)
    parts = [
        _line(r * e0, R * e0, h),
        _arc(R, t0, t1, h),
        _line(R * e1, r * e1, h),
        _arc(r, t1, t0, h),
    ]
    nodes = np.concatenate([p[0] for p in parts])
    weights = np.concatenate([p[1] for p in parts])
    return ContourSpec(nodes, weights, kind="stadium", segments=[p[2] for p in parts])


def keyhole_contour(theta: float, r: float, R: float, h: float) -> tuple[ContourSpec, np.ndarray]:
    """Positively oriented boundary of the annulus slit along ``arg l = theta``.

    Returns the contour and, per node, the argument in ``[theta - 2 pi, theta]``
    used for the branch of ``l**s``.
    """
    e = np.exp(1j * theta)
    parts = [
        _arc(R, theta - TWO_PI, theta, h),
        _line(R * e, r * e, h),
        _arc(r, theta, theta - TWO_PI, h),
        _line(r * e, R * e, h),
    ]
    args = [
        theta - TWO_PI + (np.mod(np.angle(parts[0][0]) - theta, TWO_PI)),
        np.full(parts[1][0].shape, theta),
        theta - TWO_PI + (np.mod(np.angle(parts[2][0]) - theta, TWO_PI)),
        np.full(parts[3][0].shape, theta - TWO_PI),
    ]
    # arc nodes sit strictly inside (theta - 2 pi, theta); endpoints excluded by GL
    nodes = np.concatenate([p[0] for p in parts])
    weights = np.concatenate([p[1] for p in parts])
    spec = ContourSpec(nodes, weights, kind="keyhole", segments=[p[2] for p in parts])
    return spec, np.concatenate(args)


def _as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError("expected a non-empty square matrix")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def _resolvents(A: np.ndarray, lam: np.ndarray) -> np.ndarray:
    d = A.shape[0]
    eye = np.eye(d)
    return np.linalg.solve(A[None, :, :] - lam[:, None, None] * eye, np.broadcast_to(eye, (lam.size, d, d)))


def contour_integral(A, gamma: ContourSpec, f=None) -> np.ndarray:
    """``sum_j w_j f(l_j) (A - l_j)^{-1}`` with compensated summation."""
    A = _as_matrix(A)
    res = _resolvents(A, gamma.nodes)
    coef = gamma.weights if f is None else gamma.weights * f
    return kahan_sum(coef[:, None, None] * res, axis=0)


def _scale(A: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(A, 2)))


def cluster_eigenvalues(eigs: np.ndarray, tol: float = CLUSTER_TOL) -> list[np.ndarray]:
    """Single-linkage grouping of eigenvalues closer than ``tol`` (relative)."""
    eigs = np.asarray(eigs, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(eigs)))) if eigs.size else 1.0
    thresh = tol * scale
    n = eigs.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(eigs[i] - eigs[j]) <= thresh:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = [eigs[idx] for idx in groups.values()]
    clusters.sort(key=lambda c: (round(float(np.mean(c).real), 12), round(float(np.mean(c).imag), 12)))
    return clusters


def eigen_oracle(A, cluster_tol: float = CLUSTER_TOL) -> list[tuple[complex, np.ndarray]]:
    """Eigenvalue clusters of ``A`` with their Riesz projectors.

    Projectors come from an ordered Schur form and a Sylvester solve, so no
    contour quadrature and no diagonalizability is involved.  Eigenvalues
    closer than ``cluster_tol`` (relative) are merged; clusters that come
    within ``1e3 * cluster_tol`` of each other raise :class:`ClusterAmbiguity`.
    """
    A = _as_matrix(A)
    d = A.shape[0]
    eigs = scipy.linalg.eigvals(A)
    clusters = cluster_eigenvalues(eigs, cluster_tol)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    centers = [complex(np.mean(c)) for c in clusters]
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            if abs(centers[i] - centers[j]) < 1e3 * cluster_tol * scale:
                raise ClusterAmbiguity(
                    f"eigenvalue clusters {centers[i]:.6g} and {centers[j]:.6g} are not separated"
                )
    if len(clusters) == 1:
        return [(centers[0], np.eye(d, dtype=complex))]
    out = []
    for c, members in zip(centers, clusters):
        radius = max(float(np.max(np.abs(members - c))), 0.0)
        gap = min(abs(c - o) for o in centers if o != c)
        cut = radius + 0.5 * (gap - radius)
        T, Z, k = scipy.linalg.schur(A, output="complex", sort=lambda z, c=c, cut=cut: abs(z - c) < cut)
        if k != members.size:
            raise ClusterAmbiguity(f"Schur reordering selected {k} eigenvalues, expected {members.size}")
        T11, T12, T22 = T[:k, :k], T[:k, k:], T[k:, k:]
        X = scipy.linalg.solve_sylvester(T11, -T22, -T12)
        PT = np.zeros((d, d), dtype=complex)
        PT[:k, :k] = np.eye(k)
        PT[:k, k:] = -X
        out.append((c, Z @ PT @ Z.conj().T))
    return out


def riesz_projection(A, gamma: ContourSpec, min_clearance: float = MIN_CLEARANCE) -> np.ndarray:
    """``(-1 / 2 i pi) * oint_gamma (A - mu)^{-1} dmu`` for a direct contour."""
    A = _as_matrix(A)
    eigs = scipy.linalg.eigvals(A)
    dist = gamma.distance_to(eigs)
    if dist < min_clearance * _scale(A):
        raise PoleOnContour(f"eigenvalue within {dist:.3g} of the contour")
    gamma.clearance = dist
    return -gamma.orientation * contour_integral(A, gamma) / (2j * math.pi)


def _nonzero_split(eigs: np.ndarray, scale: float, cluster_tol: float):
    zero_thresh = cluster_tol * scale
    is_zero = np.abs(eigs) <= zero_thresh
    nonzero = eigs[~is_zero]
    if nonzero.size and np.min(np.abs(nonzero)) < 1e3 * zero_thresh:
        raise ZeroSeparationFailure("a nonzero eigenvalue cannot be isolated from 0")
    return is_zero, nonzero


def sectorial_projection_matrix(
    A,
    cuts: CutPair,
    min_clearance: float = MIN_CLEARANCE,
    cluster_tol: float = CLUSTER_TOL,
    return_contour: bool = False,
):
    """``(1 / 2 i pi) int_{Gamma_{theta,theta'}} l^{-1} A (A - l)^{-1} dl``.

    The unbounded contour is closed by an arc beyond the spectrum; the
    integrand decays like ``l**-2`` so the result is unchanged.
    """
    A = _as_matrix(A)
    scale = _scale(A)
    eigs = scipy.linalg.eigvals(A)
    _, nonzero = _nonzero_split(eigs, scale, cluster_tol)
    if nonzero.size == 0:
        out = np.zeros_like(A)
        return (out, None) if return_contour else out
    ray_gap = float(np.min(cuts.ray_distance(nonzero)))
    if ray_gap < min_clearance * scale:
        raise PoleOnContour(f"eigenvalue within {ray_gap:.3g} of a cut ray")
    rmin = float(np.min(np.abs(nonzero)))
    r = 0.5 * rmin
    R = 1.5 * float(np.max(np.abs(nonzero))) + 1.0
    clearance = min(ray_gap, rmin - r, R - float(np.max(np.abs(nonzero))))
    h = max(1.5 * clearance, 1e-3 * R)
    gamma = stadium_contour(cuts, r, R, h)
    gamma.clearance = gamma.distance_to(nonzero)
    integrand = A @ _resolvents(A, gamma.nodes)
    coef = gamma.weights / gamma.nodes
    # Riesz projector is -(1/2 pi i) \oint (A - l)^{-1} dl; the extra A/l removes the 0 root space
    out = -kahan_sum(coef[:, None, None] * integrand, axis=0) / (2j * math.pi)
    return (out, gamma) if return_contour else out


def zero_projection(A, cluster_tol: float = CLUSTER_TOL, nodes: int = DEFAULT_NODES) -> np.ndarray:
    """Riesz projector of the eigenvalue 0 (zero matrix when 0 is not in the spectrum)."""
    A = _as_matrix(A)
    scale = _scale(A)
    eigs = scipy.linalg.eigvals(A)
    is_zero, nonzero = _nonzero_split(eigs, scale, cluster_tol)
    if not is_zero.any():
        return np.zeros_like(A)
    r = 0.5 * float(np.min(np.abs(nonzero))) if nonzero.size else 1.0
    return riesz_projection(A, circle_contour(0.0, r, nodes))


def matrix_complex_power(
    A,
    s: complex,
    theta: float,
    min_clearance: float = MIN_CLEARANCE,
    cluster_tol: float = CLUSTER_TOL,
) -> np.ndarray:
    """``A**s`` along the cut ``arg l = theta``, branch ``arg in (theta - 2 pi, theta)``.

    For ``Re s < 0`` this is ``(-1 / 2 i pi) oint l**s (A - l)^{-1} dl`` over
    the slit annulus; otherwise ``A**k @ A**(s - k)`` with ``k > Re s``.
    The 0-root space is annihilated, so negative integer powers are partial
    inverses.
    """
    A = _as_matrix(A)
    s = complex(s)
    if s.real >= 0:
        k = int(math.floor(s.real)) + 1
        return np.linalg.matrix_power(A, k) @ matrix_complex_power(A, s - k, theta, min_clearance, cluster_tol)
    scale = _scale(A)
    eigs = scipy.linalg.eigvals(A)
    _, nonzero = _nonzero_split(eigs, scale, cluster_tol)
    d = A.shape[0]
    if nonzero.size == 0:
        return np.zeros((d, d), dtype=complex)
    cut = CutPair(theta % TWO_PI, theta % TWO_PI + TWO_PI)
    ray_gap = float(np.min(cut.ray_distance(nonzero)))
    if float(np.min(cut.angular_distance(nonzero))) < 1e-12:
        raise BranchViolation(f"theta={theta} is the argument of an eigenvalue")
    if ray_gap < min_clearance * scale:
        raise PoleOnContour(f"eigenvalue within {ray_gap:.3g} of the cut")
    rmin = float(np.min(np.abs(nonzero)))
    rmax = float(np.max(np.abs(nonzero)))
    r, R = 0.5 * rmin, 1.5 * rmax + 1.0
    clearance = min(ray_gap, rmin - r, R - rmax)
    h = max(1.5 * clearance, 1e-3 * R)
    gamma, args = keyhole_contour(theta, r, R, h)
    f = np.exp(s * (np.log(np.abs(gamma.nodes)) + 1j * args))
    return -contour_integral(A, gamma, f) / (2j * math.pi)
