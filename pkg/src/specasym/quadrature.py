"""Quadrature grids on the unit cosphere and on flat tori."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedDimension


@dataclass(frozen=True)
class SphereGrid:
    """Nodes on ``S^{n-1}`` with weights summing to its area.

    ``exactness`` is the polynomial degree (in the ambient coordinates)
    the rule integrates exactly.  Grids are symmetric under ``xi -> -xi``.
    """

    points: np.ndarray
    weights: np.ndarray
    exactness: int

    @property
    def n(self) -> int:
        return self.points.shape[1]


def sphere_area(n: int) -> float:
    """Area of the unit sphere ``S^{n-1}`` in ``R^n``."""
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


def cosphere_grid(n: int, resolution: int = 16) -> SphereGrid:
    """Product rule on ``S^{n-1}`` exact for polynomials of degree ``2 * resolution - 1``.

    n=1: the two points +-1.  n=2: uniform angles (trapezoid).  n=3:
    Gauss-Legendre in ``cos(theta)`` times uniform azimuth.  n=4: Hopf
    coordinates with Gauss-Legendre in ``sin(eta)**2`` on ``[0, 1]``.
    """
    m = 2 * resolution
    if n == 1:
        return SphereGrid(np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]), 10**9)
    phi = 2.0 * math.pi * np.arange(m) / m
    wphi = np.full(m, 2.0 * math.pi / m)
    if n == 2:
        pts = np.stack([np.cos(phi), np.sin(phi)], axis=1)
        return SphereGrid(pts, wphi, m - 1)
    if n == 3:
        t, wt = np.polynomial.legendre.leggauss(resolution)
        T, P = np.meshgrid(t, phi, indexing="ij")
        S = np.sqrt(1.0 - T**2)
        pts = np.stack([S * np.cos(P), S * np.sin(P), T], axis=-1).reshape(-1, 3)
        w = (wt[:, None] * wphi[None, :]).ravel()
        return SphereGrid(pts, w, min(2 * resolution - 1, m - 1))
    if n == 4:
        u, wu = np.polynomial.legendre.leggauss(resolution)
        u = 0.5 * (u + 1.0)
        wu = 0.5 * wu
        U, P1, P2 = np.meshgrid(u, phi, phi, indexing="ij")
        c, s = np.sqrt(1.0 - U), np.sqrt(U)
        pts = np.stack([c * np.cos(P1), c * np.sin(P1), s * np.cos(P2), s * np.sin(P2)], axis=-1).reshape(-1, 4)
        w = (0.5 * wu[:, None, None] * wphi[None, :, None] * wphi[None, None, :]).ravel()
        return SphereGrid(pts, w, min(2 * resolution - 1, m - 1))
    raise UnsupportedDimension(f"no cosphere rule for n={n}")


@dataclass(frozen=True)
class Torus:
    """Flat torus ``prod_i R / (L_i Z)``; frequency ``k`` means ``exp(2 pi i k.x / L)``."""

    periods: tuple[float, ...]

    @classmethod
    def standard(cls, n: int) -> "Torus":
        return cls((2.0 * math.pi,) * n)

    @classmethod
    def with_volume(cls, n: int, volume: float) -> "Torus":
        side = volume ** (1.0 / n)
        return cls((side,) * n)

    @property
    def n(self) -> int:
        return len(self.periods)

    @property
    def volume(self) -> float:
        return math.prod(self.periods)

    @property
    def omega(self) -> np.ndarray:
        return 2.0 * math.pi / np.asarray(self.periods)

    def grid(self, max_frequency: int, minimum: int = 4) -> np.ndarray:
        """Uniform grid, ``2 * max_frequency + 1`` points per axis at least."""
        m = max(minimum, 2 * max_frequency + 1)
        axes = [np.arange(m) * (L / m) for L in self.periods]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([g.ravel() for g in mesh], axis=1)

    def phase(self, x: np.ndarray, k) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.exp(1j * (x @ (self.omega * np.asarray(k, dtype=float))))
