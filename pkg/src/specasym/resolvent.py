"""Resolvent symbols and integer powers of elliptic symbols."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LambdaOnSpectrum, NotElliptic, SingularFiber
from .quadrature import cosphere_grid
from .symbols import (
    EvalContext,
    HomogeneousComponent,
    Inverse,
    Lambda,
    Node,
    SymbolExpansion,
    Zero,
    add,
    compose,
    identity_expansion,
    multi_indices,
    mul,
    x_derivative,
    xi_derivative,
)

ELLIPTIC_FLOOR = 1e-6


def cosphere_scan(n: int, minimum_per_axis: int = 64) -> np.ndarray:
    """Unit covectors, at least ``minimum_per_axis ** (n - 1)`` of them."""
    target = minimum_per_axis ** (n - 1)
    res = 1
    while True:
        grid = cosphere_grid(n, res)
        if grid.points.shape[0] >= target:
            return grid.points
        res += 1


def principal_values(p: SymbolExpansion, xi: np.ndarray) -> np.ndarray:
    """``p_m`` at unit covectors for an ``x``-independent principal part, shape ``(B, r, r)``."""
    node = p.principal.node
    ctx = EvalContext(xi, p.torus.omega)
    val = ctx.evaluate(node, 0)
    key = (0,) * p.n
    if not val:
        return np.zeros((xi.shape[0],) + p.shape, dtype=complex)
    return val[key][0, :, 0]


def require_constant_principal(p: SymbolExpansion) -> None:
    if p.principal.node.modes - {(0,) * p.n}:
        raise NotImplementedError("the principal symbol must not depend on x")


@dataclass(frozen=True)
class EllipticityCertificate:
    min_singular_value: float
    points: int
    floor: float

    @property
    def ok(self) -> bool:
        return self.min_singular_value >= self.floor


def ellipticity_certificate(p: SymbolExpansion, floor: float = ELLIPTIC_FLOOR) -> EllipticityCertificate:
    """Minimum singular value of ``p_m`` over a dense cosphere scan."""
    require_constant_principal(p)
    cached = p.meta.get("ellipticity")
    if cached is not None and cached.floor == floor:
        return cached
    xi = cosphere_scan(p.n)
    smin = math.inf
    for start in range(0, xi.shape[0], 8192):
        mats = principal_values(p, xi[start : start + 8192])
        smin = min(smin, float(np.min(np.linalg.svd(mats, compute_uv=False)[:, -1])))
    cert = EllipticityCertificate(smin, xi.shape[0], floor)
    p.meta["ellipticity"] = cert
    return cert


def require_elliptic(p: SymbolExpansion, floor: float = ELLIPTIC_FLOOR) -> EllipticityCertificate:
    if p.shape[0] != p.shape[1]:
        raise NotElliptic("symbol is not square")
    cert = ellipticity_certificate(p, floor)
    if not cert.ok:
        raise NotElliptic(
            f"min singular value of the principal symbol {cert.min_singular_value:.3g} < {floor:g}"
        )
    return cert


class ParametrizedComponent(HomogeneousComponent):
    """Homogeneous component depending on the resolvent parameter ``lambda``.

    ``a(x, t xi, t**m lam) = t**degree a(x, xi, lam)`` with ``m`` the order.
    """

    def eval(self, x, xi, lam=None):
        try:
            return super().eval(x, xi, lam)
        except SingularFiber as exc:
            raise LambdaOnSpectrum(f"lambda={lam} is an eigenvalue of the principal symbol") from exc


def _recursion(p: SymbolExpansion, depth: int, lam: Lambda | None) -> list[Node]:
    """Nodes ``q_0, ..., q_depth`` of ``q_j = -q_0 sum (-i)^|a|/a! d_xi^a p_{m-k} d_x^a q_l``.

    The sum runs over ``|a| + k + l = j`` with ``l < j``; ``q_0`` is
    ``(p_m - lam)^{-1}`` (or ``p_m^{-1}`` without ``lam``).
    """
    n = p.n
    pm = p.principal.node
    shifted = pm if lam is None else add(pm, lam, coefs=[1.0, -1.0])
    q0 = Inverse(shifted)
    q = [q0]
    for j in range(1, depth + 1):
        nodes, coefs = [], []
        for l in range(j):
            ql = q[l]
            if ql.is_zero:
                continue
            for k in range(j - l + 1):
                pk = p.component(k).node
                if pk.is_zero:
                    continue
                d = j - l - k
                if d == 0 and k == 0:
                    continue
                for alpha in multi_indices(n, d):
                    term = mul(xi_derivative(pk, alpha), x_derivative(ql, alpha))
                    if term.is_zero:
                        continue
                    nodes.append(term)
                    coefs.append((-1j) ** d / math.prod(math.factorial(a) for a in alpha))
        degree = q0.degree - j
        if nodes:
            q.append(mul(q0, add(*nodes, coefs=[-c for c in coefs])))
        else:
            q.append(Zero(n, p.shape, degree))
    return q


@dataclass
class ResolventExpansion:
    """``q_{-m-j}(x, xi, lam)`` for ``j = 0..depth``; all share one parameter leaf."""

    symbol: SymbolExpansion
    lam: Lambda
    components: list

    @property
    def depth(self) -> int:
        return len(self.components) - 1

    @property
    def order(self) -> int:
        return self.symbol.order


def resolvent_expansion(p: SymbolExpansion, depth: int) -> ResolventExpansion:
    """Parameter-dependent symbol of ``(P - lam)^{-1}`` down to ``depth``."""
    require_constant_principal(p)
    require_elliptic(p)
    p.component(depth)
    lam = Lambda(p.n, p.shape[0], p.order)
    nodes = _recursion(p, depth, lam)
    comps = [ParametrizedComponent(nd, p.torus, lam) for nd in nodes]
    return ResolventExpansion(p, lam, comps)


def parametrix(p: SymbolExpansion, depth: int) -> SymbolExpansion:
    """Symbol ``b`` of order ``-m`` with ``p # b = 1`` modulo depth."""
    require_constant_principal(p)
    require_elliptic(p)
    nodes = _recursion(p, depth, None)
    comps = [HomogeneousComponent(nd, p.torus) for nd in nodes]
    return SymbolExpansion(p.torus, -p.order, comps, complete=False, label=f"({p.label})^-1")


def power_expansion(p: SymbolExpansion, k: int, depth: int) -> SymbolExpansion:
    """Symbol of ``P**(-k)`` down to ``depth`` (``k`` any integer).

    ``k <= 0`` multiplies ``p`` by itself; ``k > 0`` composes the
    parametrix with itself.  The finite-rank kernel correction is
    smoothing and omitted.
    """
    if k == 0:
        out = identity_expansion(p.torus, p.shape[0])
    elif k < 0:
        out = p.truncated(depth)
        for _ in range(-k - 1):
            out = compose(out, p, depth)
    else:
        base = parametrix(p, depth)
        out = base
        for _ in range(k - 1):
            out = compose(out, base, depth)
    out.label = f"({p.label})^{-k}"
    return out
